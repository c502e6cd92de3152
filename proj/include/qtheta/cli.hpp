#pragma once

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qtheta/corpus.hpp"
#include "qtheta/invariants.hpp"
#include "qtheta/modeq.hpp"
#include "qtheta/qseries.hpp"
#include "qtheta/relations.hpp"
#include "qtheta/verify.hpp"

// Command-line driver. Four subcommands:
//   eval      print one value (G, g, alpha, a, phi, psi, f, chi, K)
//   verify    run a named verification suite, emit a report stream
//   discover  integer-relation search (eta-quotient relation or min_poly)
//   table     export the closed-form corpus with values and agreement
//
// Exit codes: 0 success/all-pass, 1 verification failure, 2 usage or domain
// error, 3 precision fault, 4 I/O error. Identical invocations produce
// byte-identical output (no timestamps, fixed field order).

namespace qtheta {
namespace cli_detail {

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;
constexpr int kPrecision = 3;
constexpr int kIo = 4;

inline int default_digits() {
    const char* env = std::getenv("QTHETA_DIGITS");
    if (!env || !*env) return 60;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (!end || *end != '\0' || v < 1 || v > 100000)
        throw domain_error("QTHETA_DIGITS must be a positive integer, got '" +
                           std::string(env) + "'");
    return static_cast<int>(v);
}

inline void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open output file: " + path);
    out << text;
    out.flush();
    if (!out.good()) throw io_error("failed writing output file: " + path);
}

// Recomputation policy: evaluate at digits+20 and at digits; the two must
// share digits-2 leading digits or the result cannot be certified.
inline BigReal eval_checked(const std::function<BigReal(const PrecisionContext&)>& f,
                            int digits) {
    BigReal hi = f(PrecisionContext(digits + 20));
    BigReal lo = f(PrecisionContext(digits));
    if (agreement_digits(hi, lo) < digits - 2)
        throw precision_error("recomputation at +20 digits disagreed; value not certified");
    return hi;
}

inline std::string relation_to_string(const std::vector<long long>& c) {
    std::string out = "(";
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(c[i]);
    }
    out += ")";
    return out;
}

// ascending coefficients -> "x^4 - 208x^3 + 456x^2 - 832x + 16"
inline std::string poly_to_string(const std::vector<long long>& coeffs) {
    std::string out;
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        long long c = coeffs[k];
        if (c == 0) continue;
        long long a = c < 0 ? -c : c;
        if (out.empty())
            out += (c < 0 ? "-" : "");
        else
            out += (c < 0 ? " - " : " + ");
        bool unit = (a == 1 && k > 0);
        if (!unit) out += std::to_string(a);
        if (k >= 1) out += "x";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

inline std::string render_text(const std::vector<VerificationReport>& rs) {
    std::string out;
    int failed = 0;
    for (const auto& r : rs) {
        if (!r.passed) ++failed;
        out += (r.passed ? "PASS " : "FAIL ") + r.id + " [" + r.anchor + "] agreed " +
               std::to_string(r.agreement) + "/" + std::to_string(r.digits_requested) +
               " residual " + r.residual;
        if (!r.notes.empty()) out += " -- " + r.notes;
        out += "\n";
    }
    out += std::to_string(rs.size()) + " checks, " + std::to_string(rs.size() - failed) +
           " passed, " + std::to_string(failed) + " failed\n";
    return out;
}

inline std::string render_reports(const std::vector<VerificationReport>& rs,
                                  const std::string& format) {
    if (format == "json") return to_json(rs).dump(2) + "\n";
    if (format == "csv") return to_csv(rs);
    if (format == "text") return render_text(rs);
    throw domain_error("unknown format: " + format + " (expected text, json, or csv)");
}

struct EvalArgs {
    std::string kind, n, m, q, k;
    int digits = 60;
};

inline int run_eval(const EvalArgs& a) {
    auto need = [](const std::string& v, const char* flag) {
        if (v.empty()) throw domain_error(std::string("this kind requires ") + flag);
        return v;
    };
    std::function<BigReal(const PrecisionContext&)> f;
    if (a.kind == "G") {
        InvariantIndex n(Rational::parse(need(a.n, "--n")));
        f = [n](const PrecisionContext& c) { return class_G(n, c); };
    } else if (a.kind == "g") {
        InvariantIndex n(Rational::parse(need(a.n, "--n")));
        f = [n](const PrecisionContext& c) { return class_g(n, c); };
    } else if (a.kind == "alpha") {
        InvariantIndex n(Rational::parse(need(a.n, "--n")));
        f = [n](const PrecisionContext& c) { return alpha_singular(n, c); };
    } else if (a.kind == "a") {
        Rational m = Rational::parse(need(a.m, "--m"));
        Rational n = a.n.empty() ? Rational(2) : Rational::parse(a.n);
        f = [m, n](const PrecisionContext& c) { return a_product(m, n, c); };
    } else if (a.kind == "phi" || a.kind == "psi" || a.kind == "f" || a.kind == "chi") {
        std::string qs = need(a.q, "--q");
        std::string kind = a.kind;
        f = [qs, kind](const PrecisionContext& c) {
            BigReal q(qs, c);
            if (kind == "phi") return theta_phi(q, c);
            if (kind == "psi") return theta_psi(q, c);
            if (kind == "f") return euler_f(q, c);
            return chi_of(q, c);
        };
    } else if (a.kind == "K") {
        std::string ks = need(a.k, "--k");
        f = [ks](const PrecisionContext& c) { return elliptic_K(BigReal(ks, c), c); };
    } else {
        throw domain_error("unknown kind: " + a.kind +
                           " (expected G, g, alpha, a, phi, psi, f, chi, or K)");
    }
    std::cout << to_decimal(eval_checked(f, a.digits), a.digits) << "\n";
    return kOk;
}

struct VerifyArgs {
    std::string suite, format = "text", out, corpus;
    int digits = 60;
};

inline int run_verify(const VerifyArgs& a) {
    if (a.digits < 10) throw domain_error("verification needs at least 10 digits");
    PrecisionContext ctx(a.digits);
    std::vector<VerificationReport> rs =
        a.corpus.empty() ? run_suite(a.suite, ctx)
                         : run_suite(a.suite, ctx, load_corpus_file(a.corpus));
    write_output(render_reports(rs, a.format), a.out);
    for (const auto& r : rs)
        if (!r.passed) return kVerifyFail;
    return kOk;
}

struct DiscoverArgs {
    bool relation = false;
    std::string minpoly, n;
    std::vector<std::string> q;
    int digits = 60;
    int max_degree = 8;
    long long max_norm = 1000000;
};

inline int run_discover(const DiscoverArgs& a) {
    if (a.max_degree < 1) throw domain_error("--max-degree must be at least 1");
    // Relation searches need headroom: ~30 digits per candidate minimal-
    // polynomial degree, and >=120 digits for the eta-quotient rediscovery.
    int digits = a.relation ? std::max(a.digits, 120) : std::max(a.digits, 30 * a.max_degree);
    PrecisionContext ctx(digits);
    if (a.relation) {
        std::vector<std::string> qs = a.q.empty() ? std::vector<std::string>{"0.1", "0.3"} : a.q;
        std::vector<QArgument> points;
        for (const auto& s : qs) points.emplace_back(BigReal(s, ctx));
        IntegerRelation rel = rediscover_modular_relation(points, ctx);
        std::cout << relation_to_string(rel.coefficients) << "\n";
        return kOk;
    }
    if (a.minpoly.empty())
        throw domain_error("discover needs --thm31 or --minpoly <value>");
    BigReal x(0, ctx);
    if (a.minpoly == "sqrt2") {
        x = sqrt_of(BigReal(2, ctx));
    } else if (a.minpoly == "h4") {
        if (a.n.empty()) throw domain_error("--minpoly h4 requires --n");
        x = ipow(solve_G_pair(Rational::parse(a.n), ctx).h, 4);
    } else if (a.minpoly == "G" || a.minpoly == "g" || a.minpoly == "alpha") {
        if (a.n.empty()) throw domain_error("--minpoly " + a.minpoly + " requires --n");
        InvariantIndex n(Rational::parse(a.n));
        x = a.minpoly == "G" ? class_G(n, ctx)
                             : (a.minpoly == "g" ? class_g(n, ctx) : alpha_singular(n, ctx));
    } else {
        throw domain_error("unknown --minpoly value: " + a.minpoly +
                           " (expected sqrt2, h4, G, g, or alpha)");
    }
    auto rel = min_poly(x, a.max_degree, ctx, a.max_norm);
    if (rel)
        std::cout << poly_to_string(rel->coefficients) << "\n";
    else
        std::cout << "none (relations with coefficients up to " << a.max_norm
                  << " excluded)\n";
    return kOk;
}

struct TableArgs {
    std::string kind = "all", format = "csv", out, corpus;
    int digits = 60;
};

struct TableRow {
    std::string id, anchor, expression, value;
    int digits_agreed = 0;
};

inline int run_table(const TableArgs& a) {
    PrecisionContext work(a.digits + 20);
    std::vector<CorpusEntry> entries =
        a.corpus.empty() ? embedded_corpus() : load_corpus_file(a.corpus);
    std::sort(entries.begin(), entries.end(),
              [](const CorpusEntry& x, const CorpusEntry& y) { return x.id < y.id; });

    std::vector<TableRow> rows;
    for (const auto& e : entries) {
        if (a.kind != "all") {
            if (a.kind == "a" ? e.kind != CorpusKind::a_m2
                              : std::string(to_string(e.kind)) != a.kind)
                continue;
        }
        TableRow row;
        row.id = e.id;
        row.anchor = e.anchor;
        row.expression = e.expression;
        if (e.kind == CorpusKind::identity) {
            auto [lt, rt] = split_identity(e.expression);
            BigReal lhs = eval_radical(parse_radical(lt), work);
            BigReal rhs = eval_radical(parse_radical(rt), work);
            row.value = to_decimal(lhs, a.digits);
            row.digits_agreed = agreement_digits(lhs, rhs);
        } else {
            BigReal closed = eval_radical(parse_radical(e.expression), work);
            BigReal direct = detail::direct_corpus_value(e, work);
            row.value = to_decimal(closed, a.digits);
            row.digits_agreed = agreement_digits(closed, direct);
        }
        rows.push_back(std::move(row));
    }
    if (a.kind != "all" && rows.empty()) throw domain_error("unknown table kind: " + a.kind);

    std::string out;
    if (a.format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            nlohmann::ordered_json j;
            j["id"] = r.id;
            j["anchor"] = r.anchor;
            j["expression"] = r.expression;
            j["value"] = r.value;
            j["digits_agreed"] = r.digits_agreed;
            arr.push_back(std::move(j));
        }
        out = arr.dump(2) + "\n";
    } else if (a.format == "csv") {
        out = "id,anchor,expression,value,digits_agreed\n";
        for (const auto& r : rows)
            out += detail::csv_escape(r.id) + "," + detail::csv_escape(r.anchor) + "," +
                   detail::csv_escape(r.expression) + "," + r.value + "," +
                   std::to_string(r.digits_agreed) + "\n";
    } else if (a.format == "text") {
        for (const auto& r : rows)
            out += r.id + " [" + r.anchor + "] = " + r.value + " (agreed " +
                   std::to_string(r.digits_agreed) + ")\n";
    } else {
        throw domain_error("unknown format: " + a.format);
    }
    write_output(out, a.out);
    return kOk;
}

} // namespace cli_detail

inline int run_cli(int argc, char** argv) {
    using namespace cli_detail;
    try {
        int digits = default_digits();

        CLI::App app{"High-precision theta functions, class invariants, singular moduli,"
                     " and their closed-form tables"};
        app.require_subcommand(1);

        EvalArgs ev;
        ev.digits = digits;
        CLI::App* eval = app.add_subcommand("eval", "evaluate one quantity");
        eval->add_option("--kind", ev.kind, "G, g, alpha, a, phi, psi, f, chi, or K")
            ->required();
        eval->add_option("--n", ev.n, "index n (rational, e.g. 46 or 23/2)");
        eval->add_option("--m", ev.m, "first index of a_{m,n}");
        eval->add_option("--q", ev.q, "series argument for phi/psi/f/chi");
        eval->add_option("--k", ev.k, "modulus for K");
        eval->add_option("--digits", ev.digits, "output digits");

        VerifyArgs vf;
        vf.digits = digits;
        CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
        verify
            ->add_option("--suite", vf.suite,
                         "lemmas, thm31, thm32, thm33, thm41..thm45, or all")
            ->required();
        verify->add_option("--format", vf.format, "text, json, or csv");
        verify->add_option("--out", vf.out, "output path (default stdout)");
        verify->add_option("--corpus", vf.corpus, "external corpus file");
        verify->add_option("--digits", vf.digits, "working digits");

        DiscoverArgs dc;
        dc.digits = digits;
        CLI::App* discover = app.add_subcommand("discover", "integer-relation search");
        discover->add_flag("--thm31", dc.relation,
                           "rediscover the degree-two eta-quotient relation");
        discover->add_option("--minpoly", dc.minpoly,
                             "minimal polynomial of: sqrt2, h4, G, g, alpha");
        discover->add_option("--n", dc.n, "index for h4/G/g/alpha");
        discover->add_option("--q", dc.q, "evaluation points (repeatable)");
        discover->add_option("--max-degree", dc.max_degree, "minpoly degree bound");
        discover->add_option("--max-norm", dc.max_norm, "coefficient bound");
        discover->add_option("--digits", dc.digits, "working digits");

        TableArgs tb;
        tb.digits = digits;
        CLI::App* table = app.add_subcommand("table", "export the closed-form corpus");
        table->add_option("--kind", tb.kind, "G, g, alpha, a, identity, or all");
        table->add_option("--format", tb.format, "text, json, or csv");
        table->add_option("--out", tb.out, "output path (default stdout)");
        table->add_option("--corpus", tb.corpus, "external corpus file");
        table->add_option("--digits", tb.digits, "output digits");

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            int code = app.exit(e);
            return code == 0 ? kOk : kUsage;
        }

        if (app.got_subcommand(eval)) return run_eval(ev);
        if (app.got_subcommand(verify)) return run_verify(vf);
        if (app.got_subcommand(discover)) return run_discover(dc);
        return run_table(tb);
    } catch (const precision_error& e) {
        std::cerr << "precision error: " << e.what() << "\n";
        return kPrecision;
    } catch (const io_error& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kIo;
    } catch (const verification_error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return kVerifyFail;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace qtheta
