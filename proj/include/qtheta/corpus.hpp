#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qtheta/corpus_text.hpp"
#include "qtheta/errors.hpp"
#include "qtheta/radical.hpp"
#include "qtheta/rational.hpp"

// The closed-form corpus: one record per explicit value (class invariants G
// and g, singular moduli alpha, theta quotients a_{m,2}) plus denesting
// identities, stored exactly as printed in their source tables. Format:
//   id|kind|index|expression|anchor
// '#' starts a comment line; identity expressions hold "lhs = rhs".

namespace qtheta {

enum class CorpusKind { G, g, alpha, a_m2, identity };

inline const char* to_string(CorpusKind k) {
    switch (k) {
        case CorpusKind::G: return "G";
        case CorpusKind::g: return "g";
        case CorpusKind::alpha: return "alpha";
        case CorpusKind::a_m2: return "a_m2";
        case CorpusKind::identity: return "identity";
    }
    return "?";
}

struct CorpusEntry {
    std::string id;
    CorpusKind kind = CorpusKind::identity;
    Rational index;       // n for G/g/alpha; m for a_m2; context index for identities
    Rational index_n = 1; // the second index of a_{m,n} entries (always 2 here)
    std::string expression; // verbatim; for identities "lhs = rhs"
    std::string anchor;
};

// Split an identity expression on its (single) top-level '='.
inline std::pair<std::string, std::string> split_identity(const std::string& expression) {
    std::size_t eq = expression.find('=');
    if (eq == std::string::npos || expression.find('=', eq + 1) != std::string::npos)
        throw parse_error("identity needs exactly one '='", eq == std::string::npos ? 0 : eq);
    return {expression.substr(0, eq), expression.substr(eq + 1)};
}

namespace detail {

inline CorpusKind kind_from_string(const std::string& s, std::size_t line_no) {
    if (s == "G") return CorpusKind::G;
    if (s == "g") return CorpusKind::g;
    if (s == "alpha") return CorpusKind::alpha;
    if (s == "a_m2") return CorpusKind::a_m2;
    if (s == "identity") return CorpusKind::identity;
    throw parse_error("unknown corpus kind '" + s + "' on line " + std::to_string(line_no),
                      line_no);
}

} // namespace detail

inline std::vector<CorpusEntry> parse_corpus(std::string_view text) {
    std::vector<CorpusEntry> entries;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;

        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t bar = line.find('|'); bar != std::string::npos;
             bar = line.find('|', start)) {
            fields.push_back(line.substr(start, bar - start));
            start = bar + 1;
        }
        fields.push_back(line.substr(start));
        if (fields.size() != 5)
            throw parse_error("corpus line " + std::to_string(line_no) +
                              " has " + std::to_string(fields.size()) + " fields, wanted 5",
                              line_no);

        CorpusEntry e;
        e.id = fields[0];
        e.kind = detail::kind_from_string(fields[1], line_no);
        if (e.kind == CorpusKind::a_m2) {
            std::size_t comma = fields[2].find(',');
            if (comma == std::string::npos)
                throw parse_error("a_m2 index needs 'm,n' on line " + std::to_string(line_no),
                                  line_no);
            e.index = Rational::parse(fields[2].substr(0, comma));
            e.index_n = Rational::parse(fields[2].substr(comma + 1));
        } else {
            e.index = Rational::parse(fields[2]);
        }
        e.expression = fields[3];
        e.anchor = fields[4];

        if (!seen.insert(e.id).second)
            throw parse_error("duplicate corpus id '" + e.id + "'", line_no);
        // every expression must parse up front; evaluation happens later
        if (e.kind == CorpusKind::identity) {
            auto [lhs, rhs] = split_identity(e.expression);
            parse_radical(lhs);
            parse_radical(rhs);
        } else {
            parse_radical(e.expression);
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

// The corpus compiled into the binary (from data/corpus.txt).
inline const std::vector<CorpusEntry>& embedded_corpus() {
    static const std::vector<CorpusEntry> entries =
        parse_corpus(qtheta::detail::embedded_corpus_text);
    return entries;
}

inline std::vector<CorpusEntry> load_corpus_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open corpus file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_corpus(buf.str());
}

} // namespace qtheta
