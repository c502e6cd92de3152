#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qtheta/cli.hpp"

using namespace qtheta;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(std::vector<std::string> args) {
    args.insert(args.begin(), "qtheta");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    auto* old_out = std::cout.rdbuf(out.rdbuf());
    auto* old_err = std::cerr.rdbuf(err.rdbuf());
    int code = -1;
    try {
        code = run_cli(static_cast<int>(argv.size()), argv.data());
    } catch (...) {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
        throw;
    }
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("eval prints certified decimals") {
    auto r = run({"eval", "--kind", "a", "--m", "1", "--n", "1", "--digits", "20"});
    CHECK(r.code == 0);
    CHECK(r.out == "1.0000000000000000000\n");

    r = run({"eval", "--kind", "G", "--n", "5", "--digits", "12"});
    CHECK(r.code == 0);
    CHECK(r.out == "1.12783848556\n");

    r = run({"eval", "--kind", "phi", "--q", "0.2", "--digits", "25"});
    CHECK(r.code == 0);
    CHECK(r.out == "1.403201024013107206710887\n");

    r = run({"eval", "--kind", "alpha", "--n", "1", "--digits", "15"});
    CHECK(r.code == 0);
    CHECK(r.out == "0.500000000000000\n");
}

TEST_CASE("eval rejects unknown kinds and missing arguments") {
    CHECK(run({"eval", "--kind", "Z", "--n", "1"}).code == 2);
    CHECK(run({"eval", "--kind", "G"}).code == 2);
    CHECK(run({"eval", "--kind", "K"}).code == 2);
    CHECK(run({"eval"}).code == 2);
}

TEST_CASE("verify exit code reflects suite outcome") {
    auto pass = run({"verify", "--suite", "thm42"});
    CHECK(pass.code == 0);
    CHECK(pass.out.find("FAIL") == std::string::npos);
    CHECK(pass.out.find("9 checks, 9 passed, 0 failed\n") != std::string::npos);

    auto fail = run({"verify", "--suite", "thm45"});
    CHECK(fail.code == 1);
    CHECK(fail.out.find("FAIL a_71_2") != std::string::npos);
    CHECK(fail.out.find("15 checks, 14 passed, 1 failed\n") != std::string::npos);
}

TEST_CASE("verify structured formats") {
    auto js = run({"verify", "--suite", "thm41", "--format", "json"});
    CHECK(js.code == 0);
    auto parsed = nlohmann::json::parse(js.out);
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 5);
    CHECK(parsed[0]["id"] == "G_46");
    CHECK(parsed[0]["pass"] == true);
    CHECK(parsed[0].contains("digits_agreed"));
    CHECK_FALSE(parsed[0].contains("notes"));

    auto cs = run({"verify", "--suite", "thm41", "--format", "csv"});
    CHECK(cs.code == 0);
    CHECK(cs.out.rfind("id,anchor,digits_requested,digits_agreed,residual,pass,notes\n", 0) == 0);

    CHECK(run({"verify", "--suite", "thm41", "--format", "xml"}).code == 2);
    CHECK(run({"verify", "--suite", "nope"}).code == 2);
    CHECK(run({"verify", "--suite", "thm41", "--digits", "5"}).code == 2);
}

TEST_CASE("verify runs are byte-identical") {
    auto a = run({"verify", "--suite", "thm43", "--format", "json"});
    auto b = run({"verify", "--suite", "thm43", "--format", "json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("verify writes report files") {
    std::string path = "cli_test_report.csv";
    std::remove(path.c_str());
    auto r = run({"verify", "--suite", "thm41", "--format", "csv", "--out", path});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(path).rfind("id,anchor,", 0) == 0);
    std::remove(path.c_str());

    CHECK(run({"verify", "--suite", "thm41", "--out", "no_such_dir/x.txt"}).code == 4);
}

TEST_CASE("discover recovers the eta-quotient relation and minimal polynomials") {
    auto rel = run({"discover", "--thm31"});
    CHECK(rel.code == 0);
    CHECK(rel.out == "(1, -1, 8, -4)\n");

    auto rel2 = run({"discover", "--thm31", "--q", "0.05", "--digits", "140"});
    CHECK(rel2.code == 0);
    CHECK(rel2.out == "(1, -1, 8, -4)\n");

    CHECK(run({"discover", "--minpoly", "sqrt2"}).out == "x^2 - 2\n");
    CHECK(run({"discover", "--minpoly", "h4", "--n", "23", "--max-degree", "4"}).out ==
          "x^4 - 208x^3 + 456x^2 - 832x + 16\n");
    CHECK(run({"discover", "--minpoly", "alpha", "--n", "2", "--max-degree", "2"}).out ==
          "x^2 - 6x + 1\n");

    auto none = run({"discover", "--minpoly", "G", "--n", "5", "--max-degree", "4"});
    CHECK(none.code == 0);
    CHECK(none.out.rfind("none", 0) == 0);
    CHECK(run({"discover", "--minpoly", "G", "--n", "5", "--max-degree", "8"}).out ==
          "x^8 - x^4 - 1\n");
}

TEST_CASE("discover argument validation") {
    CHECK(run({"discover"}).code == 2);
    CHECK(run({"discover", "--minpoly", "h4"}).code == 2);
    CHECK(run({"discover", "--minpoly", "bogus"}).code == 2);
    CHECK(run({"discover", "--minpoly", "sqrt2", "--max-degree", "0"}).code == 2);
}

TEST_CASE("table is sorted by id and honours kind filters") {
    auto ids_of = [](const std::string& json_text) {
        std::vector<std::string> ids;
        for (const auto& row : nlohmann::json::parse(json_text))
            ids.push_back(row["id"].get<std::string>());
        return ids;
    };

    auto all = run({"table", "--kind", "all", "--format", "json", "--digits", "12"});
    CHECK(all.code == 0);
    auto ids = ids_of(all.out);
    CHECK(ids.size() == 49);
    CHECK(std::is_sorted(ids.begin(), ids.end()));

    auto gs = run({"table", "--kind", "G", "--format", "json", "--digits", "12"});
    auto g_ids = ids_of(gs.out);
    CHECK(g_ids.size() == 10);
    for (const auto& id : g_ids) CHECK(id.rfind("G_", 0) == 0);
    CHECK(ids_of(run({"table", "--kind", "g", "--format", "json", "--digits", "12"}).out)
              .size() == 11);

    auto alph = run({"table", "--kind", "alpha", "--format", "json", "--digits", "12"});
    CHECK(ids_of(alph.out).size() == 10);
    auto am2 = run({"table", "--kind", "a", "--format", "json", "--digits", "12"});
    CHECK(ids_of(am2.out).size() == 15);
    auto idn = run({"table", "--kind", "identity", "--format", "json", "--digits", "12"});
    CHECK(ids_of(idn.out).size() == 3);

    auto csv = run({"table", "--kind", "identity", "--format", "csv", "--digits", "12"});
    CHECK(csv.out.rfind("id,anchor,expression,value,digits_agreed\n", 0) == 0);

    CHECK(run({"table", "--kind", "bogus"}).code == 2);
    CHECK(run({"table", "--format", "bogus"}).code == 2);
}

TEST_CASE("environment variable sets default digits and flags win") {
    setenv("QTHETA_DIGITS", "15", 1);
    auto r = run({"eval", "--kind", "alpha", "--n", "1"});
    CHECK(r.out == "0.500000000000000\n");
    auto flag = run({"eval", "--kind", "alpha", "--n", "1", "--digits", "8"});
    CHECK(flag.out == "0.50000000\n");
    setenv("QTHETA_DIGITS", "frog", 1);
    CHECK(run({"eval", "--kind", "alpha", "--n", "1"}).code == 2);
    unsetenv("QTHETA_DIGITS");
}

TEST_CASE("help exits cleanly") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"eval", "--help"}).code == 0);
}
