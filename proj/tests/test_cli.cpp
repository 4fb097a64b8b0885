#include <catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bgraph/cli.hpp"

using namespace bgraph;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
    std::vector<nlohmann::json> records;
};

CliResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    CliResult result;
    result.code = cli::run_cli(args, out, err);
    result.out = out.str();
    result.err = err.str();
    std::istringstream lines(result.out);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] != '{') continue;
        result.records.push_back(nlohmann::json::parse(line));
    }
    return result;
}

const nlohmann::json* find_quantity(const CliResult& r, const std::string& q) {
    for (const auto& rec : r.records)
        if (rec.at("quantity") == q) return &rec;
    return nullptr;
}

}  // namespace

TEST_CASE("degree spec parsing", "[cli]") {
    CHECK(parse_degree_spec("3^4") == std::vector<int>{3, 3, 3, 3});
    CHECK(parse_degree_spec("1,1,2") == std::vector<int>{1, 1, 2});
    CHECK(parse_degree_spec("3^2,2,1^3") == std::vector<int>{3, 3, 2, 1, 1, 1});
    CHECK_THROWS_AS(parse_degree_spec(""), ParseError);
    CHECK_THROWS_AS(parse_degree_spec("3,"), ParseError);
    CHECK_THROWS_AS(parse_degree_spec("3^"), ParseError);
    CHECK_THROWS_AS(parse_degree_spec("a,b"), ParseError);
    try {
        parse_degree_spec("3,x");
    } catch (const ParseError& e) {
        CHECK(e.column == 3);
    }
}

TEST_CASE("left spec parsing", "[cli]") {
    CHECK(parse_left_spec("none", 5).empty());
    CHECK(parse_left_spec("1,3", 5) == std::vector<int>{0, 2});
    CHECK_THROWS_AS(parse_left_spec("0", 5), ParseError);
    CHECK_THROWS_AS(parse_left_spec("6", 5), ParseError);
}

TEST_CASE("subgraph file parsing", "[cli]") {
    {
        std::istringstream in("S: 1 2 3\n1 2\n2 3\n");
        const InducedSubgraphSpec spec = parse_subgraph_stream(in, 10);
        CHECK(spec.vertices() == std::vector<int>{0, 1, 2});
        CHECK(spec.h_degrees() == std::vector<int>{1, 2, 1});
        CHECK(spec.h() == 4);
    }
    {
        std::istringstream in("S: 1 2\n1 4\n");
        try {
            parse_subgraph_stream(in, 10);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == 2);
            CHECK(std::string(e.what()).find("outside S") != std::string::npos);
        }
    }
    {
        std::istringstream in("1 2\n");
        CHECK_THROWS_AS(parse_subgraph_stream(in, 10), ParseError);
    }
}

TEST_CASE("exact subcommand reports the oracle counts", "[cli]") {
    const CliResult r = run({"exact", "--degrees", "2,2,2,2"});
    CHECK(r.code == 0);
    const nlohmann::json* g = find_quantity(r, "g");
    REQUIRE(g != nullptr);
    CHECK((*g)["value"] == 3.0);
    CHECK((*g)["value_exact"] == "3");
    CHECK((*g)["instance"] == "degrees=2,2,2,2;left=none");
}

TEST_CASE("formula subcommand handles the trivial independent set", "[cli]") {
    const CliResult r = run({"formula", "--degrees", "3^4", "--independent-set-size", "0"});
    CHECK(r.code == 0);
    const nlohmann::json* p = find_quantity(r, "p_independent_set");
    REQUIRE(p != nullptr);
    CHECK((*p)["value"] == 1.0);
}

TEST_CASE("estimate subcommand emits mean, stderr and seed", "[cli]") {
    const CliResult r = run({"estimate", "p-simple", "--degrees", "3^20", "--trials", "5000",
                             "--seed", "7"});
    CHECK(r.code == 0);
    const nlohmann::json* p = find_quantity(r, "p_simple");
    REQUIRE(p != nullptr);
    CHECK((*p)["seed"] == 7);
    CHECK((*p)["trials"] == 5000);
    CHECK((*p)["stderr"].is_number());
    const nlohmann::json* pred = find_quantity(r, "p_simple_predicted");
    REQUIRE(pred != nullptr);
    CHECK(std::fabs((*pred)["value"].get<double>() - std::exp(-2.0)) < 1e-9);
}

TEST_CASE("estimate without a seed prints the generated one", "[cli]") {
    const CliResult r = run({"estimate", "p-simple", "--degrees", "3^8", "--trials", "100"});
    CHECK(r.code == 0);
    const nlohmann::json* p = find_quantity(r, "p_simple");
    REQUIRE(p != nullptr);
    CHECK((*p)["seed"].is_number());
}

TEST_CASE("infeasible instances exit with code 2", "[cli]") {
    CHECK(run({"exact", "--degrees", "1,1,1"}).code == 2);
    CHECK(run({"formula", "--degrees", "3,1,1", "--left", "1"}).code == 2);
    CHECK(run({"sample", "--degrees", "1,2", "--left", "1", "--seed", "1"}).code == 2);
}

TEST_CASE("usage errors exit with code 1", "[cli]") {
    CHECK(run({"exact"}).code == 1);
    CHECK(run({"exact", "--degrees", "2,x"}).code == 1);
    CHECK(run({"nonsense"}).code == 1);
}

TEST_CASE("sampled pairings round trip through the text format", "[cli]") {
    const CliResult r = run({"sample", "--degrees", "3,2,2,1", "--left", "4", "--count", "5",
                             "--seed", "11"});
    CHECK(r.code == 0);
    REQUIRE(r.records.size() == 5);
    for (const auto& rec : r.records) {
        const Pairing P = pairing_from_text(rec["pairing"].get<std::string>(), {3});
        CHECK(to_text(P) == rec["pairing"].get<std::string>());
    }
    // identical seed reproduces identical pairings
    const CliResult again = run({"sample", "--degrees", "3,2,2,1", "--left", "4", "--count", "5",
                                 "--seed", "11"});
    CHECK(again.out == r.out);
}

TEST_CASE("raw sample output is the bare serialization", "[cli]") {
    const CliResult r =
        run({"sample", "--degrees", "1,1,2", "--left", "1", "--count", "1", "--seed", "3", "--raw"});
    CHECK(r.code == 0);
    CHECK(r.out.find(';') != std::string::npos);
    const Pairing P = pairing_from_text(r.out.substr(0, r.out.find('\n')), {0});
    CHECK(P.points() == 4);
}

TEST_CASE("verify-switchings passes on a tiny instance", "[cli]") {
    const CliResult r = run({"verify-switchings", "--degrees", "2,2,1,1,1,1", "--left", "3,4"});
    CHECK(r.code == 0);
    bool saw_double_count = false;
    for (const auto& rec : r.records)
        if (rec["quantity"].get<std::string>().rfind("double_count:", 0) == 0) {
            saw_double_count = true;
            CHECK(rec["value"] == 1.0);
        }
    CHECK(saw_double_count);
    const nlohmann::json* audit = find_quantity(r, "switching_audit");
    REQUIRE(audit != nullptr);
    CHECK((*audit)["round_trip_failures"] == 0);
}

TEST_CASE("csv output projects the fixed fields", "[cli]") {
    const CliResult r = run({"--csv", "exact", "--degrees", "2,2,2,2"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("instance,quantity,value,log_value,stderr,error_hint,seed,trials\n", 0) == 0);
    CHECK(r.out.find("\"degrees=2,2,2,2;left=none\",g,3") != std::string::npos);
}

TEST_CASE("sweep gcount emits one record per n", "[cli]") {
    const CliResult r = run({"sweep", "gcount", "--d", "2", "--n-list", "4,6"});
    CHECK(r.code == 0);
    REQUIRE(r.records.size() == 2);
    for (const auto& rec : r.records) CHECK(rec["quantity"] == "gcount_rel_error");
}

TEST_CASE("formula records parse as JSON with the fixed fields", "[cli]") {
    const CliResult r = run({"formula", "--degrees", "1,1,2", "--left", "1"});
    CHECK(r.code == 0);
    for (const auto& rec : r.records) {
        for (const char* field :
             {"instance", "quantity", "value", "log_value", "stderr", "error_hint", "seed", "trials"})
            CHECK(rec.contains(field));
    }
    const nlohmann::json* g = find_quantity(r, "g_bgraph_asymptotic");
    REQUIRE(g != nullptr);
    CHECK(std::fabs((*g)["value"].get<double>() - 1.5 * std::exp(-2.0 / 9.0 - 4.0 / 81.0)) < 1e-12);
}
