#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <random>

#include "bgraph/exact_count.hpp"
#include "brute.hpp"

using namespace bgraph;

TEST_CASE("exact graph count on pinned instances", "[exactcount]") {
    CHECK(exact_graph_count(DegreeSequence({3, 3, 3, 3})) == 1);
    CHECK(exact_graph_count(DegreeSequence({2, 2, 2, 2})) == 3);
    CHECK(exact_graph_count(DegreeSequence({1, 1})) == 1);
    CHECK(exact_graph_count(DegreeSequence({1, 1, 1})) == 0);
    CHECK(exact_graph_count(DegreeSequence(std::vector<int>{})) == 1);
    CHECK(exact_graph_count(DegreeSequence({0, 0})) == 1);
}

TEST_CASE("exact graph count agrees with bitmask brute force", "[exactcount]") {
    std::mt19937 gen(31337);
    for (int round = 0; round < 120; ++round) {
        const int n = 1 + static_cast<int>(gen() % 5);
        std::vector<int> degrees;
        for (int i = 0; i < n; ++i) degrees.push_back(static_cast<int>(gen() % n));
        CHECK(exact_graph_count(DegreeSequence(degrees)) == brute::graph_count(degrees));
    }
    // a couple of n = 6 spot checks, including the cubic count
    CHECK(exact_graph_count(DegreeSequence({3, 3, 3, 3, 3, 3})) ==
          brute::graph_count({3, 3, 3, 3, 3, 3}));
    CHECK(exact_graph_count(DegreeSequence({3, 2, 2, 2, 2, 1})) ==
          brute::graph_count({3, 2, 2, 2, 2, 1}));
}

TEST_CASE("exact graph count is invariant under permuting degrees", "[exactcount]") {
    std::mt19937 gen(5150);
    std::vector<int> degrees = {3, 1, 2, 2, 0, 2, 2};
    const BigInt reference = exact_graph_count(DegreeSequence(degrees));
    for (int round = 0; round < 10; ++round) {
        std::shuffle(degrees.begin(), degrees.end(), gen);
        CHECK(exact_graph_count(DegreeSequence(degrees)) == reference);
    }
}

TEST_CASE("exact graph count enforces its size bound", "[exactcount]") {
    ExactCountConfig cfg;
    cfg.max_total_degree = 10;
    CHECK_THROWS_AS(exact_graph_count(DegreeSequence(std::vector<int>(12, 1)), cfg), size_error);
}

TEST_CASE("exact B-graph count on pinned instances", "[exactcount]") {
    CHECK(exact_bgraph_count(DegreeSequence({1, 1, 2}), Bipartition(3, {0})) == 1);
    CHECK(exact_bgraph_count(DegreeSequence({2, 2}), Bipartition(2, {0})) == 0);
    CHECK(exact_bgraph_count(DegreeSequence({2, 2, 2}), Bipartition::empty_left(3)) ==
          exact_graph_count(DegreeSequence({2, 2, 2})));
}

TEST_CASE("exact B-graph count agrees with bitmask brute force", "[exactcount]") {
    std::mt19937 gen(2024);
    for (int round = 0; round < 120; ++round) {
        const int n = 2 + static_cast<int>(gen() % 4);
        std::vector<int> degrees;
        for (int i = 0; i < n; ++i) degrees.push_back(static_cast<int>(gen() % n));
        std::vector<int> left;
        for (int v = 0; v < n; ++v)
            if (gen() % 3 == 0) left.push_back(v);
        CHECK(exact_bgraph_count(DegreeSequence(degrees), Bipartition(n, left)) ==
              brute::bgraph_count(degrees, left));
    }
}

TEST_CASE("exact induced probabilities", "[exactcount]") {
    const DegreeSequence cubic4({3, 3, 3, 3});
    const InducedSubgraphSpec k4({0, 1, 2, 3}, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(exact_induced_probability(cubic4, k4) == 1);

    const DegreeSequence cycle4({2, 2, 2, 2});
    CHECK(exact_induced_probability(cycle4, InducedSubgraphSpec({0, 1}, {{0, 1}})) == Rational(2, 3));
    CHECK(exact_induced_probability(cycle4, InducedSubgraphSpec({0, 1}, {})) == Rational(1, 3));

    const InducedSubgraphSpec triangle({0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(exact_induced_probability(DegreeSequence({1, 1, 1, 1}), triangle) == 0);

    CHECK_THROWS_AS(exact_induced_probability(DegreeSequence({1, 1, 3}), InducedSubgraphSpec({0}, {})),
                    std::domain_error);
}

TEST_CASE("exact induced probabilities sum to exactly one over all H", "[exactcount]") {
    const DegreeSequence ds(std::vector<int>(6, 3));
    const std::vector<int> s_set = {1, 3, 4};
    const std::vector<std::pair<int, int>> slots = {{1, 3}, {1, 4}, {3, 4}};
    Rational sum = 0;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<std::pair<int, int>> edges;
        for (int e = 0; e < 3; ++e)
            if (mask >> e & 1) edges.push_back(slots[static_cast<std::size_t>(e)]);
        sum += exact_induced_probability(ds, InducedSubgraphSpec(s_set, edges));
    }
    CHECK(sum == 1);
}

TEST_CASE("pairing enumeration visits each restricted pairing once", "[exactcount]") {
    const DegreeSequence ds({1, 1, 2});
    const Bipartition bip(3, {0});
    std::vector<std::vector<int>> seen;
    const long long visits =
        enumerate_pairings(ds, bip, [&](const Pairing& P) { seen.push_back(P.mates()); });
    CHECK(visits == 3);
    std::sort(seen.begin(), seen.end());
    CHECK(std::unique(seen.begin(), seen.end()) == seen.end());

    CHECK(enumerate_pairings(DegreeSequence({1, 1}), Bipartition(2, {0}), [](const Pairing&) {}) == 1);
    CHECK(enumerate_pairings(DegreeSequence({1, 2}), Bipartition(2, {0}), [](const Pairing&) {}) == 0);
}

TEST_CASE("enumeration count equals the closed-form pairing count", "[exactcount]") {
    std::mt19937 gen(808);
    int checked = 0;
    while (checked < 40) {
        const int n = 2 + static_cast<int>(gen() % 4);
        std::vector<int> degrees;
        for (int i = 0; i < n; ++i) degrees.push_back(static_cast<int>(gen() % 4));
        std::vector<int> left;
        for (int v = 0; v < n; ++v)
            if (gen() % 3 == 0) left.push_back(v);
        const DegreeSequence ds(degrees);
        const Bipartition bip(n, left);
        const long long m1r = ds.total_degree() - moments_left(ds, bip).m1;
        if (m1r > 10) continue;
        const long long visits = enumerate_pairings(ds, bip, [](const Pairing&) {});
        CHECK(BigInt(visits) == count_restricted_pairings(ds, bip));
        ++checked;
    }
}

TEST_CASE("enumeration enforces its size bound", "[exactcount]") {
    ExactCountConfig cfg;
    cfg.max_enum_points = 4;
    CHECK_THROWS_AS(enumerate_pairings(DegreeSequence({2, 2, 2}), Bipartition::empty_left(3),
                                       [](const Pairing&) {}, cfg),
                    size_error);
}

TEST_CASE("class table of the tiny running instance", "[exactcount]") {
    const ClassTable table = exact_class_table(DegreeSequence({1, 1, 2}), Bipartition(3, {0}));
    CHECK(table.total == 3);
    CHECK(table.count(ClassKey{0, 0, 0}) == 2);
    CHECK(table.count(ClassKey{1, 0, 0}) == 1);
}

TEST_CASE("class table of two degree-2 vertices", "[exactcount]") {
    // U(4) = 3 pairings: one pure double pair, and two pairings with a loop
    // at each vertex.
    const ClassTable table = exact_class_table(DegreeSequence({2, 2}), Bipartition::empty_left(2));
    CHECK(table.total == 3);
    CHECK(table.count(ClassKey{0, 0, 1}) == 2);
    CHECK(table.count(ClassKey{2, 0, 0}) == 1);
}

TEST_CASE("class table partitions the pairing count", "[exactcount]") {
    std::mt19937 gen(616);
    int checked = 0;
    while (checked < 25) {
        const int n = 2 + static_cast<int>(gen() % 4);
        std::vector<int> degrees;
        for (int i = 0; i < n; ++i) degrees.push_back(static_cast<int>(gen() % 4));
        std::vector<int> left;
        for (int v = 0; v < n; ++v)
            if (gen() % 4 == 0) left.push_back(v);
        const DegreeSequence ds(degrees);
        const Bipartition bip(n, left);
        const long long m1r = ds.total_degree() - moments_left(ds, bip).m1;
        if (m1r > 10 || feasibility(ds, bip) != Feasibility::feasible) continue;
        const ClassTable table = exact_class_table(ds, bip);
        BigInt sum = 0;
        for (const auto& [key, c] : table.counts) sum += c;
        CHECK(sum == table.total);
        CHECK(table.total == count_restricted_pairings(ds, bip));

        BigInt fiber = 1;
        for (int d : ds.degrees()) fiber *= factorial_big(d);
        CHECK(table.simple_count() == exact_bgraph_count(ds, bip) * fiber);
        ++checked;
    }
}

TEST_CASE("exact P(simple)", "[exactcount]") {
    CHECK(exact_p_simple(DegreeSequence({1, 1, 2}), Bipartition(3, {0})) == Rational(2, 3));
    CHECK(exact_p_simple(DegreeSequence({1, 1, 1, 1}), Bipartition::empty_left(4)) == 1);
    CHECK(exact_p_simple(DegreeSequence({2, 2}), Bipartition::empty_left(2)) == 0);
}
