#include <catch_amalgamated.hpp>

#include <map>
#include <random>

#include "bgraph/exact_count.hpp"
#include "bgraph/formulas.hpp"
#include "bgraph/pairing.hpp"
#include "battery.hpp"
#include "brute.hpp"

using namespace bgraph;

namespace {

// Upper 0.999 quantiles of the chi-square distribution, df = index.
constexpr double kChi2_999[] = {
    0,      10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322,
    26.124, 27.877, 29.588, 31.264, 32.909, 34.528, 36.123, 37.697,
    39.252, 40.790, 42.312, 43.820, 45.315, 46.797, 48.268, 49.728,
};

}  // namespace

TEST_CASE("layout bookkeeping", "[pairing]") {
    const LayoutPtr layout = make_layout(DegreeSequence({1, 1, 2}), Bipartition(3, {0}));
    CHECK(layout->points() == 4);
    CHECK(layout->vertex_of(0) == 0);
    CHECK(layout->vertex_of(2) == 2);
    CHECK(layout->vertex_of(3) == 2);
    CHECK(layout->left_points() == std::vector<int>{0});
    CHECK(layout->right_points() == std::vector<int>{1, 2, 3});
}

TEST_CASE("pairing validation", "[pairing]") {
    const LayoutPtr layout = make_layout(DegreeSequence({1, 1, 2}), Bipartition(3, {0}));
    CHECK_THROWS_AS(Pairing(layout, {1, 0, 2, 3}), std::invalid_argument);  // fixed points
    CHECK_THROWS_AS(Pairing(layout, {1, 0, 3, 1}), std::invalid_argument);  // not an involution

    const LayoutPtr two_left = make_layout(DegreeSequence({1, 1}), Bipartition(2, {0, 1}));
    CHECK_THROWS_AS(Pairing(two_left, {1, 0}), std::invalid_argument);  // L-L pair
}

TEST_CASE("sampling is deterministic for a fixed seed", "[pairing]") {
    const LayoutPtr layout = make_layout(DegreeSequence(std::vector<int>(20, 3)),
                                         Bipartition(20, {0, 1, 2}));
    std::mt19937_64 a(42), b(42), c(43);
    const Pairing pa = sample_restricted(layout, a);
    const Pairing pb = sample_restricted(layout, b);
    const Pairing pc = sample_restricted(layout, c);
    CHECK(pa == pb);
    CHECK_FALSE(pa == pc);
}

TEST_CASE("samples from an all-ones sequence are always simple", "[pairing]") {
    const LayoutPtr layout =
        make_layout(DegreeSequence(std::vector<int>(8, 1)), Bipartition(8, {0, 1}));
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) CHECK(is_simple(sample_restricted(layout, rng)));
}

TEST_CASE("sampler hits each restricted pairing uniformly", "[pairing]") {
    // every battery instance whose pairing space has at most 24 cells
    long long covered = 0;
    for (const auto& inst : battery::make_battery()) {
        const DegreeSequence& ds = inst.ds;
        const Bipartition& bip = inst.bip;
        if (count_restricted_pairings(ds, bip) > 24) continue;
        std::map<std::vector<int>, long long> freq;
        enumerate_pairings(ds, bip, [&](const Pairing& P) { freq[P.mates()] = 0; });
        const std::size_t cells = freq.size();
        if (cells < 2) continue;
        ++covered;

        const LayoutPtr layout = make_layout(ds, bip);
        std::mt19937_64 rng(1234);
        const long long trials = 100000;
        for (long long i = 0; i < trials; ++i) {
            const Pairing P = sample_restricted(layout, rng);
            const auto it = freq.find(P.mates());
            REQUIRE(it != freq.end());  // sampler only produces restricted pairings
            ++it->second;
        }
        const double expected = static_cast<double>(trials) / static_cast<double>(cells);
        double chi2 = 0;
        for (const auto& [mate, count] : freq) {
            const double diff = static_cast<double>(count) - expected;
            chi2 += diff * diff / expected;
        }
        INFO(inst.label << " with " << cells << " pairings");
        CHECK(chi2 < kChi2_999[cells - 1]);
    }
    CHECK(covered >= 20);
}

TEST_CASE("defect census on pinned pairings", "[pairing]") {
    const LayoutPtr layout = make_layout(DegreeSequence({1, 1, 2}), Bipartition(3, {0}));
    const Pairing loopy(layout, {1, 0, 3, 2});  // edge {0,1} plus a loop at vertex 2
    const DefectCensus c = defect_census(loopy);
    CHECK(c.loops == 1);
    CHECK(c.mixed_double_pairs == 0);
    CHECK(c.pure_double_pairs == 0);
    CHECK_FALSE(c.simple());
    CHECK_FALSE(is_simple(loopy));

    const LayoutPtr two = make_layout(DegreeSequence({2, 2}), Bipartition::empty_left(2));
    const Pairing doubled(two, {2, 3, 0, 1});
    CHECK(defect_census(doubled).pure_double_pairs == 1);

    const LayoutPtr ones = make_layout(DegreeSequence({1, 1, 1, 1}), Bipartition::empty_left(4));
    CHECK(defect_census(Pairing(ones, {1, 0, 3, 2})).simple());
}

TEST_CASE("defect census distinguishes triples, quads and double loops", "[pairing]") {
    const LayoutPtr l3 = make_layout(DegreeSequence({3, 3}), Bipartition::empty_left(2));
    const Pairing triple(l3, {3, 4, 5, 0, 1, 2});
    const DefectCensus c3 = defect_census(triple);
    CHECK(c3.pure_triple_pairs == 1);
    CHECK(c3.pure_double_pairs == 0);

    const LayoutPtr l3m = make_layout(DegreeSequence({3, 3}), Bipartition(2, {0}));
    CHECK(defect_census(Pairing(l3m, {3, 4, 5, 0, 1, 2})).mixed_triple_pairs == 1);

    const LayoutPtr l4 = make_layout(DegreeSequence({4, 4}), Bipartition::empty_left(2));
    const DefectCensus c4 = defect_census(Pairing(l4, {4, 5, 6, 7, 0, 1, 2, 3}));
    CHECK(c4.heavy_multiplicities == 1);
    CHECK(c4.pure_triple_pairs == 0);

    const LayoutPtr l44 = make_layout(DegreeSequence({4}), Bipartition::empty_left(1));
    const DefectCensus cdl = defect_census(Pairing(l44, {1, 0, 3, 2}));
    CHECK(cdl.loops == 2);
    CHECK(cdl.double_loops == 1);
}

TEST_CASE("defect census matches the projection route on random samples", "[pairing]") {
    std::mt19937_64 rng(99);
    const LayoutPtr layout =
        make_layout(DegreeSequence({3, 2, 4, 1, 2, 2}), Bipartition(6, {3, 4}));
    for (int i = 0; i < 500; ++i) {
        const Pairing P = sample_restricted(layout, rng);
        CHECK(defect_census(P) == brute::census_via_projection(P));
    }
}

TEST_CASE("defect census is invariant under relabeling points within a bucket", "[pairing]") {
    std::mt19937_64 rng(123);
    const DegreeSequence ds({3, 2, 4, 1, 2});
    const Bipartition bip(5, {3});
    const LayoutPtr layout = make_layout(ds, bip);
    std::mt19937 shuffler(5);
    for (int i = 0; i < 100; ++i) {
        const Pairing P = sample_restricted(layout, rng);
        // permute point labels inside a random bucket
        std::vector<int> perm(static_cast<std::size_t>(P.points()));
        for (int p = 0; p < P.points(); ++p) perm[static_cast<std::size_t>(p)] = p;
        const int v = static_cast<int>(shuffler() % static_cast<unsigned>(ds.n()));
        const int lo = layout->first_point(v);
        const int hi = lo + ds.degree(v);
        std::shuffle(perm.begin() + lo, perm.begin() + hi, shuffler);
        std::vector<int> mate(static_cast<std::size_t>(P.points()));
        for (int p = 0; p < P.points(); ++p)
            mate[static_cast<std::size_t>(perm[static_cast<std::size_t>(p)])] =
                perm[static_cast<std::size_t>(P.mate(p))];
        const Pairing Q(layout, mate);
        CHECK(defect_census(P) == defect_census(Q));
    }
}

TEST_CASE("projection of the tiny running instance", "[pairing]") {
    const DegreeSequence ds({1, 1, 2});
    const Bipartition bip(3, {0});
    const LayoutPtr layout = make_layout(ds, bip);

    const Pairing simple_a(layout, {2, 3, 0, 1});
    const Pairing simple_b(layout, {3, 2, 1, 0});
    for (const Pairing* P : {&simple_a, &simple_b}) {
        const Multigraph g = project(*P);
        REQUIRE(g.simple());
        CHECK(g.edge_mult == std::map<std::pair<int, int>, int>{{{0, 2}, 1}, {{1, 2}, 1}});
    }

    const Multigraph loopy = project(Pairing(layout, {1, 0, 3, 2}));
    CHECK(loopy.edge_mult == std::map<std::pair<int, int>, int>{{{0, 1}, 1}});
    CHECK(loopy.loops == std::vector<int>{0, 0, 1});

    CHECK(project(Pairing(make_layout(DegreeSequence(std::vector<int>{}), Bipartition::empty_left(0)), {})).n == 0);
}

TEST_CASE("simple pairings project with fibers of size prod d_i!", "[pairing]") {
    struct Instance {
        std::vector<int> degrees;
        std::vector<int> left;
    };
    for (const auto& inst : {Instance{{1, 1, 2}, {0}}, Instance{{2, 2, 2}, {}},
                             Instance{{2, 2, 1, 1}, {2}}, Instance{{3, 2, 2, 1}, {3}}}) {
        const DegreeSequence ds(inst.degrees);
        const Bipartition bip(static_cast<int>(inst.degrees.size()), inst.left);
        std::map<std::string, long long> fibers;
        enumerate_pairings(ds, bip, [&](const Pairing& P) {
            if (!is_simple(P)) return;
            const Multigraph g = project(P);
            std::string key;
            for (const auto& [e, m] : g.edge_mult)
                key += std::to_string(e.first) + "-" + std::to_string(e.second) + ";";
            ++fibers[key];
        });
        BigInt expected = 1;
        for (int d : ds.degrees()) expected *= factorial_big(d);
        for (const auto& [key, size] : fibers) CHECK(BigInt(size) == expected);
        CHECK(BigInt(static_cast<long long>(fibers.size())) * expected ==
              exact_bgraph_count(ds, bip) * expected);
    }
}

TEST_CASE("two-path census on pinned pairings", "[pairing]") {
    const LayoutPtr layout = make_layout(DegreeSequence({1, 1, 2}), Bipartition(3, {0}));
    const Pairing path(layout, {2, 3, 0, 1});  // path 0-2, 2-1
    const TwoPathCensus c = two_path_census(path);
    CHECK(c.a1 == 0);
    CHECK(c.a2 == 1);  // the L-to-R direction; the reverse is untyped
    CHECK(c.a3 == 0);
    CHECK(c.a4 == 0);

    const LayoutPtr ones = make_layout(DegreeSequence({1, 1, 1, 1}), Bipartition::empty_left(4));
    const TwoPathCensus z = two_path_census(Pairing(ones, {1, 0, 3, 2}));
    CHECK(z.a1 + z.a2 + z.a3 + z.a4 == 0);
}

TEST_CASE("two-path identity on defect-free pairings", "[pairing]") {
    struct Instance {
        std::vector<int> degrees;
        std::vector<int> left;
    };
    for (const auto& inst : {Instance{{2, 2, 2}, {}}, Instance{{1, 1, 2}, {0}},
                             Instance{{2, 2, 1, 1}, {2}}, Instance{{3, 2, 2, 1}, {3}},
                             Instance{{2, 2, 2, 2}, {0}}}) {
        const DegreeSequence ds(inst.degrees);
        const Bipartition bip(static_cast<int>(inst.degrees.size()), inst.left);
        const long long m2r = moments_right(ds, bip).m2;
        const long long m2l = moments_left(ds, bip).m2;
        enumerate_pairings(ds, bip, [&](const Pairing& P) {
            if (!is_simple(P)) return;
            const TwoPathCensus c = two_path_census(P);
            CHECK(c.a1 + 2 * c.a2 + c.a3 == m2r);
            CHECK(c.a4 == m2l);
        });
    }
}

TEST_CASE("disjoint-pair counts on two disjoint triangles", "[pairing]") {
    // 2-regular on 6 vertices, paired as two vertex-disjoint triangles.
    const DegreeSequence ds(std::vector<int>(6, 2));
    const LayoutPtr layout = make_layout(ds, Bipartition::empty_left(6));
    // triangle on vertices {0,1,2}: points (1,2),(3,4),(5,0); same shape on {3,4,5}
    const Pairing P(layout, {5, 2, 1, 4, 3, 0, 11, 8, 7, 10, 9, 6});
    REQUIRE(is_simple(P));
    const TwoPathCensus c = two_path_census(P, true);
    CHECK(c.a1 == 12);  // six directed 2-paths per triangle
    CHECK(c.x1 == 72);  // ordered pairs must come from different triangles
    CHECK(c.x2 + c.x3 + c.x4 + c.x5 == 0);
}

TEST_CASE("pairing text round trip", "[pairing]") {
    const LayoutPtr layout = make_layout(DegreeSequence({1, 1, 2}), Bipartition(3, {0}));
    const Pairing P(layout, {2, 3, 0, 1});
    CHECK(to_text(P) == "1 1 2; 2 3 0 1");
    const Pairing Q = pairing_from_text(to_text(P), {0});
    CHECK(P == Q);

    std::mt19937_64 rng(1);
    const LayoutPtr big = make_layout(DegreeSequence({3, 2, 4, 1, 2}), Bipartition(5, {3}));
    for (int i = 0; i < 20; ++i) {
        const Pairing R = sample_restricted(big, rng);
        CHECK(pairing_from_text(to_text(R), {3}) == R);
    }
    CHECK_THROWS_AS(pairing_from_text("1 1 2 3", {}), std::invalid_argument);
}
