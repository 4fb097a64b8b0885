#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "bgraph/degree_sequence.hpp"
#include "bgraph/formulas.hpp"
#include "bgraph/pairing.hpp"

namespace bgraph {

struct ExactCountConfig {
    long long max_total_degree = 48;  // bound for the graph-count recursions
    long long max_enum_points = 16;   // bound on M1(R) for pairing enumeration
};

namespace detail {

// Degree-multiset recursion: connect the highest-degree vertex to every
// choice of distinct partners, grouped by residual degree so states collapse
// to sorted multisets. Memoised per top-level call.
class GraphCounter {
public:
    BigInt count(std::vector<int> degrees) {
        long long total = 0;
        for (int d : degrees) total += d;
        if (total % 2 != 0) return 0;
        std::sort(degrees.begin(), degrees.end(), std::greater<int>());
        while (!degrees.empty() && degrees.back() == 0) degrees.pop_back();
        return count_sorted(degrees);
    }

private:
    std::map<std::vector<int>, BigInt> memo_;

    BigInt count_sorted(const std::vector<int>& degrees) {
        if (degrees.empty()) return 1;
        if (const auto it = memo_.find(degrees); it != memo_.end()) return it->second;
        const int d0 = degrees.front();
        std::vector<int> rest(degrees.begin() + 1, degrees.end());
        BigInt total = 0;
        if (d0 <= static_cast<int>(rest.size()))
            total = assign_neighbors(rest, d0);
        memo_.emplace(degrees, total);
        return total;
    }

    // Sum over ways to pick `need` distinct vertices from `rest` (grouped by
    // equal degree) and decrement each by one.
    BigInt assign_neighbors(const std::vector<int>& rest, int need) {
        std::vector<std::pair<int, int>> groups;  // (degree value, count)
        for (int d : rest) {
            if (!groups.empty() && groups.back().first == d)
                ++groups.back().second;
            else
                groups.emplace_back(d, 1);
        }
        BigInt total = 0;
        std::vector<int> taken(groups.size(), 0);
        std::function<void(std::size_t, int, BigInt)> rec = [&](std::size_t gi, int left, BigInt ways) {
            if (left == 0) {
                std::vector<int> next;
                next.reserve(rest.size());
                for (std::size_t j = 0; j < groups.size(); ++j) {
                    for (int c = 0; c < groups[j].second - taken[j]; ++c) next.push_back(groups[j].first);
                    for (int c = 0; c < taken[j]; ++c)
                        if (groups[j].first > 1) next.push_back(groups[j].first - 1);
                }
                std::sort(next.begin(), next.end(), std::greater<int>());
                total += ways * count_sorted(next);
                return;
            }
            if (gi == groups.size()) return;
            int avail = 0;
            for (std::size_t j = gi; j < groups.size(); ++j) avail += groups[j].second;
            if (avail < left) return;
            const int take_max = std::min(left, groups[gi].second);
            for (int take = 0; take <= take_max; ++take) {
                taken[gi] = take;
                rec(gi + 1, left - take, ways * binomial_big(groups[gi].second, take));
            }
            taken[gi] = 0;
        };
        rec(0, need, 1);
        return total;
    }
};

}  // namespace detail

// Exact number of labeled simple graphs with the given degree sequence.
inline BigInt exact_graph_count(const DegreeSequence& ds, const ExactCountConfig& cfg = {}) {
    if (ds.total_degree() > cfg.max_total_degree)
        throw size_error("exact_graph_count: total degree beyond the practical bound");
    detail::GraphCounter counter;
    return counter.count(ds.degrees());
}

namespace detail {

class BGraphCounter {
public:
    BigInt count(std::vector<int> left_degrees, std::vector<int> right_degrees) {
        std::sort(left_degrees.begin(), left_degrees.end(), std::greater<int>());
        while (!left_degrees.empty() && left_degrees.back() == 0) left_degrees.pop_back();
        std::sort(right_degrees.begin(), right_degrees.end(), std::greater<int>());
        while (!right_degrees.empty() && right_degrees.back() == 0) right_degrees.pop_back();
        return count_sorted(left_degrees, right_degrees);
    }

private:
    std::map<std::pair<std::vector<int>, std::vector<int>>, BigInt> memo_;
    GraphCounter plain_;

    BigInt count_sorted(const std::vector<int>& left, const std::vector<int>& right) {
        if (left.empty()) {
            long long total = 0;
            for (int d : right) total += d;
            if (total % 2 != 0) return 0;
            return plain_.count(right);
        }
        const auto key = std::make_pair(left, right);
        if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
        const int d0 = left.front();
        const std::vector<int> rest(left.begin() + 1, left.end());
        BigInt total = 0;
        if (d0 <= static_cast<int>(right.size())) {
            std::vector<std::pair<int, int>> groups;
            for (int d : right) {
                if (!groups.empty() && groups.back().first == d)
                    ++groups.back().second;
                else
                    groups.emplace_back(d, 1);
            }
            std::vector<int> taken(groups.size(), 0);
            std::function<void(std::size_t, int, BigInt)> rec = [&](std::size_t gi, int need, BigInt ways) {
                if (need == 0) {
                    std::vector<int> next;
                    next.reserve(right.size());
                    for (std::size_t j = 0; j < groups.size(); ++j) {
                        for (int c = 0; c < groups[j].second - taken[j]; ++c) next.push_back(groups[j].first);
                        for (int c = 0; c < taken[j]; ++c)
                            if (groups[j].first > 1) next.push_back(groups[j].first - 1);
                    }
                    std::sort(next.begin(), next.end(), std::greater<int>());
                    total += ways * count_sorted(rest, next);
                    return;
                }
                if (gi == groups.size()) return;
                int avail = 0;
                for (std::size_t j = gi; j < groups.size(); ++j) avail += groups[j].second;
                if (avail < need) return;
                const int take_max = std::min(need, groups[gi].second);
                for (int take = 0; take <= take_max; ++take) {
                    taken[gi] = take;
                    rec(gi + 1, need - take, ways * binomial_big(groups[gi].second, take));
                }
                taken[gi] = 0;
            };
            rec(0, d0, 1);
        }
        memo_.emplace(key, total);
        return total;
    }
};

}  // namespace detail

// Exact g(L, R, d): simple graphs with degree sequence d in which L is
// independent.
inline BigInt exact_bgraph_count(const DegreeSequence& ds, const Bipartition& bip,
                                 const ExactCountConfig& cfg = {}) {
    if (bip.n() != ds.n()) throw std::invalid_argument("exact_bgraph_count: bipartition size mismatch");
    if (ds.total_degree() > cfg.max_total_degree)
        throw size_error("exact_bgraph_count: total degree beyond the practical bound");
    std::vector<int> left_degrees, right_degrees;
    for (int v = 0; v < ds.n(); ++v)
        (bip.in_left(v) ? left_degrees : right_degrees).push_back(ds.degree(v));
    detail::BGraphCounter counter;
    return counter.count(std::move(left_degrees), std::move(right_degrees));
}

// Exact P(G_S = H) = g(S, [n]\S, d') / g(d), as a rational.
inline Rational exact_induced_probability(const DegreeSequence& ds, const InducedSubgraphSpec& spec,
                                          const ExactCountConfig& cfg = {}) {
    const BigInt denom = exact_graph_count(ds, cfg);
    if (denom == 0)
        throw std::domain_error("exact_induced_probability: no graph realizes the host sequence");
    const ResidualResult res = residual(ds, spec);
    if (!res.feasible()) return Rational(0);
    const Bipartition bip(ds.n(), spec.vertices());
    const BigInt numer = exact_bgraph_count(*res.degrees, bip, cfg);
    return Rational(numer, denom);
}

// Visits every restricted pairing exactly once (lowest unmatched point
// first). Returns the number of visits.
template <class Visitor>
inline long long enumerate_pairings(const DegreeSequence& ds, const Bipartition& bip, Visitor&& visit,
                                    const ExactCountConfig& cfg = {}) {
    if (feasibility(ds, bip) != Feasibility::feasible) return 0;
    const long long m1r = ds.total_degree() - moments_left(ds, bip).m1;
    if (m1r > cfg.max_enum_points)
        throw size_error("enumerate_pairings: M1(R) beyond the enumeration bound");
    const LayoutPtr layout = make_layout(ds, bip);
    const int m = layout->points();
    std::vector<int> mate(static_cast<std::size_t>(m), -1);
    long long count = 0;
    std::function<void(int)> rec = [&](int from) {
        int p = from;
        while (p < m && mate[static_cast<std::size_t>(p)] >= 0) ++p;
        if (p == m) {
            ++count;
            visit(Pairing(layout, mate));
            return;
        }
        const bool p_left = layout->point_in_left(p);
        for (int q = p + 1; q < m; ++q) {
            if (mate[static_cast<std::size_t>(q)] >= 0) continue;
            if (p_left && layout->point_in_left(q)) continue;
            mate[static_cast<std::size_t>(p)] = q;
            mate[static_cast<std::size_t>(q)] = p;
            rec(p + 1);
            mate[static_cast<std::size_t>(p)] = -1;
            mate[static_cast<std::size_t>(q)] = -1;
        }
    };
    rec(0);
    return count;
}

// Identifies the class C_{l0,l1,l2}; pairings with triple pairs, double
// loops or heavier multiplicities sit in a single higher-defect bucket.
struct ClassKey {
    int l0 = 0;
    int l1 = 0;
    int l2 = 0;
    bool higher_defect = false;

    static ClassKey of(const DefectCensus& c) {
        if (c.higher_defect()) return {0, 0, 0, true};
        return {static_cast<int>(c.loops), static_cast<int>(c.mixed_double_pairs),
                static_cast<int>(c.pure_double_pairs), false};
    }
    auto operator<=>(const ClassKey&) const = default;
};

inline std::string to_string(const ClassKey& k) {
    if (k.higher_defect) return "higher";
    return "(" + std::to_string(k.l0) + "," + std::to_string(k.l1) + "," + std::to_string(k.l2) + ")";
}

struct ClassTable {
    std::map<ClassKey, BigInt> counts;
    BigInt total = 0;

    BigInt count(const ClassKey& k) const {
        const auto it = counts.find(k);
        return it == counts.end() ? BigInt(0) : it->second;
    }
    BigInt simple_count() const { return count(ClassKey{}); }
    BigInt higher_defect_count() const { return count(ClassKey{0, 0, 0, true}); }
};

inline ClassTable exact_class_table(const DegreeSequence& ds, const Bipartition& bip,
                                    const ExactCountConfig& cfg = {}) {
    ClassTable table;
    table.total = enumerate_pairings(
        ds, bip, [&](const Pairing& P) { ++table.counts[ClassKey::of(defect_census(P))]; }, cfg);
    return table;
}

// P(simple) = |C_{0,0,0}| / |M(L,R,d)|, exact.
inline Rational exact_p_simple(const DegreeSequence& ds, const Bipartition& bip,
                               const ExactCountConfig& cfg = {}) {
    const ClassTable table = exact_class_table(ds, bip, cfg);
    if (table.total == 0) throw std::domain_error("exact_p_simple: no restricted pairings");
    return Rational(table.simple_count(), table.total);
}

}  // namespace bgraph
