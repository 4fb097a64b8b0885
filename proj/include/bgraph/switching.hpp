#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bgraph/exact_count.hpp"
#include "bgraph/pairing.hpp"

namespace bgraph {

enum class SwitchingKind { L1, L2, D1, D2, D3, D4, S1, S2, S3, S4 };

constexpr std::array<SwitchingKind, 10> all_switching_kinds = {
    SwitchingKind::L1, SwitchingKind::L2, SwitchingKind::D1, SwitchingKind::D2,
    SwitchingKind::D3, SwitchingKind::D4, SwitchingKind::S1, SwitchingKind::S2,
    SwitchingKind::S3, SwitchingKind::S4};

inline const char* to_string(SwitchingKind k) {
    switch (k) {
        case SwitchingKind::L1: return "L1";
        case SwitchingKind::L2: return "L2";
        case SwitchingKind::D1: return "D1";
        case SwitchingKind::D2: return "D2";
        case SwitchingKind::D3: return "D3";
        case SwitchingKind::D4: return "D4";
        case SwitchingKind::S1: return "S1";
        case SwitchingKind::S2: return "S2";
        case SwitchingKind::S3: return "S3";
        case SwitchingKind::S4: return "S4";
    }
    return "?";
}

enum class SwitchDirection { forward, inverse };

// A labeled switching site: the figure's point labels 1..k stored at
// points[0..k-1]. Labeled sites are what the double-counting identities
// count, so labelings that differ only in orientation are distinct sites.
struct SwitchingSite {
    SwitchingKind kind = SwitchingKind::L1;
    SwitchDirection direction = SwitchDirection::forward;
    std::array<int, 12> points{};
    int point_count = 0;

    bool operator==(const SwitchingSite&) const = default;
};

inline int site_point_count(SwitchingKind k) {
    switch (k) {
        case SwitchingKind::L1:
        case SwitchingKind::L2:
        case SwitchingKind::S1:
        case SwitchingKind::S2: return 6;
        case SwitchingKind::D1:
        case SwitchingKind::D2:
        case SwitchingKind::D3: return 8;
        case SwitchingKind::S3:
        case SwitchingKind::S4: return 10;
        case SwitchingKind::D4: return 12;
    }
    return 0;
}

namespace detail {

struct CensusDelta {
    int loops = 0, mixed_doubles = 0, pure_doubles = 0;
    int mixed_triples = 0, pure_triples = 0, double_loops = 0, heavy = 0;

    bool operator==(const CensusDelta&) const = default;
};

inline CensusDelta expected_delta(SwitchingKind k, SwitchDirection dir) {
    CensusDelta d;
    const int sign = dir == SwitchDirection::forward ? -1 : +1;
    switch (k) {
        case SwitchingKind::L1:
        case SwitchingKind::L2: d.loops = sign; break;
        case SwitchingKind::D1:
        case SwitchingKind::D2: d.mixed_doubles = sign; break;
        case SwitchingKind::D3:
        case SwitchingKind::D4: d.pure_doubles = sign; break;
        default: break;  // S-switchings preserve the census
    }
    return d;
}

inline DefectCensus shifted_census(DefectCensus c, const CensusDelta& d) {
    c.loops += d.loops;
    c.mixed_double_pairs += d.mixed_doubles;
    c.pure_double_pairs += d.pure_doubles;
    c.mixed_triple_pairs += d.mixed_triples;
    c.pure_triple_pairs += d.pure_triples;
    c.double_loops += d.double_loops;
    c.heavy_multiplicities += d.heavy;
    return c;
}

// Pair replacement in label space (1-based labels), forward direction.
struct Replacement {
    std::vector<std::pair<int, int>> removed;
    std::vector<std::pair<int, int>> added;
};

inline const Replacement& replacement_for(SwitchingKind k) {
    static const Replacement l_swt{{{2, 3}, {1, 5}, {4, 6}}, {{1, 2}, {3, 4}, {5, 6}}};
    static const Replacement d1{{{3, 4}, {5, 6}, {1, 2}, {7, 8}}, {{1, 3}, {5, 7}, {2, 4}, {6, 8}}};
    static const Replacement d2{{{3, 4}, {5, 6}, {1, 2}, {7, 8}}, {{1, 4}, {6, 7}, {2, 3}, {5, 8}}};
    static const Replacement d3{{{1, 2}, {3, 4}, {5, 6}, {7, 8}}, {{1, 5}, {2, 6}, {3, 7}, {4, 8}}};
    static const Replacement d4{{{1, 2}, {3, 4}, {5, 6}, {7, 8}, {9, 10}, {11, 12}},
                                {{6, 10}, {8, 12}, {1, 5}, {3, 9}, {2, 11}, {4, 7}}};
    static const Replacement s_odd{{{1, 2}, {3, 4}}, {{2, 3}, {1, 4}}};   // S1, S3
    static const Replacement s_even{{{3, 4}, {5, 6}}, {{3, 5}, {4, 6}}};  // S2, S4
    switch (k) {
        case SwitchingKind::L1:
        case SwitchingKind::L2: return l_swt;
        case SwitchingKind::D1: return d1;
        case SwitchingKind::D2: return d2;
        case SwitchingKind::D3: return d3;
        case SwitchingKind::D4: return d4;
        case SwitchingKind::S1:
        case SwitchingKind::S3: return s_odd;
        case SwitchingKind::S2:
        case SwitchingKind::S4: return s_even;
    }
    return l_swt;
}

// Labels whose host vertices must be pairwise distinct (one representative
// per bucket of the figure).
inline const std::vector<int>& distinct_labels(SwitchingKind k) {
    static const std::vector<int> l_swt = {1, 2, 4, 5, 6};
    static const std::vector<int> d12 = {1, 2, 3, 4, 7, 8};
    static const std::vector<int> d3 = {1, 2, 5, 6, 7, 8};
    static const std::vector<int> d4 = {1, 2, 5, 6, 7, 8, 9, 10, 11, 12};
    static const std::vector<int> s1 = {1, 2, 3, 4, 6};
    static const std::vector<int> s2 = {1, 2, 4, 5, 6};
    static const std::vector<int> s3 = {1, 2, 3, 4, 6, 7, 8, 10};
    static const std::vector<int> s4 = {1, 2, 4, 5, 6, 7, 8, 10};
    switch (k) {
        case SwitchingKind::L1:
        case SwitchingKind::L2: return l_swt;
        case SwitchingKind::D1:
        case SwitchingKind::D2: return d12;
        case SwitchingKind::D3: return d3;
        case SwitchingKind::D4: return d4;
        case SwitchingKind::S1: return s1;
        case SwitchingKind::S2: return s2;
        case SwitchingKind::S3: return s3;
        case SwitchingKind::S4: return s4;
    }
    return l_swt;
}

// Label pairs that must share a bucket.
inline const std::vector<std::pair<int, int>>& cobucket_labels(SwitchingKind k) {
    static const std::vector<std::pair<int, int>> l_swt = {{2, 3}};
    static const std::vector<std::pair<int, int>> d12 = {{3, 5}, {4, 6}};
    static const std::vector<std::pair<int, int>> d34 = {{1, 3}, {2, 4}};
    static const std::vector<std::pair<int, int>> s1 = {{4, 5}};
    static const std::vector<std::pair<int, int>> s2 = {{2, 3}};
    static const std::vector<std::pair<int, int>> s3 = {{4, 5}, {8, 9}};
    static const std::vector<std::pair<int, int>> s4 = {{2, 3}, {8, 9}};
    switch (k) {
        case SwitchingKind::L1:
        case SwitchingKind::L2: return l_swt;
        case SwitchingKind::D1:
        case SwitchingKind::D2: return d12;
        case SwitchingKind::D3:
        case SwitchingKind::D4: return d34;
        case SwitchingKind::S1: return s1;
        case SwitchingKind::S2: return s2;
        case SwitchingKind::S3: return s3;
        case SwitchingKind::S4: return s4;
    }
    return l_swt;
}

}  // namespace detail

// Enumerates the labeled sites of every switching kind over one pairing.
// Candidates follow the figures' structural patterns; validity additionally
// requires the exact census delta of the kind (destroy exactly the one
// intended defect, create and destroy nothing else).
class SwitchingScanner {
public:
    explicit SwitchingScanner(const Pairing& P) : p_(P), pm_(P) {
        census_ = defect_census(P);
        const auto& layout = P.layout();
        const auto& bip = layout.bipartition();
        std::map<std::uint64_t, std::vector<std::pair<int, int>>> by_vertex_pair;
        for (int p = 0; p < P.points(); ++p) {
            const int q = P.mate(p);
            if (q < p) continue;
            const int u = layout.vertex_of(p);
            const int v = layout.vertex_of(q);
            if (u == v) {
                loops_.emplace_back(p, q);
            } else if (bip.in_left(u)) {
                mixeds_.emplace_back(p, q);
            } else if (bip.in_left(v)) {
                mixeds_.emplace_back(q, p);
            } else {
                pures_.emplace_back(p, q);
                auto& bucket = by_vertex_pair[pm_.key(u, v)];
                bucket.emplace_back(u < v ? std::make_pair(p, q) : std::make_pair(q, p));
            }
        }
        for (const auto& [p, q] : mixeds_) {
            auto& bucket = by_vertex_pair[pm_.key(layout.vertex_of(p), layout.vertex_of(q))];
            bucket.emplace_back(p, q);  // oriented (L-point, R-point)
        }
        for (auto& entry : by_vertex_pair) {
            auto& bucket = entry.second;
            if (bucket.size() != 2) continue;
            const bool mixed = bip.in_left(layout.vertex_of(bucket[0].first)) ||
                               bip.in_left(layout.vertex_of(bucket[0].second));
            (mixed ? mixed_doubles_ : pure_doubles_).push_back({bucket[0], bucket[1]});
        }
        detail::for_each_directed_path(p_, pm_, [&](const DirectedPath& path) {
            if (path.simple && path.type >= 1 && path.type <= 4)
                paths_[static_cast<std::size_t>(path.type)].push_back(path);
        });
    }

    const DefectCensus& census() const { return census_; }
    const Pairing& pairing() const { return p_; }

    template <class Fn>
    void for_each_site(SwitchingKind kind, SwitchDirection dir, Fn&& fn) const {
        switch (kind) {
            case SwitchingKind::L1: scan_l(kind, dir, fn); break;
            case SwitchingKind::L2: scan_l(kind, dir, fn); break;
            case SwitchingKind::D1: scan_d12(kind, dir, fn); break;
            case SwitchingKind::D2: scan_d12(kind, dir, fn); break;
            case SwitchingKind::D3: scan_d3(dir, fn); break;
            case SwitchingKind::D4: scan_d4(dir, fn); break;
            case SwitchingKind::S1: scan_s12(kind, dir, fn); break;
            case SwitchingKind::S2: scan_s12(kind, dir, fn); break;
            case SwitchingKind::S3: scan_s34(kind, dir, fn); break;
            case SwitchingKind::S4: scan_s34(kind, dir, fn); break;
        }
    }

    long long count_sites(SwitchingKind kind, SwitchDirection dir) const {
        long long n = 0;
        for_each_site(kind, dir, [&](const SwitchingSite&) { ++n; });
        return n;
    }

    // Exact census delta of replacing `removed` point pairs by `added`.
    detail::CensusDelta delta_of(const std::vector<std::pair<int, int>>& removed,
                                 const std::vector<std::pair<int, int>>& added) const {
        const auto& layout = p_.layout();
        const auto& bip = layout.bipartition();
        std::array<std::pair<std::uint64_t, int>, 12> cross{};
        std::array<std::pair<int, int>, 12> loop{};
        std::size_t n_cross = 0, n_loop = 0;
        const auto touch = [&](int a, int b, int sign) {
            const int u = layout.vertex_of(a);
            const int v = layout.vertex_of(b);
            if (u == v) {
                for (std::size_t i = 0; i < n_loop; ++i)
                    if (loop[i].first == u) {
                        loop[i].second += sign;
                        return;
                    }
                loop[n_loop++] = {u, sign};
            } else {
                const std::uint64_t key = pm_.key(u, v);
                for (std::size_t i = 0; i < n_cross; ++i)
                    if (cross[i].first == key) {
                        cross[i].second += sign;
                        return;
                    }
                cross[n_cross++] = {key, sign};
            }
        };
        for (const auto& [a, b] : removed) touch(a, b, -1);
        for (const auto& [a, b] : added) touch(a, b, +1);

        detail::CensusDelta d;
        for (std::size_t i = 0; i < n_cross; ++i) {
            if (cross[i].second == 0) continue;
            const int u = static_cast<int>(cross[i].first / static_cast<std::uint64_t>(layout.n()));
            const int v = static_cast<int>(cross[i].first % static_cast<std::uint64_t>(layout.n()));
            const bool mixed = bip.in_left(u) || bip.in_left(v);
            const int before = pm_.mult(u, v);
            const int after = before + cross[i].second;
            const auto contrib = [&](int m, int sign) {
                if (m == 2) (mixed ? d.mixed_doubles : d.pure_doubles) += sign;
                if (m == 3) (mixed ? d.mixed_triples : d.pure_triples) += sign;
                if (m >= 4) d.heavy += sign;
            };
            contrib(before, -1);
            contrib(after, +1);
        }
        for (std::size_t i = 0; i < n_loop; ++i) {
            if (loop[i].second == 0) continue;
            const int before = pm_.loops_at[static_cast<std::size_t>(loop[i].first)];
            const int after = before + loop[i].second;
            d.loops += loop[i].second;
            d.double_loops += after * (after - 1) / 2 - before * (before - 1) / 2;
        }
        return d;
    }

private:
    const Pairing& p_;
    detail::PairMultiplicity pm_;
    DefectCensus census_;
    std::vector<std::pair<int, int>> loops_;   // (p, q), p < q, same bucket
    std::vector<std::pair<int, int>> pures_;   // both points in R, distinct buckets
    std::vector<std::pair<int, int>> mixeds_;  // oriented (L-point, R-point)
    std::vector<std::array<std::pair<int, int>, 2>> mixed_doubles_;  // pairs as (L-pt, R-pt)
    std::vector<std::array<std::pair<int, int>, 2>> pure_doubles_;   // pairs as (lo-v pt, hi-v pt)
    std::array<std::vector<DirectedPath>, 5> paths_;  // simple paths indexed by type

    template <class Fn>
    void emit(SwitchingKind kind, SwitchDirection dir, const std::array<int, 12>& pts,
              Fn&& fn) const {
        const auto& labels = detail::distinct_labels(kind);
        for (std::size_t i = 0; i < labels.size(); ++i) {
            const int vi = p_.vertex_of(pts[static_cast<std::size_t>(labels[i] - 1)]);
            for (std::size_t j = i + 1; j < labels.size(); ++j)
                if (vi == p_.vertex_of(pts[static_cast<std::size_t>(labels[j] - 1)])) return;
        }
        const auto& rep = detail::replacement_for(kind);
        std::vector<std::pair<int, int>> removed, added;
        removed.reserve(rep.removed.size());
        added.reserve(rep.added.size());
        const auto& from = dir == SwitchDirection::forward ? rep.removed : rep.added;
        const auto& to = dir == SwitchDirection::forward ? rep.added : rep.removed;
        for (const auto& [a, b] : from)
            removed.emplace_back(pts[static_cast<std::size_t>(a - 1)], pts[static_cast<std::size_t>(b - 1)]);
        for (const auto& [a, b] : to)
            added.emplace_back(pts[static_cast<std::size_t>(a - 1)], pts[static_cast<std::size_t>(b - 1)]);
        for (const auto& [a, b] : added)
            if (p_.layout().point_in_left(a) && p_.layout().point_in_left(b)) return;
        if (!(delta_of(removed, added) == detail::expected_delta(kind, dir))) return;
        SwitchingSite site;
        site.kind = kind;
        site.direction = dir;
        site.points = pts;
        site.point_count = site_point_count(kind);
        fn(site);
    }

    // L1: loop + two pure pairs; L2: loop + two mixed pairs. The inverse
    // takes a type-1 (L1) or type-3 (L2) simple 2-path and a pure pair.
    template <class Fn>
    void scan_l(SwitchingKind kind, SwitchDirection dir, Fn&& fn) const {
        std::array<int, 12> pts{};
        if (dir == SwitchDirection::forward) {
            for (const auto& [lp, lq] : loops_) {
                const std::array<std::pair<int, int>, 2> labelings = {{{lp, lq}, {lq, lp}}};
                for (const auto& [two, three] : labelings) {
                    pts[1] = two;
                    pts[2] = three;
                    if (kind == SwitchingKind::L1) {
                        for (std::size_t i = 0; i < pures_.size(); ++i)
                            for (const auto& [one, five] :
                                 {pures_[i], std::make_pair(pures_[i].second, pures_[i].first)}) {
                                pts[0] = one;
                                pts[4] = five;
                                for (std::size_t j = 0; j < pures_.size(); ++j) {
                                    if (j == i) continue;
                                    for (const auto& [four, six] :
                                         {pures_[j], std::make_pair(pures_[j].second, pures_[j].first)}) {
                                        pts[3] = four;
                                        pts[5] = six;
                                        emit(kind, dir, pts, fn);
                                    }
                                }
                            }
                    } else {
                        for (std::size_t i = 0; i < mixeds_.size(); ++i) {
                            pts[0] = mixeds_[i].first;   // 1 in L
                            pts[4] = mixeds_[i].second;  // 5 in R
                            for (std::size_t j = 0; j < mixeds_.size(); ++j) {
                                if (j == i) continue;
                                pts[3] = mixeds_[j].first;   // 4 in L
                                pts[5] = mixeds_[j].second;  // 6 in R
                                emit(kind, dir, pts, fn);
                            }
                        }
                    }
                }
            }
        } else {
            const auto& paths = paths_[kind == SwitchingKind::L1 ? 1 : 3];
            for (const auto& path : paths) {
                pts[0] = path.u1;
                pts[1] = path.q1;
                pts[2] = path.q2;
                pts[3] = path.u2p;
                for (const auto& e : pures_)
                    for (const auto& [five, six] : {e, std::make_pair(e.second, e.first)}) {
                        pts[4] = five;
                        pts[5] = six;
                        emit(kind, dir, pts, fn);
                    }
            }
        }
    }

    // D1: mixed double pair + two pure pairs; D2: mixed double pair + two
    // mixed pairs. Inverses pair a type-4 with a type-1 (D1) or a type-3
    // with a type-4 (D2) simple 2-path.
    template <class Fn>
    void scan_d12(SwitchingKind kind, SwitchDirection dir, Fn&& fn) const {
        std::array<int, 12> pts{};
        if (dir == SwitchDirection::forward) {
            for (const auto& md : mixed_doubles_) {
                for (int swap = 0; swap < 2; ++swap) {
                    const auto& ea = md[static_cast<std::size_t>(swap)];
                    const auto& eb = md[static_cast<std::size_t>(1 - swap)];
                    pts[2] = ea.first;   // 3 in L
                    pts[3] = ea.second;  // 4 in R
                    pts[4] = eb.first;   // 5 in L
                    pts[5] = eb.second;  // 6 in R
                    if (kind == SwitchingKind::D1) {
                        for (std::size_t i = 0; i < pures_.size(); ++i)
                            for (const auto& [one, two] :
                                 {pures_[i], std::make_pair(pures_[i].second, pures_[i].first)}) {
                                pts[0] = one;
                                pts[1] = two;
                                for (std::size_t j = 0; j < pures_.size(); ++j) {
                                    if (j == i) continue;
                                    for (const auto& [seven, eight] :
                                         {pures_[j], std::make_pair(pures_[j].second, pures_[j].first)}) {
                                        pts[6] = seven;
                                        pts[7] = eight;
                                        emit(kind, dir, pts, fn);
                                    }
                                }
                            }
                    } else {
                        for (std::size_t i = 0; i < mixeds_.size(); ++i) {
                            pts[0] = mixeds_[i].first;   // 1 in L
                            pts[1] = mixeds_[i].second;  // 2 in R
                            for (std::size_t j = 0; j < mixeds_.size(); ++j) {
                                if (j == i) continue;
                                pts[6] = mixeds_[j].first;   // 7 in L
                                pts[7] = mixeds_[j].second;  // 8 in R
                                emit(kind, dir, pts, fn);
                            }
                        }
                    }
                }
            }
        } else if (kind == SwitchingKind::D1) {
            for (const auto& p4 : paths_[4]) {
                pts[0] = p4.u1;
                pts[2] = p4.q1;
                pts[4] = p4.q2;
                pts[6] = p4.u2p;  // type-4 path ((1,3),(5,7))
                for (const auto& p1 : paths_[1]) {
                    pts[1] = p1.u1;
                    pts[3] = p1.q1;
                    pts[5] = p1.q2;
                    pts[7] = p1.u2p;  // type-1 path ((2,4),(6,8))
                    emit(kind, dir, pts, fn);
                }
            }
        } else {
            for (const auto& p3 : paths_[3]) {
                pts[0] = p3.u1;
                pts[3] = p3.q1;
                pts[5] = p3.q2;
                pts[6] = p3.u2p;  // type-3 path ((1,4),(6,7))
                for (const auto& p4 : paths_[4]) {
                    pts[1] = p4.u1;
                    pts[2] = p4.q1;
                    pts[4] = p4.q2;
                    pts[7] = p4.u2p;  // type-4 path ((2,3),(5,8))
                    emit(kind, dir, pts, fn);
                }
            }
        }
    }

    // D3: pure double pair + two pure pairs; inverse takes an ordered pair
    // of distinct simple type-1 2-paths.
    template <class Fn>
    void scan_d3(SwitchDirection dir, Fn&& fn) const {
        std::array<int, 12> pts{};
        if (dir == SwitchDirection::forward) {
            for (const auto& pd : pure_doubles_) {
                for (int swap = 0; swap < 2; ++swap)
                    for (int side = 0; side < 2; ++side) {
                        const auto& ea = pd[static_cast<std::size_t>(swap)];
                        const auto& eb = pd[static_cast<std::size_t>(1 - swap)];
                        pts[0] = side ? ea.second : ea.first;
                        pts[1] = side ? ea.first : ea.second;
                        pts[2] = side ? eb.second : eb.first;
                        pts[3] = side ? eb.first : eb.second;
                        for (std::size_t i = 0; i < pures_.size(); ++i)
                            for (const auto& [five, six] :
                                 {pures_[i], std::make_pair(pures_[i].second, pures_[i].first)}) {
                                pts[4] = five;
                                pts[5] = six;
                                for (std::size_t j = 0; j < pures_.size(); ++j) {
                                    if (j == i) continue;
                                    for (const auto& [seven, eight] :
                                         {pures_[j], std::make_pair(pures_[j].second, pures_[j].first)}) {
                                        pts[6] = seven;
                                        pts[7] = eight;
                                        emit(SwitchingKind::D3, dir, pts, fn);
                                    }
                                }
                            }
                    }
            }
        } else {
            const auto& paths = paths_[1];
            for (std::size_t a = 0; a < paths.size(); ++a)
                for (std::size_t b = 0; b < paths.size(); ++b) {
                    if (a == b) continue;
                    pts[4] = paths[a].u1;
                    pts[0] = paths[a].q1;
                    pts[2] = paths[a].q2;
                    pts[6] = paths[a].u2p;  // ((5,1),(3,7))
                    pts[5] = paths[b].u1;
                    pts[1] = paths[b].q1;
                    pts[3] = paths[b].q2;
                    pts[7] = paths[b].u2p;  // ((6,2),(4,8))
                    emit(SwitchingKind::D3, dir, pts, fn);
                }
        }
    }

    // D4: pure double pair + four mixed pairs; inverse takes an ordered pair
    // of simple type-3 2-paths plus an ordered pair of distinct pure pairs.
    template <class Fn>
    void scan_d4(SwitchDirection dir, Fn&& fn) const {
        std::array<int, 12> pts{};
        if (dir == SwitchDirection::forward) {
            const std::size_t m = mixeds_.size();
            for (const auto& pd : pure_doubles_) {
                for (int swap = 0; swap < 2; ++swap)
                    for (int side = 0; side < 2; ++side) {
                        const auto& ea = pd[static_cast<std::size_t>(swap)];
                        const auto& eb = pd[static_cast<std::size_t>(1 - swap)];
                        pts[0] = side ? ea.second : ea.first;
                        pts[1] = side ? ea.first : ea.second;
                        pts[2] = side ? eb.second : eb.first;
                        pts[3] = side ? eb.first : eb.second;
                        for (std::size_t i = 0; i < m; ++i)
                            for (std::size_t j = 0; j < m; ++j) {
                                if (j == i) continue;
                                for (std::size_t k = 0; k < m; ++k) {
                                    if (k == i || k == j) continue;
                                    for (std::size_t l = 0; l < m; ++l) {
                                        if (l == i || l == j || l == k) continue;
                                        pts[4] = mixeds_[i].first;
                                        pts[5] = mixeds_[i].second;
                                        pts[6] = mixeds_[j].first;
                                        pts[7] = mixeds_[j].second;
                                        pts[8] = mixeds_[k].first;
                                        pts[9] = mixeds_[k].second;
                                        pts[10] = mixeds_[l].first;
                                        pts[11] = mixeds_[l].second;
                                        emit(SwitchingKind::D4, dir, pts, fn);
                                    }
                                }
                            }
                    }
            }
        } else {
            const auto& paths = paths_[3];
            for (std::size_t a = 0; a < paths.size(); ++a)
                for (std::size_t b = 0; b < paths.size(); ++b) {
                    if (a == b) continue;
                    pts[4] = paths[a].u1;
                    pts[0] = paths[a].q1;
                    pts[2] = paths[a].q2;
                    pts[8] = paths[a].u2p;  // ((5,1),(3,9))
                    pts[10] = paths[b].u1;
                    pts[1] = paths[b].q1;
                    pts[3] = paths[b].q2;
                    pts[6] = paths[b].u2p;  // ((11,2),(4,7))
                    for (std::size_t i = 0; i < pures_.size(); ++i)
                        for (const auto& [six, ten] :
                             {pures_[i], std::make_pair(pures_[i].second, pures_[i].first)}) {
                            pts[5] = six;
                            pts[9] = ten;
                            for (std::size_t j = 0; j < pures_.size(); ++j) {
                                if (j == i) continue;
                                for (const auto& [eight, twelve] :
                                     {pures_[j], std::make_pair(pures_[j].second, pures_[j].first)}) {
                                    pts[7] = eight;
                                    pts[11] = twelve;
                                    emit(SwitchingKind::D4, dir, pts, fn);
                                }
                            }
                        }
                }
        }
    }

    // S1: mixed pair + simple type-1 path -> type-2; S2: pure pair + simple
    // type-3 path -> type-2. Inverses run from the type-2 path back.
    template <class Fn>
    void scan_s12(SwitchingKind kind, SwitchDirection dir, Fn&& fn) const {
        std::array<int, 12> pts{};
        if (kind == SwitchingKind::S1) {
            if (dir == SwitchDirection::forward) {
                for (const auto& path : paths_[1]) {
                    pts[2] = path.u1;
                    pts[3] = path.q1;
                    pts[4] = path.q2;
                    pts[5] = path.u2p;  // ((3,4),(5,6))
                    for (const auto& m : mixeds_) {
                        pts[0] = m.first;
                        pts[1] = m.second;
                        emit(kind, dir, pts, fn);
                    }
                }
            } else {
                for (const auto& path : paths_[2]) {
                    pts[0] = path.u1;
                    pts[3] = path.q1;
                    pts[4] = path.q2;
                    pts[5] = path.u2p;  // ((1,4),(5,6))
                    for (const auto& e : pures_)
                        for (const auto& [two, three] : {e, std::make_pair(e.second, e.first)}) {
                            pts[1] = two;
                            pts[2] = three;
                            emit(kind, dir, pts, fn);
                        }
                }
            }
        } else {
            if (dir == SwitchDirection::forward) {
                for (const auto& path : paths_[3]) {
                    pts[0] = path.u1;
                    pts[1] = path.q1;
                    pts[2] = path.q2;
                    pts[3] = path.u2p;  // ((1,2),(3,4))
                    for (const auto& e : pures_)
                        for (const auto& [five, six] : {e, std::make_pair(e.second, e.first)}) {
                            pts[4] = five;
                            pts[5] = six;
                            emit(kind, dir, pts, fn);
                        }
                }
            } else {
                for (const auto& path : paths_[2]) {
                    pts[0] = path.u1;
                    pts[1] = path.q1;
                    pts[2] = path.q2;
                    pts[4] = path.u2p;  // ((1,2),(3,5))
                    for (const auto& m : mixeds_) {
                        pts[3] = m.first;   // 4 in L
                        pts[5] = m.second;  // 6 in R
                        emit(kind, dir, pts, fn);
                    }
                }
            }
        }
    }

    // S3/S4 repeat S1/S2 with an untouched witness type-1 path, labeled
    // ((7,8),(9,10)), disjoint from everything else.
    template <class Fn>
    void scan_s34(SwitchingKind kind, SwitchDirection dir, Fn&& fn) const {
        const SwitchingKind base = kind == SwitchingKind::S3 ? SwitchingKind::S1 : SwitchingKind::S2;
        for (const auto& witness : paths_[1]) {
            scan_s12(base, dir, [&](const SwitchingSite& inner) {
                SwitchingSite site = inner;
                site.kind = kind;
                site.point_count = site_point_count(kind);
                site.points[6] = witness.u1;
                site.points[7] = witness.q1;
                site.points[8] = witness.q2;
                site.points[9] = witness.u2p;
                // re-run the full validity check with the witness in place
                emit(kind, dir, site.points, fn);
            });
        }
    }
};

namespace detail {

// Replacement without validation; callers must hold a site emitted by the
// scanner for the same pairing.
inline Pairing apply_site_unchecked(const Pairing& P, const SwitchingSite& site) {
    const auto& rep = replacement_for(site.kind);
    const auto& to = site.direction == SwitchDirection::forward ? rep.added : rep.removed;
    std::vector<int> mate = P.mates();
    for (const auto& [a, b] : to) {
        const int pa = site.points[static_cast<std::size_t>(a - 1)];
        const int pb = site.points[static_cast<std::size_t>(b - 1)];
        mate[static_cast<std::size_t>(pa)] = pb;
        mate[static_cast<std::size_t>(pb)] = pa;
    }
    return Pairing(P.layout_ptr(), std::move(mate));
}

}  // namespace detail

template <class Fn>
inline void for_each_site(const Pairing& P, SwitchingKind kind, SwitchDirection dir, Fn&& fn) {
    SwitchingScanner(P).for_each_site(kind, dir, std::forward<Fn>(fn));
}

inline std::vector<SwitchingSite> find_sites(const Pairing& P, SwitchingKind kind,
                                             SwitchDirection dir = SwitchDirection::forward) {
    std::vector<SwitchingSite> out;
    for_each_site(P, kind, dir, [&](const SwitchingSite& s) { out.push_back(s); });
    return out;
}

inline long long count_sites(const Pairing& P, SwitchingKind kind,
                             SwitchDirection dir = SwitchDirection::forward) {
    return SwitchingScanner(P).count_sites(kind, dir);
}

// Applies a switching at a site. The site must satisfy the kind's pattern
// (pairs present, co-bucket labels, distinct vertices) and produce exactly
// the kind's census delta; sites from find_sites always do.
inline Pairing apply_switching(const Pairing& P, const SwitchingSite& site) {
    const int k = site_point_count(site.kind);
    if (site.point_count != k) throw std::invalid_argument("apply_switching: wrong point count");
    std::vector<char> seen(static_cast<std::size_t>(P.points()), 0);
    for (int i = 0; i < k; ++i) {
        const int p = site.points[static_cast<std::size_t>(i)];
        if (p < 0 || p >= P.points() || seen[static_cast<std::size_t>(p)])
            throw std::invalid_argument("apply_switching: bad site points");
        seen[static_cast<std::size_t>(p)] = 1;
    }
    for (const auto& [a, b] : detail::cobucket_labels(site.kind))
        if (P.vertex_of(site.points[static_cast<std::size_t>(a - 1)]) !=
            P.vertex_of(site.points[static_cast<std::size_t>(b - 1)]))
            throw std::invalid_argument("apply_switching: co-bucket labels violated");
    const auto& labels = detail::distinct_labels(site.kind);
    for (std::size_t i = 0; i < labels.size(); ++i)
        for (std::size_t j = i + 1; j < labels.size(); ++j)
            if (P.vertex_of(site.points[static_cast<std::size_t>(labels[i] - 1)]) ==
                P.vertex_of(site.points[static_cast<std::size_t>(labels[j] - 1)]))
                throw std::invalid_argument("apply_switching: site vertices not distinct");

    const auto& rep = detail::replacement_for(site.kind);
    const auto& from = site.direction == SwitchDirection::forward ? rep.removed : rep.added;
    const auto& to = site.direction == SwitchDirection::forward ? rep.added : rep.removed;
    std::vector<std::pair<int, int>> removed, added;
    for (const auto& [a, b] : from)
        removed.emplace_back(site.points[static_cast<std::size_t>(a - 1)],
                             site.points[static_cast<std::size_t>(b - 1)]);
    for (const auto& [a, b] : to)
        added.emplace_back(site.points[static_cast<std::size_t>(a - 1)],
                           site.points[static_cast<std::size_t>(b - 1)]);
    for (const auto& [a, b] : removed)
        if (P.mate(a) != b) throw std::invalid_argument("apply_switching: site pairs not present");

    SwitchingScanner scanner(P);
    if (!(scanner.delta_of(removed, added) == detail::expected_delta(site.kind, site.direction)))
        throw std::invalid_argument("apply_switching: census delta does not match the kind");

    std::vector<int> mate = P.mates();
    for (const auto& [a, b] : added) {
        mate[static_cast<std::size_t>(a)] = b;
        mate[static_cast<std::size_t>(b)] = a;
    }
    return Pairing(P.layout_ptr(), std::move(mate));
}

inline SwitchingSite inverse_site(const SwitchingSite& site) {
    SwitchingSite out = site;
    out.direction = site.direction == SwitchDirection::forward ? SwitchDirection::inverse
                                                               : SwitchDirection::forward;
    return out;
}

// Which classes a kind moves between.
inline bool valid_high_key(SwitchingKind kind, const ClassKey& key) {
    if (key.higher_defect) return false;
    switch (kind) {
        case SwitchingKind::L1:
        case SwitchingKind::L2: return key.l0 >= 1;
        case SwitchingKind::D1:
        case SwitchingKind::D2: return key.l0 == 0 && key.l1 >= 1;
        case SwitchingKind::D3:
        case SwitchingKind::D4: return key.l0 == 0 && key.l1 == 0 && key.l2 >= 1;
        default: return true;  // S-switchings fix the class
    }
}

inline ClassKey low_key_of(SwitchingKind kind, const ClassKey& high) {
    ClassKey low = high;
    switch (kind) {
        case SwitchingKind::L1:
        case SwitchingKind::L2: --low.l0; break;
        case SwitchingKind::D1:
        case SwitchingKind::D2: --low.l1; break;
        case SwitchingKind::D3:
        case SwitchingKind::D4: --low.l2; break;
        default: break;
    }
    return low;
}

struct DoubleCountReport {
    SwitchingKind kind = SwitchingKind::L1;
    ClassKey high, low;
    BigInt high_size = 0, low_size = 0;
    BigInt forward_sum = 0;  // sum of N(P) over the high class
    BigInt inverse_sum = 0;  // sum of N'(P') over the low class

    bool equal() const { return forward_sum == inverse_sum; }
};

// The bijective double-counting identity behind the class-ratio estimates:
// sum_{P in C_high} N(P) = sum_{P' in C_low} N'(P'), as exact integers.
inline DoubleCountReport verify_double_count(const DegreeSequence& ds, const Bipartition& bip,
                                             SwitchingKind kind, const ClassKey& high,
                                             const ClassKey& low, const ExactCountConfig& cfg = {}) {
    if (!valid_high_key(kind, high))
        throw std::invalid_argument("verify_double_count: class key shape does not fit the kind");
    if (!(low == low_key_of(kind, high)))
        throw std::invalid_argument("verify_double_count: classes are not adjacent for the kind");
    DoubleCountReport report;
    report.kind = kind;
    report.high = high;
    report.low = low;
    enumerate_pairings(
        ds, bip,
        [&](const Pairing& P) {
            const SwitchingScanner scanner(P);
            const ClassKey key = ClassKey::of(scanner.census());
            if (key == high) {
                ++report.high_size;
                report.forward_sum += scanner.count_sites(kind, SwitchDirection::forward);
            }
            if (key == low) {
                ++report.low_size;
                report.inverse_sum += scanner.count_sites(kind, SwitchDirection::inverse);
            }
        },
        cfg);
    return report;
}

struct SwitchingAudit {
    ClassTable table;
    // site-count sums keyed by (kind, class of the pairing)
    std::map<std::pair<SwitchingKind, ClassKey>, BigInt> forward_sums;
    std::map<std::pair<SwitchingKind, ClassKey>, BigInt> inverse_sums;
    long long round_trips = 0;
    long long round_trip_failures = 0;
    long long class_transition_failures = 0;  // applied site landed in the wrong class
};

// One enumeration pass collecting, for every kind, the labeled-site counts
// per class plus (optionally) a round-trip and class-transition check of
// every valid site.
inline SwitchingAudit audit_switchings(const DegreeSequence& ds, const Bipartition& bip,
                                       bool check_round_trips = true,
                                       const ExactCountConfig& cfg = {}) {
    SwitchingAudit audit;
    audit.table.total = enumerate_pairings(
        ds, bip,
        [&](const Pairing& P) {
            const SwitchingScanner scanner(P);
            const ClassKey key = ClassKey::of(scanner.census());
            ++audit.table.counts[key];
            for (const SwitchingKind kind : all_switching_kinds) {
                for (const SwitchDirection dir : {SwitchDirection::forward, SwitchDirection::inverse}) {
                    auto& sums = dir == SwitchDirection::forward ? audit.forward_sums : audit.inverse_sums;
                    BigInt& slot = sums[{kind, key}];
                    const DefectCensus want =
                        detail::shifted_census(scanner.census(), detail::expected_delta(kind, dir));
                    scanner.for_each_site(kind, dir, [&](const SwitchingSite& site) {
                        ++slot;
                        if (!check_round_trips) return;
                        const Pairing next = detail::apply_site_unchecked(P, site);
                        if (!(defect_census(next) == want)) ++audit.class_transition_failures;
                        ++audit.round_trips;
                        const Pairing back = detail::apply_site_unchecked(next, inverse_site(site));
                        if (!(back == P)) ++audit.round_trip_failures;
                    });
                }
            }
        },
        cfg);
    return audit;
}

}  // namespace bgraph
