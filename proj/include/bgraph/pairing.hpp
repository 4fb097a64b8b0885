#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bgraph/degree_sequence.hpp"

namespace bgraph {

// Unbiased uniform draw from [0, n) off a 64-bit generator, by masked
// rejection. The draw sequence depends only on the generator stream, never
// on the standard library's distribution internals.
template <class Rng>
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
    if (n <= 1) return 0;
    std::uint64_t mask = n - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    for (;;) {
        const std::uint64_t x = rng() & mask;
        if (x < n) return x;
    }
}

// Immutable point layout of the configuration model: vertex i owns d_i
// consecutive points. Shared by all pairings over one instance.
class PairingLayout {
public:
    PairingLayout(DegreeSequence ds, Bipartition bip) : ds_(std::move(ds)), bip_(std::move(bip)) {
        if (bip_.n() != ds_.n()) throw std::invalid_argument("PairingLayout: bipartition size mismatch");
        offset_.resize(static_cast<std::size_t>(ds_.n()) + 1, 0);
        for (int v = 0; v < ds_.n(); ++v)
            offset_[static_cast<std::size_t>(v) + 1] = offset_[static_cast<std::size_t>(v)] + ds_.degree(v);
        vertex_of_.resize(static_cast<std::size_t>(ds_.total_degree()));
        for (int v = 0; v < ds_.n(); ++v)
            for (int p = offset_[static_cast<std::size_t>(v)]; p < offset_[static_cast<std::size_t>(v) + 1]; ++p) {
                vertex_of_[static_cast<std::size_t>(p)] = v;
                (bip_.in_left(v) ? left_points_ : right_points_).push_back(p);
            }
    }

    const DegreeSequence& degree_sequence() const { return ds_; }
    const Bipartition& bipartition() const { return bip_; }
    int n() const { return ds_.n(); }
    int points() const { return static_cast<int>(vertex_of_.size()); }  // M
    int vertex_of(int p) const { return vertex_of_[static_cast<std::size_t>(p)]; }
    bool point_in_left(int p) const { return bip_.in_left(vertex_of(p)); }
    int first_point(int v) const { return offset_[static_cast<std::size_t>(v)]; }
    const std::vector<int>& left_points() const { return left_points_; }
    const std::vector<int>& right_points() const { return right_points_; }

private:
    DegreeSequence ds_;
    Bipartition bip_;
    std::vector<int> offset_;
    std::vector<int> vertex_of_;
    std::vector<int> left_points_;
    std::vector<int> right_points_;
};

using LayoutPtr = std::shared_ptr<const PairingLayout>;

inline LayoutPtr make_layout(const DegreeSequence& ds, const Bipartition& bip) {
    return std::make_shared<PairingLayout>(ds, bip);
}

// A restricted pairing: fixed-point-free involution on the points with no
// pair inside the L-buckets. Immutable after construction.
class Pairing {
public:
    Pairing(LayoutPtr layout, std::vector<int> mate) : layout_(std::move(layout)), mate_(std::move(mate)) {
        if (static_cast<int>(mate_.size()) != layout_->points())
            throw std::invalid_argument("Pairing: mate array size mismatch");
        for (int p = 0; p < layout_->points(); ++p) {
            const int q = mate_[static_cast<std::size_t>(p)];
            if (q < 0 || q >= layout_->points() || q == p || mate_[static_cast<std::size_t>(q)] != p)
                throw std::invalid_argument("Pairing: mate array is not a fixed-point-free involution");
            if (layout_->point_in_left(p) && layout_->point_in_left(q))
                throw std::invalid_argument("Pairing: pair inside L buckets");
        }
    }

    const PairingLayout& layout() const { return *layout_; }
    const LayoutPtr& layout_ptr() const { return layout_; }
    int points() const { return layout_->points(); }
    int mate(int p) const { return mate_[static_cast<std::size_t>(p)]; }
    const std::vector<int>& mates() const { return mate_; }
    int vertex_of(int p) const { return layout_->vertex_of(p); }

    bool operator==(const Pairing& o) const { return mate_ == o.mate_; }

private:
    LayoutPtr layout_;
    std::vector<int> mate_;
};

// Uniform sample from M(L,R,d): the L-points take a uniform ordered
// selection of distinct R-points, the leftover R-points get a uniform
// perfect matching. Each restricted pairing arises in exactly one way.
// Draw schedule: one bounded-uniform draw per L-point, then one per pure
// pair after the first; each bounded draw consumes 64-bit generator words
// by masked rejection. Fixed seed implies a bit-identical pairing.
template <class Rng>
inline Pairing sample_restricted(const LayoutPtr& layout, Rng& rng) {
    const auto& ds = layout->degree_sequence();
    const auto& bip = layout->bipartition();
    if (feasibility(ds, bip) != Feasibility::feasible)
        throw infeasible_error("sample_restricted: infeasible instance");
    std::vector<int> mate(static_cast<std::size_t>(layout->points()), -1);
    std::vector<int> pool = layout->right_points();
    const std::size_t n_left = layout->left_points().size();
    for (std::size_t i = 0; i < n_left; ++i) {
        const std::size_t j = i + uniform_below(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
        const int lp = layout->left_points()[i];
        mate[static_cast<std::size_t>(lp)] = pool[i];
        mate[static_cast<std::size_t>(pool[i])] = lp;
    }
    std::vector<int> rest(pool.begin() + static_cast<std::ptrdiff_t>(n_left), pool.end());
    while (!rest.empty()) {
        const int p = rest.front();
        const std::size_t j = 1 + uniform_below(rng, rest.size() - 1);
        const int q = rest[j];
        mate[static_cast<std::size_t>(p)] = q;
        mate[static_cast<std::size_t>(q)] = p;
        rest[j] = rest.back();
        rest.pop_back();
        std::swap(rest.front(), rest.back());
        rest.pop_back();
    }
    return Pairing(layout, std::move(mate));
}

// Counts of the ways a pairing fails to project to a simple B-graph.
struct DefectCensus {
    long long loops = 0;                // B0
    long long mixed_double_pairs = 0;   // B1
    long long pure_double_pairs = 0;    // B2
    long long mixed_triple_pairs = 0;   // T1
    long long pure_triple_pairs = 0;    // T2
    long long double_loops = 0;         // I: unordered loop pairs sharing a vertex
    long long heavy_multiplicities = 0; // vertex pairs joined by >= 4 pairs

    bool simple() const {
        return loops == 0 && mixed_double_pairs == 0 && pure_double_pairs == 0 &&
               mixed_triple_pairs == 0 && pure_triple_pairs == 0 && double_loops == 0 &&
               heavy_multiplicities == 0;
    }
    bool higher_defect() const {
        return mixed_triple_pairs != 0 || pure_triple_pairs != 0 || double_loops != 0 ||
               heavy_multiplicities != 0;
    }
    bool operator==(const DefectCensus&) const = default;
};

inline DefectCensus defect_census(const Pairing& P) {
    const auto& layout = P.layout();
    DefectCensus out;
    std::vector<int> loops_at(static_cast<std::size_t>(layout.n()), 0);
    std::vector<std::uint64_t> cross;
    cross.reserve(static_cast<std::size_t>(P.points()) / 2);
    for (int p = 0; p < P.points(); ++p) {
        const int q = P.mate(p);
        if (q < p) continue;
        const int u = layout.vertex_of(p);
        const int v = layout.vertex_of(q);
        if (u == v) {
            ++loops_at[static_cast<std::size_t>(u)];
        } else {
            const std::uint64_t a = static_cast<std::uint64_t>(std::min(u, v));
            const std::uint64_t b = static_cast<std::uint64_t>(std::max(u, v));
            cross.push_back(a * static_cast<std::uint64_t>(layout.n()) + b);
        }
    }
    for (int v = 0; v < layout.n(); ++v) {
        const long long l = loops_at[static_cast<std::size_t>(v)];
        out.loops += l;
        out.double_loops += l * (l - 1) / 2;
    }
    std::sort(cross.begin(), cross.end());
    const auto& bip = layout.bipartition();
    for (std::size_t i = 0; i < cross.size();) {
        std::size_t j = i;
        while (j < cross.size() && cross[j] == cross[i]) ++j;
        const long long mult = static_cast<long long>(j - i);
        if (mult >= 2) {
            const int u = static_cast<int>(cross[i] / static_cast<std::uint64_t>(layout.n()));
            const int v = static_cast<int>(cross[i] % static_cast<std::uint64_t>(layout.n()));
            const bool mixed = bip.in_left(u) || bip.in_left(v);
            if (mult == 2)
                ++(mixed ? out.mixed_double_pairs : out.pure_double_pairs);
            else if (mult == 3)
                ++(mixed ? out.mixed_triple_pairs : out.pure_triple_pairs);
            else
                ++out.heavy_multiplicities;
        }
        i = j;
    }
    return out;
}

inline bool is_simple(const Pairing& P) { return defect_census(P).simple(); }

// Projected B-multigraph: cross-edge multiplicities plus per-vertex loops.
struct Multigraph {
    int n = 0;
    std::map<std::pair<int, int>, int> edge_mult;  // key (u, v) with u < v
    std::vector<int> loops;

    bool simple() const {
        for (int l : loops)
            if (l != 0) return false;
        for (const auto& [e, m] : edge_mult)
            if (m > 1) return false;
        return true;
    }
};

inline Multigraph project(const Pairing& P) {
    Multigraph g;
    g.n = P.layout().n();
    g.loops.assign(static_cast<std::size_t>(g.n), 0);
    for (int p = 0; p < P.points(); ++p) {
        const int q = P.mate(p);
        if (q < p) continue;
        const int u = P.vertex_of(p);
        const int v = P.vertex_of(q);
        if (u == v)
            ++g.loops[static_cast<std::size_t>(u)];
        else
            ++g.edge_mult[std::minmax(u, v)];
    }
    return g;
}

// One directed 2-path ((u1, q1), (q2, u2')): q1 and q2 share the middle
// bucket, the three end vertices are distinct.
struct DirectedPath {
    int u1, q1, q2, u2p;
    int first_vertex, mid_vertex, last_vertex;
    int type;     // 1..4 per the L/R pattern; 0 for the untyped reverse case
    bool simple;  // neither pair in a double pair, no loop at the middle
};

namespace detail {

struct PairMultiplicity {
    std::unordered_map<std::uint64_t, int> cross;
    std::vector<int> loops_at;
    int n = 0;

    explicit PairMultiplicity(const Pairing& P) : n(P.layout().n()) {
        loops_at.assign(static_cast<std::size_t>(n), 0);
        cross.reserve(static_cast<std::size_t>(P.points()));
        for (int p = 0; p < P.points(); ++p) {
            const int q = P.mate(p);
            if (q < p) continue;
            const int u = P.vertex_of(p);
            const int v = P.vertex_of(q);
            if (u == v)
                ++loops_at[static_cast<std::size_t>(u)];
            else
                ++cross[key(u, v)];
        }
    }

    std::uint64_t key(int u, int v) const {
        const std::uint64_t a = static_cast<std::uint64_t>(std::min(u, v));
        const std::uint64_t b = static_cast<std::uint64_t>(std::max(u, v));
        return a * static_cast<std::uint64_t>(n) + b;
    }

    int mult(int u, int v) const {
        const auto it = cross.find(key(u, v));
        return it == cross.end() ? 0 : it->second;
    }
};

// Walks every directed 2-path of the pairing once.
template <class Fn>
inline void for_each_directed_path(const Pairing& P, const PairMultiplicity& pm, Fn&& fn) {
    const auto& layout = P.layout();
    const auto& bip = layout.bipartition();
    for (int v = 0; v < layout.n(); ++v) {
        const int lo = layout.first_point(v);
        const int hi = lo + layout.degree_sequence().degree(v);
        for (int q1 = lo; q1 < hi; ++q1) {
            const int u1 = P.mate(q1);
            const int w1 = layout.vertex_of(u1);
            if (w1 == v) continue;
            for (int q2 = lo; q2 < hi; ++q2) {
                if (q2 == q1) continue;
                const int u2p = P.mate(q2);
                const int w2 = layout.vertex_of(u2p);
                if (w2 == v || w2 == w1) continue;
                DirectedPath path;
                path.u1 = u1;
                path.q1 = q1;
                path.q2 = q2;
                path.u2p = u2p;
                path.first_vertex = w1;
                path.mid_vertex = v;
                path.last_vertex = w2;
                path.simple = pm.mult(w1, v) == 1 && pm.mult(v, w2) == 1 &&
                              pm.loops_at[static_cast<std::size_t>(v)] == 0;
                if (bip.in_left(v))
                    path.type = 4;
                else if (bip.in_left(w1))
                    path.type = bip.in_left(w2) ? 3 : 2;
                else
                    path.type = bip.in_left(w2) ? 0 : 1;
                fn(path);
            }
        }
    }
}

}  // namespace detail

// Simple directed 2-path counts by type, plus the vertex-disjoint ordered
// pair counts used by the second-moment switchings.
struct TwoPathCensus {
    long long a1 = 0, a2 = 0, a3 = 0, a4 = 0;      // A_1..A_4
    long long x1 = 0, x2 = 0, x3 = 0, x4 = 0, x5 = 0;  // signatures (1,1),(3,3),(1,2),(1,3),(2,3)
};

inline TwoPathCensus two_path_census(const Pairing& P, bool with_disjoint_pairs = false) {
    TwoPathCensus out;
    const detail::PairMultiplicity pm(P);
    std::vector<DirectedPath> typed;
    detail::for_each_directed_path(P, pm, [&](const DirectedPath& path) {
        if (!path.simple) return;
        switch (path.type) {
            case 1: ++out.a1; break;
            case 2: ++out.a2; break;
            case 3: ++out.a3; break;
            case 4: ++out.a4; break;
            default: break;
        }
        if (with_disjoint_pairs && path.type >= 1 && path.type <= 3) typed.push_back(path);
    });
    if (!with_disjoint_pairs) return out;
    const auto disjoint = [](const DirectedPath& a, const DirectedPath& b) {
        return a.first_vertex != b.first_vertex && a.first_vertex != b.mid_vertex &&
               a.first_vertex != b.last_vertex && a.mid_vertex != b.first_vertex &&
               a.mid_vertex != b.mid_vertex && a.mid_vertex != b.last_vertex &&
               a.last_vertex != b.first_vertex && a.last_vertex != b.mid_vertex &&
               a.last_vertex != b.last_vertex;
    };
    for (const auto& a : typed)
        for (const auto& b : typed) {
            if (!disjoint(a, b)) continue;
            if (a.type == 1 && b.type == 1) ++out.x1;
            if (a.type == 3 && b.type == 3) ++out.x2;
            if (a.type == 1 && b.type == 2) ++out.x3;
            if (a.type == 1 && b.type == 3) ++out.x4;
            if (a.type == 2 && b.type == 3) ++out.x5;
        }
    return out;
}

// Text form `vertex_degrees; mate-array`, e.g. "1 1 2; 2 3 0 1".
inline std::string to_text(const Pairing& P) {
    std::ostringstream out;
    const auto& d = P.layout().degree_sequence().degrees();
    for (std::size_t i = 0; i < d.size(); ++i) out << (i ? " " : "") << d[i];
    out << ";";
    for (int p = 0; p < P.points(); ++p) out << " " << P.mate(p);
    return out.str();
}

inline Pairing pairing_from_text(const std::string& text, const std::vector<int>& left) {
    const std::size_t semi = text.find(';');
    if (semi == std::string::npos)
        throw std::invalid_argument("pairing_from_text: missing ';' separator");
    std::istringstream dhead(text.substr(0, semi));
    std::vector<int> degrees;
    for (int x; dhead >> x;) degrees.push_back(x);
    std::istringstream mhead(text.substr(semi + 1));
    std::vector<int> mate;
    for (int x; mhead >> x;) mate.push_back(x);
    const DegreeSequence ds(degrees);
    const Bipartition bip(ds.n(), left);
    return Pairing(make_layout(ds, bip), std::move(mate));
}

}  // namespace bgraph
