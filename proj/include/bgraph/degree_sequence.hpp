#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bgraph/numeric.hpp"

namespace bgraph {

struct infeasible_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct size_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degree vector with cached total degree M and maximum degree. Vertices are
// 0-based throughout the library.
class DegreeSequence {
public:
    DegreeSequence() = default;

    explicit DegreeSequence(std::vector<int> degrees) : degrees_(std::move(degrees)) {
        for (int d : degrees_) {
            if (d < 0) throw std::invalid_argument("DegreeSequence: negative degree");
            total_ += d;
            max_ = std::max(max_, d);
        }
    }

    int n() const { return static_cast<int>(degrees_.size()); }
    int degree(int v) const { return degrees_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& degrees() const { return degrees_; }
    long long total_degree() const { return total_; }  // M
    int max_degree() const { return max_; }            // d_max

    bool operator==(const DegreeSequence& o) const { return degrees_ == o.degrees_; }

private:
    std::vector<int> degrees_;
    long long total_ = 0;
    int max_ = 0;
};

// Vertex bipartition (L, R); R is the complement of L.
class Bipartition {
public:
    Bipartition() = default;

    Bipartition(int n, std::vector<int> left) : n_(n), left_(std::move(left)) {
        if (n < 0) throw std::invalid_argument("Bipartition: negative vertex count");
        std::sort(left_.begin(), left_.end());
        in_left_.assign(static_cast<std::size_t>(n), 0);
        int prev = -1;
        for (int v : left_) {
            if (v < 0 || v >= n) throw std::invalid_argument("Bipartition: vertex index out of range");
            if (v == prev) throw std::invalid_argument("Bipartition: duplicate vertex in L");
            in_left_[static_cast<std::size_t>(v)] = 1;
            prev = v;
        }
    }

    static Bipartition empty_left(int n) { return Bipartition(n, {}); }

    int n() const { return n_; }
    const std::vector<int>& left() const { return left_; }
    std::vector<int> right() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(n_) - left_.size());
        for (int v = 0; v < n_; ++v)
            if (!in_left_[static_cast<std::size_t>(v)]) out.push_back(v);
        return out;
    }
    bool in_left(int v) const { return in_left_.at(static_cast<std::size_t>(v)) != 0; }

private:
    int n_ = 0;
    std::vector<int> left_;
    std::vector<char> in_left_;
};

struct Moments {
    long long m1 = 0;  // M1(d, S)
    long long m2 = 0;  // M2(d, S)

    Moments operator+(const Moments& o) const { return {m1 + o.m1, m2 + o.m2}; }
    bool operator==(const Moments&) const = default;
};

inline Moments moments(const DegreeSequence& ds, std::span<const int> subset) {
    Moments out;
    std::set<int> seen;
    for (int v : subset) {
        if (v < 0 || v >= ds.n()) throw std::invalid_argument("moments: vertex index out of range");
        if (!seen.insert(v).second) throw std::invalid_argument("moments: duplicate vertex in subset");
        const long long d = ds.degree(v);
        out.m1 += d;
        out.m2 += d * (d - 1);
    }
    return out;
}

inline Moments moments_left(const DegreeSequence& ds, const Bipartition& bip) {
    return moments(ds, bip.left());
}

inline Moments moments_right(const DegreeSequence& ds, const Bipartition& bip) {
    Moments out;
    for (int v = 0; v < ds.n(); ++v) {
        if (bip.in_left(v)) continue;
        const long long d = ds.degree(v);
        out.m1 += d;
        out.m2 += d * (d - 1);
    }
    return out;
}

// mu(d) = M2(d) / 2M(d); 0 for the empty sequence.
inline Rational mu_single(const DegreeSequence& ds) {
    if (ds.total_degree() == 0) return Rational(0);
    long long m2 = 0;
    for (int d : ds.degrees()) m2 += static_cast<long long>(d) * (d - 1);
    return Rational(m2, 2 * ds.total_degree());
}

// Exponent parameters of the B-graph count formula; exact rationals.
struct MuParameters {
    Rational mu0;
    Rational mu1;
    Rational mu2;                 // always mu0^2
    long long pure_pair_count = 0;  // t = (M1(R) - M1(L)) / 2
};

inline MuParameters mu_parameters(const DegreeSequence& ds, const Bipartition& bip) {
    if (bip.n() != ds.n()) throw std::invalid_argument("mu_parameters: bipartition size mismatch");
    const Moments ml = moments_left(ds, bip);
    const Moments mr = moments_right(ds, bip);
    if (mr.m1 < ml.m1)
        throw infeasible_error("mu_parameters: M1(R) < M1(L)");
    MuParameters out;
    if (mr.m1 == 0) return out;  // empty instance: all parameters vanish
    const Rational denom = Rational(2) * mr.m1 * mr.m1;
    out.mu0 = Rational(mr.m1 - ml.m1) * mr.m2 / denom;
    out.mu1 = Rational(mr.m2) * ml.m2 / denom;
    out.mu2 = out.mu0 * out.mu0;
    out.pure_pair_count = (mr.m1 - ml.m1) / 2;
    return out;
}

enum class Feasibility { feasible, odd_total, odd_pure_count, m1_deficit };

inline const char* to_string(Feasibility f) {
    switch (f) {
        case Feasibility::feasible: return "feasible";
        case Feasibility::odd_total: return "odd_total";
        case Feasibility::odd_pure_count: return "odd_pure_count";
        case Feasibility::m1_deficit: return "m1_deficit";
    }
    return "?";
}

// Note that M1(R) - M1(L) = M - 2 M1(L), so the two parity obstructions
// coincide; the report prefers odd_pure_count when L is nonempty.
inline Feasibility feasibility(const DegreeSequence& ds, const Bipartition& bip) {
    if (bip.n() != ds.n()) throw std::invalid_argument("feasibility: bipartition size mismatch");
    const long long m1l = moments_left(ds, bip).m1;
    const long long m1r = ds.total_degree() - m1l;
    if (m1r < m1l) return Feasibility::m1_deficit;
    if ((m1r - m1l) % 2 != 0)
        return bip.left().empty() ? Feasibility::odd_total : Feasibility::odd_pure_count;
    return Feasibility::feasible;
}

// A target induced subgraph H on an ordered vertex subset S. Vertices in S
// and edge endpoints are indices into the host sequence; S need not be a
// prefix of [n].
class InducedSubgraphSpec {
public:
    InducedSubgraphSpec() = default;

    InducedSubgraphSpec(std::vector<int> vertices, std::vector<std::pair<int, int>> edges)
        : vertices_(std::move(vertices)), edges_(std::move(edges)) {
        std::set<int> in_s;
        for (int v : vertices_) {
            if (v < 0) throw std::invalid_argument("InducedSubgraphSpec: negative vertex");
            if (!in_s.insert(v).second)
                throw std::invalid_argument("InducedSubgraphSpec: duplicate vertex in S");
        }
        std::set<std::pair<int, int>> seen;
        h_degree_.assign(vertices_.size(), 0);
        for (auto& [u, v] : edges_) {
            if (u == v) throw std::invalid_argument("InducedSubgraphSpec: loop edge in H");
            if (!in_s.count(u) || !in_s.count(v))
                throw std::invalid_argument("InducedSubgraphSpec: edge endpoint outside S");
            auto key = std::minmax(u, v);
            if (!seen.insert(key).second)
                throw std::invalid_argument("InducedSubgraphSpec: parallel edge in H");
        }
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            for (auto& [u, v] : edges_)
                if (u == vertices_[i] || v == vertices_[i]) ++h_degree_[i];
        }
    }

    const std::vector<int>& vertices() const { return vertices_; }            // S
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }  // E(H)
    const std::vector<int>& h_degrees() const { return h_degree_; }           // k_i, in S order
    int s() const { return static_cast<int>(vertices_.size()); }
    long long h() const { return 2 * static_cast<long long>(edges_.size()); }

private:
    std::vector<int> vertices_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> h_degree_;
};

enum class ResidualStatus { ok, negative_degree, m1_deficit };

struct ResidualResult {
    ResidualStatus status = ResidualStatus::ok;
    std::optional<DegreeSequence> degrees;  // d', set only when status == ok

    bool feasible() const { return status == ResidualStatus::ok; }
};

// d'_i = d_i - k_i on S, d_i off S. Infeasible exactly in the
// zero-probability cases: some d'_i < 0, or M1(d', [n]\S) < M1(d', S).
inline ResidualResult residual(const DegreeSequence& ds, const InducedSubgraphSpec& spec) {
    std::vector<int> d = ds.degrees();
    for (std::size_t i = 0; i < spec.vertices().size(); ++i) {
        const int v = spec.vertices()[i];
        if (v >= ds.n()) throw std::invalid_argument("residual: S vertex out of range");
        d[static_cast<std::size_t>(v)] -= spec.h_degrees()[i];
        if (d[static_cast<std::size_t>(v)] < 0) return {ResidualStatus::negative_degree, std::nullopt};
    }
    long long m1_s = 0, m1_rest = 0;
    std::vector<char> in_s(d.size(), 0);
    for (int v : spec.vertices()) in_s[static_cast<std::size_t>(v)] = 1;
    for (std::size_t i = 0; i < d.size(); ++i) (in_s[i] ? m1_s : m1_rest) += d[i];
    if (m1_rest < m1_s) return {ResidualStatus::m1_deficit, std::nullopt};
    return {ResidualStatus::ok, DegreeSequence(std::move(d))};
}

}  // namespace bgraph
