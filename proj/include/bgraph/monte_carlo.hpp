#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <random>
#include <thread>
#include <vector>

#include "bgraph/exact_count.hpp"
#include "bgraph/formulas.hpp"
#include "bgraph/pairing.hpp"

namespace bgraph {

struct insufficient_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Estimate {
    double mean = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(trials)
    long long trials = 0;
    std::uint64_t seed = 0;
};

struct MonteCarloConfig {
    long long chunk_size = 8192;  // trials per deterministic RNG substream
    int threads = 0;              // 0: hardware concurrency
    bool check_identities = true; // verify the 2-path identities on defect-free samples
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

inline std::mt19937_64 chunk_rng(std::uint64_t seed, std::uint64_t chunk) {
    return std::mt19937_64(splitmix64(splitmix64(seed) + 0x632BE59BD9B4E019ull * (chunk + 1)));
}

// Runs `trials` samples split into fixed chunks with per-chunk RNG streams;
// results are merged in chunk order, so they do not depend on the thread
// count. Body: (Acc&, std::mt19937_64&, long long n_trials_in_chunk).
template <class Acc, class Body>
inline Acc run_chunked(long long trials, std::uint64_t seed, const MonteCarloConfig& cfg,
                       Body&& body) {
    if (trials < 1) throw std::invalid_argument("monte carlo: trials must be positive");
    const long long n_chunks = (trials + cfg.chunk_size - 1) / cfg.chunk_size;
    std::vector<Acc> parts(static_cast<std::size_t>(n_chunks));
    std::atomic<long long> next{0};
    const auto worker = [&]() {
        for (;;) {
            const long long c = next.fetch_add(1);
            if (c >= n_chunks) return;
            std::mt19937_64 rng =
                chunk_rng(seed, static_cast<std::uint64_t>(c));
            const long long lo = c * cfg.chunk_size;
            const long long n = std::min(cfg.chunk_size, trials - lo);
            body(parts[static_cast<std::size_t>(c)], rng, n);
        }
    };
    int n_threads = cfg.threads > 0 ? cfg.threads
                                    : static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(n_chunks)));
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    Acc total;
    for (const Acc& part : parts) total.merge(part);
    return total;
}

struct MomentSum {
    long double sum = 0.0L;
    long double sum_sq = 0.0L;

    void add(double x) {
        sum += x;
        sum_sq += static_cast<long double>(x) * x;
    }
    void merge(const MomentSum& o) {
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
};

inline Estimate to_estimate(const MomentSum& m, long long n, std::uint64_t seed) {
    Estimate e;
    e.trials = n;
    e.seed = seed;
    if (n <= 0) return e;
    e.mean = static_cast<double>(m.sum / n);
    if (n >= 2) {
        const long double var = (m.sum_sq - m.sum * m.sum / n) / (n - 1);
        e.stderr_ = static_cast<double>(std::sqrt(std::max(var, 0.0L) / n));
    }
    return e;
}

// A1 + 2 A2 + A3 = M2(R) and A4 = M2(L), exact on defect-free pairings.
inline bool two_path_identity_holds(const Pairing& P, long long m2r, long long m2l) {
    const TwoPathCensus c = two_path_census(P);
    return c.a1 + 2 * c.a2 + c.a3 == m2r && c.a4 == m2l;
}

}  // namespace detail

struct PSimpleReport {
    Estimate estimate;
    double predicted = 0.0;  // e^{-mu0 - mu1 - mu2}
    double mu0 = 0.0, mu1 = 0.0, mu2 = 0.0;
    double error_hint = 0.0;  // d_max^4 / M
    long long identity_violations = 0;
};

inline PSimpleReport estimate_p_simple(const DegreeSequence& ds, const Bipartition& bip,
                                       long long trials, std::uint64_t seed,
                                       const MonteCarloConfig& cfg = {}) {
    if (feasibility(ds, bip) != Feasibility::feasible)
        throw infeasible_error("estimate_p_simple: infeasible instance");
    const LayoutPtr layout = make_layout(ds, bip);
    const long long m2r = moments_right(ds, bip).m2;
    const long long m2l = moments_left(ds, bip).m2;

    struct Acc {
        long long n = 0;
        long long simple = 0;
        long long violations = 0;
        void merge(const Acc& o) {
            n += o.n;
            simple += o.simple;
            violations += o.violations;
        }
    };
    const Acc acc = detail::run_chunked<Acc>(
        trials, seed, cfg, [&](Acc& a, std::mt19937_64& rng, long long n) {
            for (long long i = 0; i < n; ++i) {
                const Pairing P = sample_restricted(layout, rng);
                const bool simple = is_simple(P);
                a.simple += simple;
                ++a.n;
                if (simple && cfg.check_identities &&
                    !detail::two_path_identity_holds(P, m2r, m2l))
                    ++a.violations;
            }
        });

    PSimpleReport report;
    const double p = static_cast<double>(acc.simple) / static_cast<double>(acc.n);
    report.estimate.mean = p;
    report.estimate.stderr_ = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(acc.n));
    report.estimate.trials = acc.n;
    report.estimate.seed = seed;
    const MuParameters mu = mu_parameters(ds, bip);
    report.mu0 = to_double(mu.mu0);
    report.mu1 = to_double(mu.mu1);
    report.mu2 = to_double(mu.mu2);
    report.predicted = std::exp(-to_double(mu.mu0 + mu.mu1 + mu.mu2));
    report.error_hint = ds.total_degree() > 0
                            ? std::pow(ds.max_degree(), 4) / static_cast<double>(ds.total_degree())
                            : 0.0;
    report.identity_violations = acc.violations;
    return report;
}

struct DefectMeansReport {
    Estimate loops, mixed_double_pairs, pure_double_pairs;
    Estimate mixed_triple_pairs, pure_triple_pairs, double_loops;
    double mu0 = 0.0, mu1 = 0.0, mu2 = 0.0;  // predicted means of B0, B1, B2
    double triple_scale = 0.0;               // O(d_max^4 / M) scale for T1, T2
    double double_loop_scale = 0.0;          // O(d_max^3 / M) scale for I
    long long identity_violations = 0;
};

inline DefectMeansReport estimate_defect_means(const DegreeSequence& ds, const Bipartition& bip,
                                               long long trials, std::uint64_t seed,
                                               const MonteCarloConfig& cfg = {}) {
    if (feasibility(ds, bip) != Feasibility::feasible)
        throw infeasible_error("estimate_defect_means: infeasible instance");
    const LayoutPtr layout = make_layout(ds, bip);
    const long long m2r = moments_right(ds, bip).m2;
    const long long m2l = moments_left(ds, bip).m2;

    struct Acc {
        long long n = 0;
        detail::MomentSum b0, b1, b2, t1, t2, dl;
        long long violations = 0;
        void merge(const Acc& o) {
            n += o.n;
            b0.merge(o.b0);
            b1.merge(o.b1);
            b2.merge(o.b2);
            t1.merge(o.t1);
            t2.merge(o.t2);
            dl.merge(o.dl);
            violations += o.violations;
        }
    };
    const Acc acc = detail::run_chunked<Acc>(
        trials, seed, cfg, [&](Acc& a, std::mt19937_64& rng, long long n) {
            for (long long i = 0; i < n; ++i) {
                const Pairing P = sample_restricted(layout, rng);
                const DefectCensus c = defect_census(P);
                ++a.n;
                a.b0.add(static_cast<double>(c.loops));
                a.b1.add(static_cast<double>(c.mixed_double_pairs));
                a.b2.add(static_cast<double>(c.pure_double_pairs));
                a.t1.add(static_cast<double>(c.mixed_triple_pairs));
                a.t2.add(static_cast<double>(c.pure_triple_pairs));
                a.dl.add(static_cast<double>(c.double_loops));
                if (c.simple() && cfg.check_identities &&
                    !detail::two_path_identity_holds(P, m2r, m2l))
                    ++a.violations;
            }
        });

    DefectMeansReport report;
    report.loops = detail::to_estimate(acc.b0, acc.n, seed);
    report.mixed_double_pairs = detail::to_estimate(acc.b1, acc.n, seed);
    report.pure_double_pairs = detail::to_estimate(acc.b2, acc.n, seed);
    report.mixed_triple_pairs = detail::to_estimate(acc.t1, acc.n, seed);
    report.pure_triple_pairs = detail::to_estimate(acc.t2, acc.n, seed);
    report.double_loops = detail::to_estimate(acc.dl, acc.n, seed);
    const MuParameters mu = mu_parameters(ds, bip);
    report.mu0 = to_double(mu.mu0);
    report.mu1 = to_double(mu.mu1);
    report.mu2 = to_double(mu.mu2);
    const double m = static_cast<double>(ds.total_degree());
    if (m > 0) {
        report.triple_scale = std::pow(ds.max_degree(), 4) / m;
        report.double_loop_scale = std::pow(ds.max_degree(), 3) / m;
    }
    report.identity_violations = acc.violations;
    return report;
}

struct ClassConditionalReport {
    Estimate a1, a2, a3, a4;   // conditional means of A_1..A_4
    Estimate b1, b3;           // conditional means of A_1^2, A_3^2
    long long accepted = 0;
    long long trials = 0;
    // Reference value: a1 against (M1(R)-M1(L))^2 M2(R)/M1(R)^2 when
    // M1(L) <= M/4, a3 against M1(L)^2 M2(R)/M1(R)^2 otherwise.
    bool compare_a1 = true;
    double predicted = 0.0;
    long long identity_violations = 0;
};

inline ClassConditionalReport estimate_class_conditional(const DegreeSequence& ds,
                                                         const Bipartition& bip,
                                                         const ClassKey& key, long long trials,
                                                         std::uint64_t seed,
                                                         const MonteCarloConfig& cfg = {}) {
    if (feasibility(ds, bip) != Feasibility::feasible)
        throw infeasible_error("estimate_class_conditional: infeasible instance");
    const LayoutPtr layout = make_layout(ds, bip);
    const long long m2r = moments_right(ds, bip).m2;
    const long long m2l = moments_left(ds, bip).m2;

    struct Acc {
        long long n = 0;
        long long accepted = 0;
        detail::MomentSum a1, a2, a3, a4, b1, b3;
        long long violations = 0;
        void merge(const Acc& o) {
            n += o.n;
            accepted += o.accepted;
            a1.merge(o.a1);
            a2.merge(o.a2);
            a3.merge(o.a3);
            a4.merge(o.a4);
            b1.merge(o.b1);
            b3.merge(o.b3);
            violations += o.violations;
        }
    };
    const Acc acc = detail::run_chunked<Acc>(
        trials, seed, cfg, [&](Acc& a, std::mt19937_64& rng, long long n) {
            for (long long i = 0; i < n; ++i) {
                const Pairing P = sample_restricted(layout, rng);
                ++a.n;
                const DefectCensus c = defect_census(P);
                if (!(ClassKey::of(c) == key)) continue;
                ++a.accepted;
                const TwoPathCensus tp = two_path_census(P);
                a.a1.add(static_cast<double>(tp.a1));
                a.a2.add(static_cast<double>(tp.a2));
                a.a3.add(static_cast<double>(tp.a3));
                a.a4.add(static_cast<double>(tp.a4));
                a.b1.add(static_cast<double>(tp.a1) * static_cast<double>(tp.a1));
                a.b3.add(static_cast<double>(tp.a3) * static_cast<double>(tp.a3));
                if (c.simple() && cfg.check_identities &&
                    (tp.a1 + 2 * tp.a2 + tp.a3 != m2r || tp.a4 != m2l))
                    ++a.violations;
            }
        });
    if (acc.accepted == 0)
        throw insufficient_data_error("estimate_class_conditional: class never hit");

    ClassConditionalReport report;
    report.a1 = detail::to_estimate(acc.a1, acc.accepted, seed);
    report.a2 = detail::to_estimate(acc.a2, acc.accepted, seed);
    report.a3 = detail::to_estimate(acc.a3, acc.accepted, seed);
    report.a4 = detail::to_estimate(acc.a4, acc.accepted, seed);
    report.b1 = detail::to_estimate(acc.b1, acc.accepted, seed);
    report.b3 = detail::to_estimate(acc.b3, acc.accepted, seed);
    report.accepted = acc.accepted;
    report.trials = acc.n;
    const Moments ml = moments_left(ds, bip);
    const Moments mr = moments_right(ds, bip);
    report.compare_a1 = 4 * ml.m1 <= ds.total_degree();
    const double m1r = static_cast<double>(mr.m1);
    if (report.compare_a1)
        report.predicted = static_cast<double>(mr.m1 - ml.m1) * static_cast<double>(mr.m1 - ml.m1) *
                           static_cast<double>(mr.m2) / (m1r * m1r);
    else
        report.predicted = static_cast<double>(ml.m1) * static_cast<double>(ml.m1) *
                           static_cast<double>(mr.m2) / (m1r * m1r);
    report.identity_violations = acc.violations;
    return report;
}

}  // namespace bgraph
