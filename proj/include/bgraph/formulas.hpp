#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "bgraph/degree_sequence.hpp"
#include "bgraph/numeric.hpp"

namespace bgraph {

// Number of perfect matchings of m points: m! / (2^{m/2} (m/2)!).
inline BigInt u_pairings(long long m) {
    if (m < 0 || m % 2 != 0) throw std::invalid_argument("u_pairings: m must be even and nonnegative");
    BigInt out = 1;
    for (long long i = m - 1; i >= 1; i -= 2) out *= i;
    return out;
}

// Falling factorial [x]_k = x (x-1) ... (x-k+1); 1 when k = 0, 0 when k > x.
inline BigInt falling_factorial(long long x, long long k) {
    if (x < 0 || k < 0) throw std::invalid_argument("falling_factorial: negative argument");
    if (k > x) return 0;
    BigInt out = 1;
    for (long long i = 0; i < k; ++i) out *= (x - i);
    return out;
}

// |M(L,R,d)| = [M1(R)]_{M1(L)} U(M1(R) - M1(L)); 0 for infeasible instances.
inline BigInt count_restricted_pairings(const DegreeSequence& ds, const Bipartition& bip) {
    if (feasibility(ds, bip) != Feasibility::feasible) return 0;
    const long long m1l = moments_left(ds, bip).m1;
    const long long m1r = ds.total_degree() - m1l;
    return falling_factorial(m1r, m1l) * u_pairings(m1r - m1l);
}

// Log-space carrier for formula values; zero is representable exactly.
struct LogValue {
    double log = 0.0;
    bool zero = false;

    static LogValue from_log(double l) { return {l, false}; }
    static LogValue zero_value() { return {0.0, true}; }
    double value() const { return zero ? 0.0 : std::exp(log); }
    bool is_zero() const { return zero; }
};

enum class ZeroReason {
    none,
    odd_total,
    odd_pure_count,
    m1_deficit,
    residual_negative,
    residual_m1_deficit,
};

inline const char* to_string(ZeroReason r) {
    switch (r) {
        case ZeroReason::none: return "none";
        case ZeroReason::odd_total: return "odd_total";
        case ZeroReason::odd_pure_count: return "odd_pure_count";
        case ZeroReason::m1_deficit: return "m1_deficit";
        case ZeroReason::residual_negative: return "residual_negative";
        case ZeroReason::residual_m1_deficit: return "residual_m1_deficit";
    }
    return "?";
}

struct ExponentTerms {
    std::optional<double> mu0, mu1, mu2;  // B-graph form, exp(-mu0-mu1-mu2)
    std::optional<double> mu, mu_squared; // plain form, exp(-mu-mu^2)
    std::optional<double> f;              // independent-set exponent f(d, delta)
};

struct FormulaOutput {
    LogValue point = LogValue::zero_value();
    ExponentTerms exponent_terms;
    double error_hint = 0.0;  // dominant relative-error scale, not a correction
    ZeroReason reason = ZeroReason::none;
    bool regime_warning = false;  // asymptotic hypotheses clearly violated

    // Filled only by independent_set_probability.
    std::optional<LogValue> simplified;
    bool simplified_guard_ok = true;
};

struct FormulaConfig {
    long long exact_prefactor_limit = 10000;  // use exact integers while M <= this
    double stirling_guard = 50.0;             // flag the simplified form when d(n-2s) below this
};

namespace detail {

// log( m1r! / (2^t t! prod d_i!) ), the matching prefactor shared by the
// graph-count and B-graph-count formulas.
inline double log_matching_prefactor(long long m1r, long long t, const std::vector<int>& degrees,
                                     long long m_total, const FormulaConfig& cfg) {
    if (m_total <= cfg.exact_prefactor_limit) {
        BigInt den = pow2_big(t) * factorial_big(t);
        for (int d : degrees) den *= factorial_big(d);
        return log_big(factorial_big(m1r)) - log_big(den);
    }
    double out = log_factorial(m1r) - static_cast<double>(t) * M_LN2 - log_factorial(t);
    for (int d : degrees) out -= log_factorial(d);
    return out;
}

inline double log_falling_factorial(long long x, long long k) {
    return log_factorial(x) - log_factorial(x - k);
}

inline double error_scale(int d_max, long long m) {
    if (m <= 0) return 0.0;
    const double d = d_max;
    return d * d * d * d / static_cast<double>(m);
}

}  // namespace detail

// Asymptotic number of graphs with the given degree sequence.
inline FormulaOutput g_asymptotic(const DegreeSequence& ds, const FormulaConfig& cfg = {}) {
    FormulaOutput out;
    const long long m = ds.total_degree();
    const Rational mu = mu_single(ds);
    out.exponent_terms.mu = to_double(mu);
    out.exponent_terms.mu_squared = to_double(mu * mu);
    out.error_hint = detail::error_scale(ds.max_degree(), m);
    if (m % 2 != 0) {
        out.reason = ZeroReason::odd_total;
        return out;
    }
    const double prefactor = detail::log_matching_prefactor(m, m / 2, ds.degrees(), m, cfg);
    const double exponent = to_double(mu + mu * mu);
    out.point = LogValue::from_log(prefactor - exponent);
    return out;
}

// Asymptotic B-graph count g(L, R, d).
inline FormulaOutput g_bgraph_asymptotic(const DegreeSequence& ds, const Bipartition& bip,
                                         const FormulaConfig& cfg = {}) {
    FormulaOutput out;
    out.error_hint = detail::error_scale(ds.max_degree(), ds.total_degree());
    switch (feasibility(ds, bip)) {
        case Feasibility::odd_total: out.reason = ZeroReason::odd_total; return out;
        case Feasibility::odd_pure_count: out.reason = ZeroReason::odd_pure_count; return out;
        case Feasibility::m1_deficit: out.reason = ZeroReason::m1_deficit; return out;
        case Feasibility::feasible: break;
    }
    const MuParameters mu = mu_parameters(ds, bip);
    out.exponent_terms.mu0 = to_double(mu.mu0);
    out.exponent_terms.mu1 = to_double(mu.mu1);
    out.exponent_terms.mu2 = to_double(mu.mu2);
    const long long m = ds.total_degree();
    const long long m1r = m - moments_left(ds, bip).m1;
    const double prefactor =
        detail::log_matching_prefactor(m1r, mu.pure_pair_count, ds.degrees(), m, cfg);
    const double exponent = to_double(mu.mu0 + mu.mu1 + mu.mu2);
    out.point = LogValue::from_log(prefactor - exponent);
    return out;
}

// Probability that the subgraph induced by S equals H, for a uniform random
// graph with the given degree sequence.
inline FormulaOutput induced_probability_asymptotic(const DegreeSequence& ds,
                                                    const InducedSubgraphSpec& spec,
                                                    const FormulaConfig& cfg = {}) {
    FormulaOutput out;
    const long long m = ds.total_degree();
    out.error_hint = detail::error_scale(ds.max_degree(), m);
    if (m % 2 != 0) {
        out.reason = ZeroReason::odd_total;
        return out;
    }
    const ResidualResult res = residual(ds, spec);
    if (res.status == ResidualStatus::negative_degree) {
        out.reason = ZeroReason::residual_negative;
        return out;
    }
    if (res.status == ResidualStatus::m1_deficit) {
        out.reason = ZeroReason::residual_m1_deficit;
        return out;
    }
    const DegreeSequence& dres = *res.degrees;
    const Bipartition bip(ds.n(), spec.vertices());
    if (feasibility(dres, bip) == Feasibility::odd_pure_count) {
        out.reason = ZeroReason::odd_pure_count;
        return out;
    }
    const MuParameters mu_res = mu_parameters(dres, bip);
    const Rational mu = mu_single(ds);
    out.exponent_terms.mu0 = to_double(mu_res.mu0);
    out.exponent_terms.mu1 = to_double(mu_res.mu1);
    out.exponent_terms.mu2 = to_double(mu_res.mu2);
    out.exponent_terms.mu = to_double(mu);
    out.exponent_terms.mu_squared = to_double(mu * mu);
    out.error_hint += detail::error_scale(dres.max_degree(), dres.total_degree());

    const long long m1_s = moments_left(dres, bip).m1;       // M1(d', S)
    const long long m1_rest = dres.total_degree() - m1_s;    // M1(d', [n]\S)
    const long long t_res = (m1_rest - m1_s) / 2;
    const long long h = spec.h();
    const double exponent =
        to_double(mu + mu * mu - mu_res.mu0 - mu_res.mu1 - mu_res.mu2);

    double log_prefactor;
    if (m <= cfg.exact_prefactor_limit) {
        BigInt num = pow2_big(m1_s + h / 2) * factorial_big(m1_rest) * factorial_big(m / 2);
        for (std::size_t i = 0; i < spec.vertices().size(); ++i)
            num *= falling_factorial(ds.degree(spec.vertices()[i]), spec.h_degrees()[i]);
        const BigInt den = factorial_big(t_res) * factorial_big(m);
        log_prefactor = log_big(num) - log_big(den);
    } else {
        log_prefactor = static_cast<double>(m1_s + h / 2) * M_LN2 + log_factorial(m1_rest) +
                        log_factorial(m / 2) - log_factorial(t_res) - log_factorial(m);
        for (std::size_t i = 0; i < spec.vertices().size(); ++i)
            log_prefactor += detail::log_falling_factorial(ds.degree(spec.vertices()[i]),
                                                           spec.h_degrees()[i]);
    }
    out.point = LogValue::from_log(exponent + log_prefactor);
    return out;
}

// d-regular specialization, evaluated through its own printed form. For a
// regular host sequence this and induced_probability_asymptotic are two
// routes to the same number.
inline FormulaOutput induced_probability_regular(int n, int d, const InducedSubgraphSpec& spec,
                                                 const FormulaConfig& cfg = {}) {
    if (n <= 0 || d < 0) throw std::invalid_argument("induced_probability_regular: bad n or d");
    const DegreeSequence ds(std::vector<int>(static_cast<std::size_t>(n), d));
    FormulaOutput out;
    const long long dn = static_cast<long long>(d) * n;
    const long long s = spec.s();
    const long long h = spec.h();
    out.error_hint = (dn - h) > 0 ? static_cast<double>(d) * d * d * d / static_cast<double>(dn - h) : 0.0;
    if (dn % 2 != 0) {
        out.reason = ZeroReason::odd_total;
        return out;
    }
    const ResidualResult res = residual(ds, spec);
    if (res.status == ResidualStatus::negative_degree) {
        out.reason = ZeroReason::residual_negative;
        return out;
    }
    if (res.status == ResidualStatus::m1_deficit) {
        out.reason = ZeroReason::residual_m1_deficit;
        return out;
    }
    const Bipartition bip(n, spec.vertices());
    const MuParameters mu_res = mu_parameters(*res.degrees, bip);
    out.exponent_terms.mu0 = to_double(mu_res.mu0);
    out.exponent_terms.mu1 = to_double(mu_res.mu1);
    out.exponent_terms.mu2 = to_double(mu_res.mu2);
    const Rational reg_term(static_cast<long long>(d) * d - 1, 4);
    const double exponent = to_double(reg_term - mu_res.mu0 - mu_res.mu1 - mu_res.mu2);

    double log_prefactor;
    if (dn <= cfg.exact_prefactor_limit) {
        BigInt num = pow2_big(d * s - h / 2) * factorial_big(dn - d * s) * factorial_big(dn / 2);
        for (int k : spec.h_degrees()) num *= falling_factorial(d, k);
        const BigInt den = factorial_big((dn - 2 * d * s + h) / 2) * factorial_big(dn);
        log_prefactor = log_big(num) - log_big(den);
    } else {
        log_prefactor = static_cast<double>(d * s - h / 2) * M_LN2 + log_factorial(dn - d * s) +
                        log_factorial(dn / 2) - log_factorial((dn - 2 * d * s + h) / 2) -
                        log_factorial(dn);
        for (int k : spec.h_degrees()) log_prefactor += detail::log_falling_factorial(d, k);
    }
    out.point = LogValue::from_log(exponent + log_prefactor);
    return out;
}

// Small-H simplification: (dn)^{-h/2} prod [d]_{k_i}.
inline FormulaOutput induced_probability_simplified(int n, int d, const InducedSubgraphSpec& spec,
                                                    const FormulaConfig& = {}) {
    if (n <= 0 || d < 0) throw std::invalid_argument("induced_probability_simplified: bad n or d");
    FormulaOutput out;
    const long long s = spec.s();
    const double dd = d;
    out.error_hint = (dd * dd * dd + static_cast<double>(s) * s * dd + dd * dd * s) / n;
    out.regime_warning = (dd * dd * dd >= n) || (static_cast<double>(s) * s * d >= n) ||
                         (dd * dd * s >= n);
    BigInt num = 1;
    for (int k : spec.h_degrees()) num *= falling_factorial(d, k);
    if (num == 0) {
        out.reason = ZeroReason::residual_negative;
        return out;
    }
    const long long h = spec.h();
    if (h > 0 && d == 0) {
        out.reason = ZeroReason::residual_negative;
        return out;
    }
    double log_value = log_big(num);
    if (h > 0) log_value -= static_cast<double>(h) / 2.0 * std::log(static_cast<double>(d) * n);
    out.point = LogValue::from_log(log_value);
    return out;
}

// Probability that a fixed s-subset is independent in a random d-regular
// graph on n vertices, with the Stirling-simplified variant alongside.
inline FormulaOutput independent_set_probability(int n, int d, int s, const FormulaConfig& cfg = {}) {
    if (n <= 0 || d < 0 || s < 0) throw std::invalid_argument("independent_set_probability: bad input");
    if (s > 0 && 2LL * s >= n)
        throw std::out_of_range("independent_set_probability: requires s < n/2");
    FormulaOutput out;
    const long long dn = static_cast<long long>(d) * n;
    out.error_hint = static_cast<double>(d) * d * d / n;
    if (s == 0 || d == 0) {
        out.exponent_terms.f = 0.0;
        out.point = LogValue::from_log(0.0);  // probability exactly 1
        return out;
    }
    if (dn % 2 != 0) {
        out.reason = ZeroReason::odd_total;
        return out;
    }
    const Rational delta(s, n);
    const Rational one_minus = 1 - delta;
    const Rational one_minus2 = 1 - 2 * delta;
    const Rational f = -delta * (d - 1) * (delta * d - 2 + delta) / (4 * one_minus * one_minus);
    out.exponent_terms.f = to_double(f);

    const long long ds_ = static_cast<long long>(d) * s;
    double log_prefactor;
    if (dn <= cfg.exact_prefactor_limit) {
        const BigInt num = factorial_big(dn - ds_) * factorial_big(dn / 2) * pow2_big(ds_);
        const BigInt den = factorial_big((dn - 2 * ds_) / 2) * factorial_big(dn);
        log_prefactor = log_big(num) - log_big(den);
    } else {
        log_prefactor = log_factorial(dn - ds_) + log_factorial(dn / 2) +
                        static_cast<double>(ds_) * M_LN2 - log_factorial((dn - 2 * ds_) / 2) -
                        log_factorial(dn);
    }
    out.point = LogValue::from_log(to_double(f) + log_prefactor);

    const double log_u = log_rational(one_minus);
    const double log_v = log_rational(one_minus2);
    const double stirling = 0.5 * (log_u - log_v) +
                            static_cast<double>(dn) *
                                (to_double(one_minus) * log_u - to_double(one_minus2) / 2.0 * log_v) +
                            to_double(f);
    out.simplified = LogValue::from_log(stirling);
    out.simplified_guard_ok = static_cast<double>(d) * (n - 2.0 * s) >= cfg.stirling_guard;
    return out;
}

}  // namespace bgraph
