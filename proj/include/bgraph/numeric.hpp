#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace bgraph {

// Exact arbitrary-precision carriers. Counts are never rounded; rationals
// hold the mu-parameters and exact probabilities. Floating point enters
// only when a formula value is finally evaluated.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return static_cast<double>(r); }

// Natural log of a positive BigInt, exact to double precision even when the
// value is far beyond double range.
inline double log_big(const BigInt& x) {
    if (x <= 0) throw std::domain_error("log_big: argument must be positive");
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(x)) + 1;
    if (bits <= 960) return std::log(static_cast<double>(x));
    const unsigned shift = bits - 960;
    const BigInt head = x >> shift;
    return std::log(static_cast<double>(head)) + static_cast<double>(shift) * M_LN2;
}

inline double log_rational(const Rational& r) {
    if (r <= 0) throw std::domain_error("log_rational: argument must be positive");
    return log_big(boost::multiprecision::numerator(r)) -
           log_big(boost::multiprecision::denominator(r));
}

inline BigInt factorial_big(long long n) {
    if (n < 0) throw std::invalid_argument("factorial_big: negative argument");
    BigInt out = 1;
    for (long long i = 2; i <= n; ++i) out *= i;
    return out;
}

inline BigInt binomial_big(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    BigInt out = 1;
    for (long long i = 1; i <= k; ++i) {
        out *= (n - k + i);
        out /= i;
    }
    return out;
}

inline BigInt pow2_big(long long e) {
    if (e < 0) throw std::invalid_argument("pow2_big: negative exponent");
    return BigInt(1) << static_cast<unsigned>(e);
}

// log(n!) through lgamma; the scalable twin of factorial_big.
inline double log_factorial(long long n) {
    if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

}  // namespace bgraph
