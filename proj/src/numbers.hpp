#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "error.hpp"

namespace crp {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// cpp_rational's two-argument constructor rejects negative denominators;
// route through division instead.
inline Rat make_rat(BigInt num, BigInt den) {
    if (den == 0) fail(Errc::DivisionByZeroPolynomial, "rational with zero denominator");
    return Rat(std::move(num)) / Rat(std::move(den));
}

inline Rat ipow(const Rat& base, unsigned e) {
    Rat acc(1);
    Rat b = base;
    unsigned k = e;
    while (k) {
        if (k & 1u) acc *= b;
        b *= b;
        k >>= 1u;
    }
    return acc;
}

inline std::optional<BigInt> isqrt_exact(const BigInt& v) {
    if (v < 0) return std::nullopt;
    BigInt r = sqrt(v);
    if (r * r == v) return r;
    return std::nullopt;
}

// Exact square root of a nonnegative rational, when one exists.
inline std::optional<Rat> rat_sqrt_exact(const Rat& q) {
    if (q < 0) return std::nullopt;
    auto n = isqrt_exact(numerator(q));
    if (!n) return std::nullopt;
    auto d = isqrt_exact(denominator(q));
    if (!d) return std::nullopt;
    return make_rat(*n, *d);
}

inline std::string rat_str(const Rat& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) {
        s += "/";
        s += denominator(q).str();
    }
    return s;
}

inline double rat_double(const Rat& q) { return static_cast<double>(q); }

} // namespace crp
