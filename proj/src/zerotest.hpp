#pragma once

#include <functional>

#include "poly.hpp"
#include "rng.hpp"

namespace crp {

enum class ZeroKind { ExactZero, ProbablyZero, NonZero };

struct ZeroVerdict {
    ZeroKind kind;
    std::vector<std::complex<double>> witness; // first failing point (NonZero)
    std::complex<double> witness_value{0.0, 0.0};

    bool holds() const { return kind != ZeroKind::NonZero; }
    bool exact() const { return kind == ZeroKind::ExactZero; }
};

const char* zero_kind_name(ZeroKind k);

using PointSampler = std::function<std::vector<std::complex<double>>(Rng&)>;

// All paper objects are germs at 0: sample the polydisc of radius 1/2.
PointSampler polydisc_sampler(int n, double radius = 0.5);

struct IsZeroOptions {
    int trials = 20;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int max_retries = 100; // per sample on pole / negative-sqrt hits
    PointSampler sampler;  // defaults to the polydisc sampler
};

// Exact decision through the (algebraic) normal form when available,
// randomized evaluation otherwise.
ZeroVerdict is_zero(const Ex& e, int n, const IsZeroOptions& opt = {});

} // namespace crp
