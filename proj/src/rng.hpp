#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace crp {

// splitmix64: tiny, seedable, identical output on every platform.  The
// standard <random> distributions are implementation-defined, which would
// break golden-file determinism.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [-h, h].
    double next_sym(double h) { return (2.0 * next_unit() - 1.0) * h; }

    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

    // Uniform in the closed disc of radius r (rejection from the square).
    std::complex<double> next_disc(double r) {
        for (;;) {
            double x = next_sym(1.0), y = next_sym(1.0);
            if (x * x + y * y <= 1.0) return {x * r, y * r};
        }
    }

    // Point in the polydisc of radius r in C^n.
    std::vector<std::complex<double>> next_polydisc(int n, double r) {
        std::vector<std::complex<double>> p(static_cast<std::size_t>(n));
        for (auto& z : p) z = next_disc(r);
        return p;
    }

private:
    std::uint64_t state_;
};

} // namespace crp
