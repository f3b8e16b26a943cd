#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "expr.hpp"
#include "rng.hpp"

namespace crptest {

using crp::Ex;
using C = std::complex<double>;
using Point = std::vector<C>;

// Central-difference Wirtinger derivative: d/dz = (d/dx - i d/dy)/2.
inline C fd_wirtinger(const std::function<C(const Point&)>& f, const Point& p, int j, bool bar,
                      double h = 1e-6) {
    Point px = p, mx = p, py = p, my = p;
    px[j - 1] += C{h, 0};
    mx[j - 1] -= C{h, 0};
    py[j - 1] += C{0, h};
    my[j - 1] -= C{0, h};
    C dx = (f(px) - f(mx)) / (2 * h);
    C dy = (f(py) - f(my)) / (2 * h);
    return bar ? (dx + C{0, 1} * dy) / 2.0 : (dx - C{0, 1} * dy) / 2.0;
}

inline C fd_wirtinger_ex(const Ex& e, const Point& p, int j, bool bar, double h = 1e-6) {
    return fd_wirtinger([&](const Point& q) { return crp::ex_eval(e, q); }, p, j, bar, h);
}

// Random expressions from the rational subclass (no Sqrt, no Inv by default).
inline Ex random_rational_expr(crp::Rng& rng, int n, int depth, bool allow_inv = false) {
    using namespace crp;
    auto leaf = [&]() -> Ex {
        switch (rng.next_below(4)) {
            case 0: return ex_var(1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))));
            case 1: return ex_varbar(1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n))));
            case 2: {
                long a = static_cast<long>(rng.next_below(7)) - 3;
                long b = static_cast<long>(rng.next_below(7)) - 3;
                return ex_const(Scalar(Rat(a), Rat(b)));
            }
            default: return ex_i();
        }
    };
    if (depth <= 0) return leaf();
    switch (rng.next_below(allow_inv ? 5 : 4)) {
        case 0: {
            std::vector<Ex> t;
            std::uint64_t k = 2 + rng.next_below(2);
            for (std::uint64_t r = 0; r < k; ++r) t.push_back(random_rational_expr(rng, n, depth - 1, allow_inv));
            return ex_sum(std::move(t));
        }
        case 1: {
            std::vector<Ex> t;
            std::uint64_t k = 2 + rng.next_below(2);
            for (std::uint64_t r = 0; r < k; ++r) t.push_back(random_rational_expr(rng, n, depth - 1, allow_inv));
            return ex_prod(std::move(t));
        }
        case 2: return ex_neg(random_rational_expr(rng, n, depth - 1, allow_inv));
        case 3: return leaf();
        default: {
            Ex inner = random_rational_expr(rng, n, depth - 1, false);
            if (ex_is_zero_literal(inner)) inner = inner + ex_int(1);
            try {
                return ex_inv(inner);
            } catch (const crp::Error&) {
                return leaf();
            }
        }
    }
}

} // namespace crptest
