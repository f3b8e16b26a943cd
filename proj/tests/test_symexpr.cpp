#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "poly.hpp"
#include "test_util.hpp"
#include "zerotest.hpp"

using namespace crp;
using crptest::fd_wirtinger_ex;
using crptest::random_rational_expr;

namespace {

bool norm_zero(const Ex& e, int n) { return normalize_rational(e, n).is_zero(); }

bool norm_equal(const Ex& a, const Ex& b, int n) { return norm_zero(a - b, n); }

} // namespace

TEST_CASE("parse: basic denotations") {
    Ex e = ex_parse("z1*zbar1", 2);
    CHECK(e->kind == ExKind::Prod);
    CHECK(ex_structural_equal(e, ex_var(1) * ex_varbar(1)));

    // y2 is the definitional alias (z2 - zbar2)/(2i)
    Ex y = ex_parse("y2", 2);
    Ex expected = ex_prod({ex_const(Scalar(Rat(0), Rat(-1) / 2)), ex_var(2) - ex_varbar(2)});
    CHECK(norm_equal(y, expected, 2));

    Ex s = ex_parse("sqrt(2 + y2^2)", 2);
    CHECK(s->kind == ExKind::Sqrt);
    CHECK(ex_contains_sqrt(s));

    Ex x = ex_parse("x1", 2);
    CHECK(norm_equal(x, ex_prod({ex_rat(Rat(1) / 2), ex_var(1) + ex_varbar(1)}), 2));
}

TEST_CASE("parse: errors carry positions") {
    CHECK_THROWS_AS(ex_parse("z1 + + z2", 2), Error);
    try {
        ex_parse("z1 + + z2", 2);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::SyntaxError);
        CHECK(e.has_pos());
    }
    try {
        ex_parse("w1 + z1", 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::UnknownVariable);
    }
    try {
        ex_parse("z3", 2);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::IndexOutOfRange);
    }
    CHECK_THROWS_AS(ex_parse("1/0", 2), Error);
}

TEST_CASE("wirtinger: independence and product rule") {
    Ex e = ex_var(1) * ex_varbar(1);
    CHECK(norm_equal(ex_wirtinger(e, 1, false), ex_varbar(1), 1));
    CHECK(norm_zero(ex_wirtinger(ex_varbar(1), 1, false), 1));
    CHECK(norm_zero(ex_wirtinger(ex_var(2), 1, false), 2));

    // quotient rule: d(1/z1)/dz1 = -1/z1^2
    Ex q = ex_inv(ex_var(1));
    Ex dq = ex_wirtinger(q, 1, false);
    Ex want = ex_neg(ex_inv(ex_var(1) * ex_var(1)));
    RatFunc diff = normalize_rational(dq - want, 1);
    CHECK(diff.is_zero());
}

TEST_CASE("wirtinger: sqrt rule against finite differences") {
    // alpha = b/(2i - conj(a)) with a = i*y2^2, b = y2*sqrt(2+y2^2)
    Ex a = ex_parse("i*y2^2", 2);
    Ex b = ex_parse("y2*sqrt(2+y2^2)", 2);
    Ex alpha = b * ex_inv(ex_int(2) * ex_i() - ex_conj(a));
    Ex dalpha = ex_wirtinger(alpha, 2, false);

    // at z = 0 the derivative is -1/sqrt(2) * 1/2
    auto v0 = ex_eval(dalpha, {{0, 0}, {0, 0}});
    CHECK(std::abs(v0 - std::complex<double>(-0.5 / std::sqrt(2.0), 0.0)) < 1e-12);

    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        auto p = rng.next_polydisc(2, 0.4);
        auto sym = ex_eval(dalpha, p);
        auto fd = fd_wirtinger_ex(alpha, p, 2, false);
        CHECK(std::abs(sym - fd) < 1e-6 * std::max(1.0, std::abs(sym)));
    }
}

TEST_CASE("conj: involution and leaf swaps") {
    Ex e = ex_i() * ex_var(1) + ex_varbar(2);
    Ex c = ex_conj(e);
    CHECK(norm_equal(c, ex_neg(ex_i()) * ex_varbar(1) + ex_var(2), 2));
    CHECK(ex_structural_equal(ex_conj(c), e));

    // conj(y2) = y2 and conj(sqrt(2+y2^2)) = sqrt(2+y2^2), by normalization
    Ex y = ex_parse("y2", 2);
    CHECK(norm_zero(ex_conj(y) - y, 2));
    Ex s = ex_parse("sqrt(2+y2^2)", 2);
    CHECK(normalize_algebraic(ex_conj(s) - s, 2).is_zero());
}

TEST_CASE("normalize_rational: canonical forms") {
    Ex lhs = ex_pow(ex_var(1) + ex_varbar(1), 2);
    Ex rhs = ex_pow(ex_var(1), 2) + ex_int(2) * ex_var(1) * ex_varbar(1) + ex_pow(ex_varbar(1), 2);
    CHECK(norm_zero(lhs - rhs, 1));

    // b_n formula with Lt_{2n-1,2n-1} = 0 and Lt_{2n-1,2n} = z1:
    // conj(z1)/(2i - 0) = zbar1/(2i)
    Ex bn = ex_conj(ex_var(1)) * ex_inv(ex_int(2) * ex_i());
    Ex want = ex_const(Scalar(Rat(0), Rat(-1) / 2)) * ex_varbar(1);
    CHECK(norm_equal(bn, want, 2));

    CHECK(norm_zero(ex_inv(ex_int(2) * ex_i() - ex_int(0)) * ex_conj(ex_int(0)), 2));

    CHECK_THROWS_AS(normalize_rational(ex_parse("sqrt(2+y2^2)", 2), 2), Error);
    CHECK_THROWS_AS(normalize_rational(ex_inv(ex_var(1) - ex_var(1) + ex_int(0) * ex_var(1)), 1), Error);
}

TEST_CASE("normalize_algebraic: atom reduction") {
    // sqrt(u)^2 - u == 0 exactly
    Ex u = ex_parse("2+y2^2", 2);
    Ex s = ex_sqrt(u);
    CHECK(normalize_algebraic(s * s - u, 2).is_zero());

    // u / sqrt(u) - sqrt(u) == 0 exactly
    Ex e = u * ex_inv(s) - s;
    CHECK(normalize_algebraic(e, 2).is_zero());

    // sqrt(y2^2) - y2 is NOT decided exactly (branch-dependent)
    Ex f = ex_parse("sqrt(y2^2) - y2", 2);
    CHECK(!exact_zero(f, 2).has_value());

    // sqrt argument must be self-conjugate
    CHECK_THROWS_AS(normalize_algebraic(ex_sqrt(ex_var(1)), 1), Error);
}

TEST_CASE("eval: spec values") {
    CHECK(std::abs(ex_eval(ex_parse("z1*zbar1", 2), {{3, 4}, {0, 0}}) - 25.0) < 1e-12);
    CHECK(std::abs(ex_eval(ex_parse("y2", 2), {{0, 0}, {1, 2}}) - 2.0) < 1e-12);
    CHECK(std::abs(ex_eval(ex_parse("sqrt(2+y2^2)", 2), {{0, 0}, {0, 1}}) - std::sqrt(3.0)) < 1e-7);

    CHECK_THROWS_AS(ex_eval(ex_parse("sqrt(y1)", 1), {{0.0, -1.0}}), Error);
    CHECK_THROWS_AS(ex_eval(ex_inv(ex_var(1)), {{0.0, 0.0}}), Error);
}

TEST_CASE("is_zero: verdicts") {
    auto v1 = is_zero(ex_var(1) - ex_var(1), 1);
    CHECK(v1.kind == ZeroKind::ExactZero);

    IsZeroOptions opt;
    opt.sampler = [](Rng& rng) {
        // points with y2 > 0
        auto p = rng.next_polydisc(2, 0.4);
        p[1] = {p[1].real(), 0.05 + std::abs(p[1].imag())};
        return p;
    };
    auto v2 = is_zero(ex_parse("sqrt(y2^2) - y2", 2), 2, opt);
    CHECK(v2.kind == ZeroKind::ProbablyZero);

    auto v3 = is_zero(ex_var(1), 1);
    CHECK(v3.kind == ZeroKind::NonZero);
    CHECK(v3.witness.size() == 1);

    // the same branch identity over the full polydisc finds a witness
    auto v4 = is_zero(ex_parse("sqrt(y2^2) - y2", 2), 2);
    CHECK(v4.kind == ZeroKind::NonZero);
}

TEST_CASE("property: conj/derivative interplay on random expressions") {
    Rng rng(42);
    int checked = 0;
    for (int t = 0; t < 200; ++t) {
        int n = 2 + static_cast<int>(rng.next_below(2));
        Ex e = random_rational_expr(rng, n, 3);
        int j = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        int k = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));

        // conj(d e / dz_j) == d(conj e)/dzbar_j
        Ex lhs = ex_conj(ex_wirtinger(e, j, false));
        Ex rhs = ex_wirtinger(ex_conj(e), j, true);
        CHECK(norm_zero(lhs - rhs, n));

        // d/dz_j and d/dzbar_k commute
        Ex ab = ex_wirtinger(ex_wirtinger(e, j, false), k, true);
        Ex ba = ex_wirtinger(ex_wirtinger(e, k, true), j, false);
        CHECK(norm_zero(ab - ba, n));
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("property: parser round-trip and eval agreement") {
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        int n = 1 + static_cast<int>(rng.next_below(3));
        Ex e = random_rational_expr(rng, n, 3, /*allow_inv=*/true);
        std::string text = ex_print(e);
        Ex back;
        try {
            back = ex_parse(text, n);
        } catch (const Error& err) {
            FAIL("round-trip parse failed for: ", text, " (", err.what(), ")");
        }
        RatFunc fa, fb;
        try {
            fa = normalize_rational(e, n);
            fb = normalize_rational(back, n);
        } catch (const Error& err) {
            if (err.code() == Errc::DivisionByZeroPolynomial) continue; // random Inv collapsed
            throw;
        }
        CHECK(rf_equal(fa, fb));

        // eval agrees with eval-of-normal-form
        auto p = rng.next_polydisc(n, 0.4);
        try {
            auto ve = ex_eval(e, p);
            auto vf = rf_eval(fa, p);
            CHECK(std::abs(ve - vf) < 1e-12 * std::max(1.0, std::abs(ve)));
        } catch (const Error& err) {
            if (err.code() != Errc::PoleAtPoint) throw;
        }
    }
}

TEST_CASE("ratfunc: cross-multiplication equality") {
    // (z^2 - 1)/(z - 1) equals (z + 1)/1 by cross-multiplication even though
    // the representations differ structurally
    Ex a = (ex_var(1) * ex_var(1) - ex_int(1)) * ex_inv(ex_var(1) - ex_int(1));
    Ex b = ex_var(1) + ex_int(1);
    CHECK(rf_equal(normalize_rational(a, 1), normalize_rational(b, 1)));
}
