#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "crcheck.hpp"

using namespace crp;
using C = std::complex<double>;

namespace {

bool all_norm_zero(const std::vector<Ex>& es, int n) {
    for (const auto& e : es)
        if (!is_zero(e, n).holds()) return false;
    return true;
}

bool any_nonzero(const std::vector<Ex>& es, int n) {
    for (const auto& e : es)
        if (is_zero(e, n).kind == ZeroKind::NonZero) return true;
    return false;
}

} // namespace

TEST_CASE("pseudoholomorphy residual") {
    auto J = build_standard(2);

    SUBCASE("identity map is holomorphic") {
        CHECK(all_norm_zero(pseudoholomorphy_residual(identity_map(2), J, J), 2));
    }
    SUBCASE("dilation with delta = 1/4 is exactly holomorphic") {
        SymbolicMap lam = dilation_map(2, Rat(1) / 4);
        // sqrt(1/4) folded to the exact rational 1/2
        CHECK(!ex_contains_sqrt(lam.f(1)));
        auto res = pseudoholomorphy_residual(lam, J, J);
        for (const auto& e : res) CHECK(normalize_rational(e, 2).is_zero());
    }
    SUBCASE("conjugation map is anti-holomorphic") {
        SymbolicMap conj_map;
        conj_map.n = 2;
        conj_map.name = "conjugation";
        conj_map.components = {ex_varbar(1), ex_varbar(2)};
        CHECK(any_nonzero(pseudoholomorphy_residual(conj_map, J, J), 2));
    }
    SUBCASE("model-structure targets compose through the map") {
        ModelSpec spec = ModelSpec::zero(2);
        spec.coef[0][0] = {Scalar(Rat(1)), Scalar(Rat(0), Rat(2))};
        auto Jm = build_model(spec);
        // identity is (J_m, J_m)-holomorphic but not (J_m, J_st)-holomorphic
        CHECK(all_norm_zero(pseudoholomorphy_residual(identity_map(2), Jm, Jm), 2));
        CHECK(any_nonzero(pseudoholomorphy_residual(identity_map(2), Jm, J), 2));
    }
}

TEST_CASE("tangential residuals") {
    ModelSpec std2 = ModelSpec::zero(2);
    Hypersurface H = Hypersurface::siegel(2);

    SUBCASE("identity and exact dilation pass everything") {
        for (auto& f : {identity_map(2), dilation_map(2, Rat(1) / 4)}) {
            auto res = cr_residuals(f, std2, std2, H, H);
            auto verdicts = cr_residuals_verdicts(res, H);
            CHECK(verdicts.all_zero);
            CHECK(verdicts.exact);
        }
    }
    SUBCASE("surface-breaking map fails with a witness") {
        SymbolicMap bad;
        bad.n = 2;
        bad.name = "bends the surface";
        bad.components = {ex_var(1) + ex_var(1) * ex_var(1), ex_var(2)};
        auto res = cr_residuals(bad, std2, std2, H, H);
        auto verdicts = cr_residuals_verdicts(res, H);
        CHECK(!verdicts.all_zero);
        bool surface_failed = false;
        for (auto& [label, v] : verdicts.items)
            if (label == "surface" && v.kind == ZeroKind::NonZero) surface_failed = true;
        CHECK(surface_failed);
    }
    SUBCASE("restriction principle on dilations and their compositions") {
        // lambda_{1/4} o lambda_{1/9} = lambda_{1/36}, still exact
        auto f = dilation_map(2, Rat(1) / 36);
        auto res = cr_residuals(f, std2, std2, H, H);
        CHECK(cr_residuals_verdicts(res, H).all_zero);
    }
    SUBCASE("model-structure source frame") {
        ModelSpec spec = ModelSpec::zero(2);
        spec.coef[0][0] = {Scalar(Rat(0), Rat(1)), Scalar(Rat(1))};
        auto res = cr_residuals(identity_map(2), spec, spec, H, H);
        CHECK(cr_residuals_verdicts(res, H).all_zero);
    }
}

TEST_CASE("sqrt-valued dilation still decides exactly") {
    // sqrt(1/3) stays a radical, but the algebraic normal form (s^2 -> 1/3)
    // certifies the residuals without sampling
    ModelSpec std2 = ModelSpec::zero(2);
    Hypersurface H = Hypersurface::siegel(2);
    SymbolicMap lam = dilation_map(2, Rat(1) / 3);
    CHECK(ex_contains_sqrt(lam.f(1)));
    auto res = cr_residuals(lam, std2, std2, H, H);
    auto verdicts = cr_residuals_verdicts(res, H);
    CHECK(verdicts.all_zero);
    CHECK(verdicts.exact);
}

TEST_CASE("frame pushforward matrix") {
    Frame fr = build_model_frame(ModelSpec::zero(3));
    std::vector<C> origin(3, C{0, 0});

    auto id = frame_pushforward_matrix(identity_map(3), fr, origin);
    CHECK(id.invertible);
    CHECK(std::abs(id.a[0] - C{1, 0}) < 1e-12);
    CHECK(std::abs(id.a[3] - C{1, 0}) < 1e-12);
    CHECK(std::abs(id.a[1]) < 1e-12);
    CHECK(std::abs(id.condition - 1.0) < 1e-9);

    auto lam = frame_pushforward_matrix(dilation_map(3, Rat(1) / 4), fr, origin);
    CHECK(lam.invertible);
    CHECK(std::abs(lam.a[0] - C{0.5, 0}) < 1e-12);
    CHECK(std::abs(lam.a[3] - C{0.5, 0}) < 1e-12);

    SymbolicMap degenerate;
    degenerate.n = 3;
    degenerate.components = {ex_var(1), ex_var(1), ex_var(3)};
    auto bad = frame_pushforward_matrix(degenerate, fr, origin);
    CHECK(!bad.invertible);
    CHECK(std::isinf(bad.condition));
}

TEST_CASE("map JSON") {
    auto m = load_map_json(R"({"n": 2, "components": ["1/2*z1", "1/4*z2"], "name": "quarter"})");
    CHECK(m.n == 2);
    CHECK(m.name == "quarter");
    CHECK(normalize_rational(m.f(1) - ex_rat(Rat(1) / 2) * ex_var(1), 2).is_zero());
    CHECK_THROWS_AS(load_map_json(R"({"n": 2, "components": ["z1"]})"), Error);
    CHECK_THROWS_AS(load_map_json(R"({"n": 2, "components": ["z1", "z2"], "x": 1})"), Error);
}
