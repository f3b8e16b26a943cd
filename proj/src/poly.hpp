#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "expr.hpp"

namespace crp {

// Exponent vector.  Slot layout: 2(j-1) holds z_j, 2(j-1)+1 holds zbar_j for
// j = 1..n; slots 2n.. hold square-root atoms when an algebraic context is
// in play.  Monomials are compared lexicographically in that slot order.
using Exps = std::vector<std::uint32_t>;

struct LexGreater {
    bool operator()(const Exps& a, const Exps& b) const {
        const std::size_t m = std::max(a.size(), b.size());
        for (std::size_t k = 0; k < m; ++k) {
            std::uint32_t x = k < a.size() ? a[k] : 0;
            std::uint32_t y = k < b.size() ? b[k] : 0;
            if (x != y) return x > y;
        }
        return false;
    }
};

struct Poly {
    std::uint32_t width = 0;
    std::map<Exps, Scalar, LexGreater> terms; // zero coefficients never stored

    static Poly zero(std::uint32_t w) { return Poly{w, {}}; }
    static Poly constant(std::uint32_t w, Scalar s);
    static Poly variable(std::uint32_t w, std::uint32_t slot);

    bool is_zero() const { return terms.empty(); }
    bool is_constant(Scalar* out = nullptr) const;
    std::uint32_t total_degree() const;

    void add_term(const Exps& e, const Scalar& c);
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Scalar& s);
bool operator==(const Poly& a, const Poly& b);

// Keeps only terms of total degree <= d (degree counts all slots).
Poly poly_truncate(const Poly& a, std::uint32_t d);
// Terms of total degree exactly d.
Poly poly_homogeneous_part(const Poly& a, std::uint32_t d);

std::complex<double> poly_eval(const Poly& p, const std::vector<std::complex<double>>& slot_values);

// Square-root atoms for the algebraic normal form: atom k stands for
// sqrt(arg[k]) where arg[k] is a pure-z polynomial (width 2n, no atom slots).
// Any atom power >= 2 is reduced via s^2 -> arg.
struct AlgCtx {
    int n = 0;
    std::vector<Poly> sqrt_args;
};
using AlgCtxPtr = std::shared_ptr<const AlgCtx>;

struct RatFunc {
    // Canonical: denominator not identically zero, monic leading coefficient,
    // no monomial factor common to numerator and denominator, sorted terms.
    Poly num;
    Poly den;
    AlgCtxPtr ctx; // null for the plain rational class

    bool is_zero() const { return num.is_zero(); }
    bool has_sqrt() const { return ctx && !ctx->sqrt_args.empty(); }
};

RatFunc rf_canonical(Poly num, Poly den, AlgCtxPtr ctx);
RatFunc rf_add(const RatFunc& a, const RatFunc& b);
RatFunc rf_sub(const RatFunc& a, const RatFunc& b);
RatFunc rf_neg(const RatFunc& a);
RatFunc rf_mul(const RatFunc& a, const RatFunc& b);
RatFunc rf_inv(const RatFunc& a);

// Equality by expanded cross-multiplication.
bool rf_equal(const RatFunc& a, const RatFunc& b);

std::complex<double> rf_eval(const RatFunc& f, const std::vector<std::complex<double>>& point,
                             const EvalOptions& opt = {});

// Conjugation: swaps z_j <-> zbar_j slots; sqrt atoms are self-conjugate.
Poly poly_conj(const Poly& p);
RatFunc rf_conj(const RatFunc& f);

std::string poly_print(const Poly& p, const AlgCtxPtr& ctx);

// Strict normalization onto the rational class: throws SqrtPresent when the
// expression contains a square root, DivisionByZeroPolynomial when an Inv
// child normalizes to the zero polynomial.
RatFunc normalize_rational(const Ex& e, int n);

// Algebraic normalization: square roots become atoms subject to s^2 = arg.
// Requires sqrt arguments to be sqrt-free and self-conjugate.
RatFunc normalize_algebraic(const Ex& e, int n);

// Exact zero test through whichever normalization applies; nullopt when the
// expression is outside both exact classes (e.g. nested square roots).
std::optional<bool> exact_zero(const Ex& e, int n);

// Sqrt constructor that enforces the self-conjugate-argument restriction.
Ex ex_sqrt_checked(const Ex& arg, int n);

// Rebuilds an Ex from a polynomial / rational function (used for reporting).
Ex poly_to_ex(const Poly& p, const AlgCtxPtr& ctx);
Ex rf_to_ex(const RatFunc& f);

} // namespace crp
