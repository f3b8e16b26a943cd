#include "poly.hpp"

#include <algorithm>
#include <sstream>

namespace crp {

namespace {

Exps widen(const Exps& e, std::uint32_t w) {
    Exps out = e;
    out.resize(w, 0);
    return out;
}

std::uint32_t exps_degree(const Exps& e) {
    std::uint32_t d = 0;
    for (auto x : e) d += x;
    return d;
}

} // namespace

Poly Poly::constant(std::uint32_t w, Scalar s) {
    Poly p{w, {}};
    if (!s.is_zero()) p.terms.emplace(Exps(w, 0), std::move(s));
    return p;
}

Poly Poly::variable(std::uint32_t w, std::uint32_t slot) {
    Poly p{w, {}};
    Exps e(w, 0);
    e.at(slot) = 1;
    p.terms.emplace(std::move(e), Scalar::one());
    return p;
}

bool Poly::is_constant(Scalar* out) const {
    if (terms.empty()) {
        if (out) *out = Scalar::zero();
        return true;
    }
    if (terms.size() == 1 && exps_degree(terms.begin()->first) == 0) {
        if (out) *out = terms.begin()->second;
        return true;
    }
    return false;
}

std::uint32_t Poly::total_degree() const {
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, exps_degree(e));
    return d;
}

void Poly::add_term(const Exps& e, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(widen(e, width), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

Poly operator+(const Poly& a, const Poly& b) {
    Poly out{std::max(a.width, b.width), {}};
    out.terms = a.terms;
    for (const auto& [e, c] : b.terms) out.add_term(e, c);
    return out;
}

Poly operator-(const Poly& a, const Poly& b) {
    Poly out{std::max(a.width, b.width), {}};
    out.terms = a.terms;
    for (const auto& [e, c] : b.terms) out.add_term(e, -c);
    return out;
}

Poly operator-(const Poly& a) {
    Poly out{a.width, {}};
    for (const auto& [e, c] : a.terms) out.terms.emplace(e, -c);
    return out;
}

Poly poly_scale(const Poly& a, const Scalar& s) {
    Poly out{a.width, {}};
    if (s.is_zero()) return out;
    for (const auto& [e, c] : a.terms) out.terms.emplace(e, c * s);
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly out{std::max(a.width, b.width), {}};
    for (const auto& [ea, ca] : a.terms) {
        for (const auto& [eb, cb] : b.terms) {
            Exps e = widen(ea, out.width);
            for (std::size_t k = 0; k < eb.size(); ++k) e[k] += eb[k];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms.size() != b.terms.size()) return false;
    auto ia = a.terms.begin();
    auto ib = b.terms.begin();
    for (; ia != a.terms.end(); ++ia, ++ib) {
        if (ia->second != ib->second) return false;
        const Exps& x = ia->first;
        const Exps& y = ib->first;
        std::size_t m = std::max(x.size(), y.size());
        for (std::size_t k = 0; k < m; ++k) {
            if ((k < x.size() ? x[k] : 0) != (k < y.size() ? y[k] : 0)) return false;
        }
    }
    return true;
}

Poly poly_truncate(const Poly& a, std::uint32_t d) {
    Poly out{a.width, {}};
    for (const auto& [e, c] : a.terms)
        if (exps_degree(e) <= d) out.terms.emplace(e, c);
    return out;
}

Poly poly_homogeneous_part(const Poly& a, std::uint32_t d) {
    Poly out{a.width, {}};
    for (const auto& [e, c] : a.terms)
        if (exps_degree(e) == d) out.terms.emplace(e, c);
    return out;
}

std::complex<double> poly_eval(const Poly& p, const std::vector<std::complex<double>>& slot_values) {
    std::complex<double> acc{0.0, 0.0};
    for (const auto& [e, c] : p.terms) {
        std::complex<double> t = c.to_complex();
        for (std::size_t k = 0; k < e.size(); ++k) {
            for (std::uint32_t r = 0; r < e[k]; ++r) t *= slot_values.at(k);
        }
        acc += t;
    }
    return acc;
}

namespace {

// Swap the paired z/zbar slots below `zslots`; later slots (sqrt atoms with
// self-conjugate arguments) stay fixed.
Poly poly_conj_upto(const Poly& p, std::uint32_t zslots) {
    Poly out{p.width, {}};
    for (const auto& [e, c] : p.terms) {
        Exps f = e;
        f.resize(std::max<std::size_t>(p.width, f.size()), 0);
        for (std::uint32_t k = 0; k + 1 < zslots && k + 1 < f.size(); k += 2) std::swap(f[k], f[k + 1]);
        out.add_term(f, c.conj());
    }
    return out;
}

} // namespace

// Precondition: every slot of p is a z/zbar pair (no sqrt atoms).
Poly poly_conj(const Poly& p) { return poly_conj_upto(p, p.width); }

RatFunc rf_conj(const RatFunc& f) {
    std::uint32_t zslots = f.ctx ? static_cast<std::uint32_t>(2 * f.ctx->n) : f.num.width;
    return rf_canonical(poly_conj_upto(f.num, zslots), poly_conj_upto(f.den, zslots), f.ctx);
}

RatFunc rf_canonical(Poly num, Poly den, AlgCtxPtr ctx) {
    if (den.is_zero()) fail(Errc::DivisionByZeroPolynomial, "zero denominator polynomial");
    if (num.is_zero()) {
        Poly one = Poly::constant(den.width, Scalar::one());
        return RatFunc{Poly::zero(den.width), std::move(one), std::move(ctx)};
    }
    std::uint32_t w = std::max(num.width, den.width);
    num.width = w;
    den.width = w;
    // strip the common monomial factor
    Exps mins(w, ~0u);
    auto fold = [&](const Poly& p) {
        for (const auto& [e, c] : p.terms) {
            (void)c;
            for (std::uint32_t k = 0; k < w; ++k) {
                std::uint32_t x = k < e.size() ? e[k] : 0;
                mins[k] = std::min(mins[k], x);
            }
        }
    };
    fold(num);
    fold(den);
    bool any = false;
    for (auto m : mins) any = any || (m > 0 && m != ~0u);
    auto strip = [&](Poly& p) {
        if (!any) return;
        std::map<Exps, Scalar, LexGreater> t;
        for (const auto& [e, c] : p.terms) {
            Exps f = widen(e, w);
            for (std::uint32_t k = 0; k < w; ++k) f[k] -= mins[k];
            t.emplace(std::move(f), c);
        }
        p.terms = std::move(t);
    };
    strip(num);
    strip(den);
    // monic denominator (leading coefficient in the fixed monomial order)
    const Scalar lead = den.terms.begin()->second;
    if (!lead.is_one()) {
        Scalar inv = lead.inverse();
        num = poly_scale(num, inv);
        den = poly_scale(den, inv);
    }
    return RatFunc{std::move(num), std::move(den), std::move(ctx)};
}

namespace {

AlgCtxPtr merge_ctx(const AlgCtxPtr& a, const AlgCtxPtr& b) {
    if (!a) return b;
    if (!b || a == b) return a;
    if (a->n != b->n) fail(Errc::Internal, "mismatched algebraic contexts");
    // contexts are only ever shared or extended; identical content is fine
    if (a->sqrt_args.size() >= b->sqrt_args.size()) {
        for (std::size_t k = 0; k < b->sqrt_args.size(); ++k)
            if (!(a->sqrt_args[k] == b->sqrt_args[k])) fail(Errc::Internal, "incompatible sqrt atoms");
        return a;
    }
    for (std::size_t k = 0; k < a->sqrt_args.size(); ++k)
        if (!(a->sqrt_args[k] == b->sqrt_args[k])) fail(Errc::Internal, "incompatible sqrt atoms");
    return b;
}

} // namespace

RatFunc rf_add(const RatFunc& a, const RatFunc& b) {
    return rf_canonical(a.num * b.den + b.num * a.den, a.den * b.den, merge_ctx(a.ctx, b.ctx));
}

RatFunc rf_sub(const RatFunc& a, const RatFunc& b) {
    return rf_canonical(a.num * b.den - b.num * a.den, a.den * b.den, merge_ctx(a.ctx, b.ctx));
}

RatFunc rf_neg(const RatFunc& a) { return RatFunc{-a.num, a.den, a.ctx}; }

RatFunc rf_mul(const RatFunc& a, const RatFunc& b) {
    return rf_canonical(a.num * b.num, a.den * b.den, merge_ctx(a.ctx, b.ctx));
}

RatFunc rf_inv(const RatFunc& a) {
    if (a.num.is_zero()) fail(Errc::DivisionByZeroPolynomial, "inverse of the zero rational function");
    return rf_canonical(a.den, a.num, a.ctx);
}

bool rf_equal(const RatFunc& a, const RatFunc& b) {
    return (a.num * b.den - b.num * a.den).is_zero();
}

std::complex<double> rf_eval(const RatFunc& f, const std::vector<std::complex<double>>& point,
                             const EvalOptions& opt) {
    int n = f.ctx ? f.ctx->n : static_cast<int>(f.num.width / 2);
    std::vector<std::complex<double>> slots(f.num.width);
    for (int j = 0; j < n; ++j) {
        std::complex<double> v = point.at(static_cast<std::size_t>(j));
        slots[2 * static_cast<std::size_t>(j)] = v;
        slots[2 * static_cast<std::size_t>(j) + 1] = std::conj(v);
    }
    if (f.ctx) {
        for (std::size_t k = 0; k < f.ctx->sqrt_args.size(); ++k) {
            std::vector<std::complex<double>> zslots(slots.begin(), slots.begin() + 2 * n);
            std::complex<double> u = poly_eval(f.ctx->sqrt_args[k], zslots);
            double scale = std::max(1.0, std::abs(u));
            if (std::abs(u.imag()) > opt.sqrt_imag_tol * scale || u.real() < -opt.sqrt_imag_tol)
                fail(Errc::NegativeSqrtArgument, "sqrt atom argument not a nonnegative real at point");
            slots[2 * static_cast<std::size_t>(n) + k] = std::sqrt(std::max(u.real(), 0.0));
        }
    }
    std::complex<double> den = poly_eval(f.den, slots);
    if (std::abs(den) < opt.pole_tol) fail(Errc::PoleAtPoint, "denominator vanishes at point");
    return poly_eval(f.num, slots) / den;
}

std::string poly_print(const Poly& p, const AlgCtxPtr& ctx) {
    if (p.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    int n = ctx ? ctx->n : static_cast<int>(p.width / 2);
    for (const auto& [e, c] : p.terms) {
        std::string coeff = c.str();
        bool neg = false;
        Scalar cc = c;
        if (c.im == 0 && c.re < 0) {
            neg = true;
            cc = -c;
            coeff = cc.str();
        }
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        first = false;
        std::vector<std::string> factors;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (!e[k]) continue;
            std::string name;
            if (k < static_cast<std::size_t>(2 * n)) {
                int j = static_cast<int>(k / 2) + 1;
                name = (k % 2 ? "zbar" : "z") + std::to_string(j);
            } else {
                name = "sqrt(" + poly_print(ctx->sqrt_args.at(k - 2 * n), nullptr) + ")";
            }
            if (e[k] > 1) name += "^" + std::to_string(e[k]);
            factors.push_back(name);
        }
        if (factors.empty()) {
            os << coeff;
        } else {
            bool wrote = false;
            if (!cc.is_one()) {
                os << coeff;
                wrote = true;
            }
            for (auto& f : factors) {
                if (wrote) os << "*";
                os << f;
                wrote = true;
            }
        }
    }
    return os.str();
}

// --- normalization -----------------------------------------------------

namespace {

struct NormCtx {
    int n;
    bool allow_sqrt;
    std::vector<Poly> sqrt_args; // pure-z polys, width 2n
    std::vector<Poly> sqrt_arg_dens; // the denominator q for atoms arising from sqrt(p/q)

    std::uint32_t width() const {
        return static_cast<std::uint32_t>(2 * n + sqrt_args.size());
    }
};

struct RawRat {
    Poly num;
    Poly den;
};

// Reduce atom exponents: s_k^2 -> arg_k.
Poly reduce_atoms(const Poly& p0, const NormCtx& ctx) {
    if (ctx.sqrt_args.empty()) return p0;
    Poly p = p0;
    p.width = std::max(p.width, ctx.width());
    Poly out{p.width, {}};
    for (const auto& [e, c] : p.terms) {
        Exps f = e;
        f.resize(p.width, 0);
        Poly extra = Poly::constant(p.width, Scalar::one());
        bool have_extra = false;
        for (std::size_t k = 0; k < ctx.sqrt_args.size(); ++k) {
            std::size_t slot = 2 * static_cast<std::size_t>(ctx.n) + k;
            if (f[slot] >= 2) {
                std::uint32_t q = f[slot] / 2;
                f[slot] %= 2;
                Poly argw = ctx.sqrt_args[k];
                argw.width = p.width;
                for (std::uint32_t r = 0; r < q; ++r) {
                    extra = extra * argw;
                    have_extra = true;
                }
            }
        }
        Poly mono{p.width, {}};
        mono.terms.emplace(f, c);
        if (have_extra) mono = mono * extra;
        // recursion guard: arg polynomials contain no atom slots, so one pass
        // suffices
        for (const auto& [e2, c2] : mono.terms) out.add_term(e2, c2);
    }
    return out;
}

Poly mul_reduced(const Poly& a, const Poly& b, const NormCtx& ctx) { return reduce_atoms(a * b, ctx); }

RawRat norm_rec(const Ex& e, NormCtx& ctx);

RawRat norm_sum(const Ex& e, NormCtx& ctx) {
    RawRat acc{Poly::zero(ctx.width()), Poly::constant(ctx.width(), Scalar::one())};
    for (const auto& c : e->ch) {
        RawRat t = norm_rec(c, ctx);
        acc.num = mul_reduced(acc.num, t.den, ctx) + mul_reduced(t.num, acc.den, ctx);
        acc.den = mul_reduced(acc.den, t.den, ctx);
    }
    return acc;
}

RawRat norm_rec(const Ex& e, NormCtx& ctx) {
    switch (e->kind) {
        case ExKind::Const:
            return {Poly::constant(ctx.width(), e->value), Poly::constant(ctx.width(), Scalar::one())};
        case ExKind::Var: {
            if (e->var_index > ctx.n)
                fail(Errc::IndexOutOfRange, "variable index exceeds dimension in normalization");
            std::uint32_t slot = 2 * static_cast<std::uint32_t>(e->var_index - 1) + (e->var_bar ? 1 : 0);
            return {Poly::variable(ctx.width(), slot), Poly::constant(ctx.width(), Scalar::one())};
        }
        case ExKind::Sum: return norm_sum(e, ctx);
        case ExKind::Prod: {
            RawRat acc{Poly::constant(ctx.width(), Scalar::one()), Poly::constant(ctx.width(), Scalar::one())};
            for (const auto& c : e->ch) {
                RawRat t = norm_rec(c, ctx);
                acc.num = mul_reduced(acc.num, t.num, ctx);
                acc.den = mul_reduced(acc.den, t.den, ctx);
            }
            return acc;
        }
        case ExKind::Neg: {
            RawRat t = norm_rec(e->ch[0], ctx);
            return {-t.num, t.den};
        }
        case ExKind::Inv: {
            RawRat t = norm_rec(e->ch[0], ctx);
            if (t.num.is_zero())
                fail(Errc::DivisionByZeroPolynomial, "inverse of an identically zero expression");
            return {t.den, t.num};
        }
        case ExKind::Sqrt: {
            if (!ctx.allow_sqrt) fail(Errc::SqrtPresent, "square root outside the rational class");
            RawRat t = norm_rec(e->ch[0], ctx);
            // only pure-z arguments are supported (no nested radicals)
            auto pure_z = [&](const Poly& p) {
                for (const auto& [ex_, c_] : p.terms) {
                    (void)c_;
                    for (std::size_t k = 2 * static_cast<std::size_t>(ctx.n); k < ex_.size(); ++k)
                        if (ex_[k]) return false;
                }
                return true;
            };
            if (!pure_z(t.num) || !pure_z(t.den))
                fail(Errc::SqrtPresent, "nested square roots are outside the algebraic class");
            if (t.num.is_zero()) return {Poly::zero(ctx.width()), Poly::constant(ctx.width(), Scalar::one())};
            // sqrt(p/q) = sqrt(p*q)/q
            RatFunc arg = rf_canonical(t.num, t.den, nullptr);
            Scalar cs;
            if (arg.num.is_constant(&cs) && arg.den.is_constant(nullptr)) {
                Scalar q = cs / arg.den.terms.begin()->second;
                if (!q.is_real() || q.re < 0)
                    fail(Errc::InvalidSqrtArgument, "sqrt of a non-real or negative constant");
                if (auto r = rat_sqrt_exact(q.re))
                    return {Poly::constant(ctx.width(), Scalar(*r)), Poly::constant(ctx.width(), Scalar::one())};
            }
            Poly u = arg.num * arg.den; // pure-z, width 2n after canonical
            u.width = static_cast<std::uint32_t>(2 * ctx.n);
            // the restriction: arguments must be self-conjugate (real-valued)
            if (!(poly_conj(u) == u))
                fail(Errc::InvalidSqrtArgument, "sqrt argument is not self-conjugate");
            std::size_t idx = ctx.sqrt_args.size();
            for (std::size_t k = 0; k < ctx.sqrt_args.size(); ++k) {
                if (ctx.sqrt_args[k] == u) {
                    idx = k;
                    break;
                }
            }
            if (idx == ctx.sqrt_args.size()) ctx.sqrt_args.push_back(u);
            // widths of previously produced polys lag behind; widen lazily via
            // add/mul (widen() pads with zeros)
            Poly s = Poly::variable(ctx.width(), static_cast<std::uint32_t>(2 * ctx.n + idx));
            Poly qden = arg.den;
            qden.width = ctx.width();
            return {s, qden};
        }
    }
    fail(Errc::Internal, "bad expression kind");
}

} // namespace

RatFunc normalize_rational(const Ex& e, int n) {
    NormCtx ctx{n, false, {}, {}};
    RawRat r = norm_rec(e, ctx);
    return rf_canonical(std::move(r.num), std::move(r.den), nullptr);
}

RatFunc normalize_algebraic(const Ex& e, int n) {
    NormCtx ctx{n, true, {}, {}};
    RawRat r = norm_rec(e, ctx);
    r.num.width = ctx.width();
    r.den.width = ctx.width();
    AlgCtxPtr actx;
    if (!ctx.sqrt_args.empty()) {
        auto a = std::make_shared<AlgCtx>();
        a->n = n;
        a->sqrt_args = std::move(ctx.sqrt_args);
        actx = std::move(a);
    }
    return rf_canonical(std::move(r.num), std::move(r.den), std::move(actx));
}

std::optional<bool> exact_zero(const Ex& e, int n) {
    try {
        RatFunc f = normalize_algebraic(e, n);
        if (f.num.is_zero()) return true;
        if (!f.has_sqrt()) return false; // exact nonzero on the rational class
        // a nonzero reduced numerator with sqrt atoms present does not decide
        // the branch-dependent cases (e.g. sqrt(y^2) - y)
        return std::nullopt;
    } catch (const Error& err) {
        if (err.code() == Errc::SqrtPresent) return std::nullopt;
        throw;
    }
}

Ex ex_sqrt_checked(const Ex& arg, int n) {
    if (ex_contains_sqrt(arg)) fail(Errc::SqrtPresent, "nested square roots are not supported");
    Ex diff = arg - ex_conj(arg);
    if (!normalize_rational(diff, n).is_zero())
        fail(Errc::InvalidSqrtArgument, "sqrt argument must be self-conjugate");
    return ex_sqrt(arg);
}

Ex poly_to_ex(const Poly& p, const AlgCtxPtr& ctx) {
    int n = ctx ? ctx->n : static_cast<int>(p.width / 2);
    std::vector<Ex> terms;
    for (const auto& [e, c] : p.terms) {
        std::vector<Ex> fs;
        fs.push_back(ex_const(c));
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (!e[k]) continue;
            Ex v;
            if (k < static_cast<std::size_t>(2 * n)) {
                int j = static_cast<int>(k / 2) + 1;
                v = (k % 2) ? ex_varbar(j) : ex_var(j);
            } else {
                v = ex_sqrt(poly_to_ex(ctx->sqrt_args.at(k - 2 * n), nullptr));
            }
            fs.push_back(ex_pow(v, e[k]));
        }
        terms.push_back(ex_prod(std::move(fs)));
    }
    return ex_sum(std::move(terms));
}

Ex rf_to_ex(const RatFunc& f) {
    Ex num = poly_to_ex(f.num, f.ctx);
    Scalar dc;
    if (f.den.is_constant(&dc)) {
        if (dc.is_one()) return num;
        return ex_prod({ex_const(dc.inverse()), num});
    }
    return ex_prod({num, ex_inv(poly_to_ex(f.den, f.ctx))});
}

} // namespace crp
