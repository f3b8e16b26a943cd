#include "frames.hpp"

#include <cmath>

namespace crp {

VectorField VectorField::zero(int n) {
    VectorField v;
    v.n = n;
    v.dz.assign(static_cast<std::size_t>(n), ex_int(0));
    v.dzbar.assign(static_cast<std::size_t>(n), ex_int(0));
    return v;
}

VectorField VectorField::holo(int n, int j) {
    VectorField v = zero(n);
    v.dz[static_cast<std::size_t>(j - 1)] = ex_int(1);
    return v;
}

VectorField VectorField::anti(int n, int j) {
    VectorField v = zero(n);
    v.dzbar[static_cast<std::size_t>(j - 1)] = ex_int(1);
    return v;
}

bool VectorField::has_sqrt() const {
    for (const auto& e : dz)
        if (ex_contains_sqrt(e)) return true;
    for (const auto& e : dzbar)
        if (ex_contains_sqrt(e)) return true;
    return false;
}

VectorField vf_add(const VectorField& a, const VectorField& b) {
    VectorField out = VectorField::zero(a.n);
    for (int j = 0; j < a.n; ++j) {
        out.dz[j] = a.dz[j] + b.dz[j];
        out.dzbar[j] = a.dzbar[j] + b.dzbar[j];
    }
    return out;
}

VectorField vf_sub(const VectorField& a, const VectorField& b) {
    VectorField out = VectorField::zero(a.n);
    for (int j = 0; j < a.n; ++j) {
        out.dz[j] = a.dz[j] - b.dz[j];
        out.dzbar[j] = a.dzbar[j] - b.dzbar[j];
    }
    return out;
}

VectorField vf_scale(const Ex& s, const VectorField& a) {
    VectorField out = VectorField::zero(a.n);
    for (int j = 0; j < a.n; ++j) {
        out.dz[j] = s * a.dz[j];
        out.dzbar[j] = s * a.dzbar[j];
    }
    return out;
}

VectorField vf_conj(const VectorField& a) {
    VectorField out = VectorField::zero(a.n);
    for (int j = 0; j < a.n; ++j) {
        out.dz[j] = ex_conj(a.dzbar[j]);
        out.dzbar[j] = ex_conj(a.dz[j]);
    }
    return out;
}

Ex vf_apply(const VectorField& X, const Ex& g) {
    std::vector<Ex> terms;
    for (int j = 1; j <= X.n; ++j) {
        if (!ex_is_zero_literal(X.dz_at(j))) terms.push_back(X.dz_at(j) * ex_wirtinger(g, j, false));
        if (!ex_is_zero_literal(X.dzbar_at(j))) terms.push_back(X.dzbar_at(j) * ex_wirtinger(g, j, true));
    }
    return ex_sum(std::move(terms));
}

VectorField apply_structure(const StructureMatrix& J, const VectorField& X) {
    if (J.n != X.n) fail(Errc::BadInput, "dimension mismatch");
    VectorField out = VectorField::zero(X.n);
    auto comp = [&](int slot) -> const Ex& {
        // slot is 1-based: 2j-1 -> dz_j, 2j -> dzbar_j
        int j = (slot + 1) / 2;
        return (slot % 2 == 1) ? X.dz_at(j) : X.dzbar_at(j);
    };
    for (int r = 1; r <= 2 * X.n; ++r) {
        std::vector<Ex> acc;
        for (int c = 1; c <= 2 * X.n; ++c) {
            const Ex& a = J.at(r, c);
            const Ex& v = comp(c);
            if (ex_is_zero_literal(a) || ex_is_zero_literal(v)) continue;
            acc.push_back(a * v);
        }
        Ex val = ex_sum(std::move(acc));
        int j = (r + 1) / 2;
        if (r % 2 == 1) out.dz[static_cast<std::size_t>(j - 1)] = std::move(val);
        else out.dzbar[static_cast<std::size_t>(j - 1)] = std::move(val);
    }
    return out;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    if (X.n != Y.n) fail(Errc::BadInput, "dimension mismatch");
    VectorField out = VectorField::zero(X.n);
    for (int j = 0; j < X.n; ++j) {
        out.dz[j] = vf_apply(X, Y.dz[j]) - vf_apply(Y, X.dz[j]);
        out.dzbar[j] = vf_apply(X, Y.dzbar[j]) - vf_apply(Y, X.dzbar[j]);
    }
    return out;
}

std::vector<std::complex<double>> vf_eval(const VectorField& X,
                                          const std::vector<std::complex<double>>& p) {
    std::vector<std::complex<double>> out(static_cast<std::size_t>(2 * X.n));
    for (int j = 0; j < X.n; ++j) {
        out[2 * static_cast<std::size_t>(j)] = ex_eval(X.dz[j], p);
        out[2 * static_cast<std::size_t>(j) + 1] = ex_eval(X.dzbar[j], p);
    }
    return out;
}

Ex model_beta(const ModelSpec& spec, int j) {
    // -i/2 * Lt_{2n,2j-1}
    return ex_const(Scalar(Rat(0), Rat(-1) / 2)) * spec.linear_form(j);
}

Ex model_alpha(const ModelSpec& spec, int j) {
    return ex_neg(model_beta(spec, j)) - ex_int(2) * ex_varbar(j);
}

Frame build_model_frame(const ModelSpec& spec) {
    Frame f;
    f.n = spec.n;
    f.tag = FrameTag::ModelOnSiegel;
    for (int j = 1; j <= spec.n - 1; ++j) {
        VectorField L = VectorField::holo(spec.n, j);
        L.dz[static_cast<std::size_t>(spec.n - 1)] = model_alpha(spec, j);
        L.dzbar[static_cast<std::size_t>(spec.n - 1)] = model_beta(spec, j);
        f.L.push_back(std::move(L));
    }
    VectorField T = VectorField::zero(spec.n);
    T.dz[static_cast<std::size_t>(spec.n - 1)] = ex_i();
    T.dzbar[static_cast<std::size_t>(spec.n - 1)] = ex_neg(ex_i());
    f.T = std::move(T);
    return f;
}

std::vector<VectorField> build_star_frame(const StarSpec& spec, const IsZeroOptions& opt) {
    auto rep = star_constraint_report(spec, opt);
    if (!rep.all_zero) {
        std::string msg = "structure does not satisfy the last-two-rows constraints:";
        for (const auto& [label, v] : rep.nonzero) {
            msg += " " + label;
            (void)v;
        }
        fail(Errc::ConstraintViolated, msg);
    }
    const int n = spec.n;
    std::vector<VectorField> Xs;
    Ex mhalf_i = ex_const(Scalar(Rat(0), Rat(-1) / 2));
    for (int i = 1; i <= n - 1; ++i) {
        VectorField X = VectorField::holo(n, i);
        X.dz[static_cast<std::size_t>(n - 1)] = mhalf_i * spec.lt(2 * i - 1);
        X.dzbar[static_cast<std::size_t>(n - 1)] = mhalf_i * ex_conj(spec.lt(2 * i));
        Xs.push_back(std::move(X));
    }
    VectorField Xn = VectorField::holo(n, n);
    Xn.dzbar[static_cast<std::size_t>(n - 1)] =
        ex_conj(spec.lt(2 * n)) * ex_inv(ex_int(2) * ex_i() - ex_conj(spec.lt(2 * n - 1)));
    Xs.push_back(std::move(Xn));
    return Xs;
}

std::vector<VectorField> build_block_frame(const StructureMatrix& J, const IsZeroOptions& opt) {
    const int n = J.n;
    // verify block-diagonal shape
    for (int r = 1; r <= 2 * n; ++r) {
        for (int c = 1; c <= 2 * n; ++c) {
            if ((r + 1) / 2 == (c + 1) / 2) continue;
            if (!is_zero(J.at(r, c), n, opt).holds())
                fail(Errc::BadInput, "structure is not 2x2 block diagonal");
        }
    }
    std::vector<VectorField> Xs;
    for (int j = 1; j <= n; ++j) {
        Ex a = J.at(2 * j - 1, 2 * j - 1) - ex_i(); // i + a on the diagonal
        Ex b = J.at(2 * j - 1, 2 * j);
        VectorField X = VectorField::holo(n, j);
        if (is_zero(b, n, opt).holds()) {
            if (!is_zero(a, n, opt).holds())
                fail(Errc::BadInput, "block has no (1,0) eigenfield of graph form");
            // standard block: X_j = d/dz_j
        } else {
            X.dzbar[static_cast<std::size_t>(j - 1)] =
                ex_conj(b) * ex_inv(ex_int(2) * ex_i() - ex_conj(a));
        }
        // eigencheck J X = i X
        VectorField r = vf_sub(apply_structure(J, X), vf_scale(ex_i(), X));
        for (int k = 1; k <= n; ++k) {
            if (!is_zero(r.dz_at(k), n, opt).holds() || !is_zero(r.dzbar_at(k), n, opt).holds())
                fail(Errc::ConstraintViolated, "block eigenfield check failed");
        }
        Xs.push_back(std::move(X));
    }
    return Xs;
}

std::vector<VectorField> ambient_frame(const LoadedStructure& s, const IsZeroOptions& opt) {
    switch (s.kind) {
        case StructKind::Standard: {
            std::vector<VectorField> Xs;
            for (int j = 1; j <= s.n; ++j) Xs.push_back(VectorField::holo(s.n, j));
            return Xs;
        }
        case StructKind::Model: {
            // a model structure satisfies the star shape with zero diagonal
            // perturbation: reuse the star frame
            StarSpec star = StarSpec::zero(s.n);
            for (int j = 1; j <= s.n - 1; ++j)
                star.entries[static_cast<std::size_t>(2 * j - 1)] = ex_conj(s.model->linear_form(j));
            return build_star_frame(star, opt);
        }
        case StructKind::Star: return build_star_frame(*s.star, opt);
        case StructKind::Raw: return build_block_frame(s.matrix, opt);
    }
    fail(Errc::Internal, "bad structure kind");
}

// --- linear solving over the rational function field --------------------

namespace {

struct RfMatrix {
    int rows = 0, cols = 0;
    std::vector<RatFunc> a; // row-major

    RatFunc& at(int r, int c) { return a[static_cast<std::size_t>(r * cols + c)]; }
    const RatFunc& at(int r, int c) const { return a[static_cast<std::size_t>(r * cols + c)]; }
};

RatFunc rf_zero(int n) {
    return rf_canonical(Poly::zero(static_cast<std::uint32_t>(2 * n)),
                        Poly::constant(static_cast<std::uint32_t>(2 * n), Scalar::one()), nullptr);
}

RatFunc to_rf(const Ex& e, int n) {
    try {
        return normalize_rational(e, n);
    } catch (const Error& err) {
        if (err.code() == Errc::SqrtPresent)
            fail(Errc::SqrtCoefficientsUnsupported,
                 "frame coefficients contain square roots; use the pointwise numeric path");
        throw;
    }
}

// Gaussian elimination with exact arithmetic; pivot = first structurally
// nonzero entry in the column.  Returns solution when consistent; the
// residual rows otherwise.
struct SolveResult {
    bool consistent = true;
    std::vector<RatFunc> x;
};

SolveResult solve_rf(RfMatrix M, std::vector<RatFunc> rhs, int n) {
    const int R = M.rows, C = M.cols;
    std::vector<int> pivot_row_of_col(static_cast<std::size_t>(C), -1);
    int prow = 0;
    for (int c = 0; c < C && prow < R; ++c) {
        int pr = -1;
        for (int r = prow; r < R; ++r) {
            if (!M.at(r, c).is_zero()) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        std::swap_ranges(M.a.begin() + pr * C, M.a.begin() + (pr + 1) * C, M.a.begin() + prow * C);
        std::swap(rhs[static_cast<std::size_t>(pr)], rhs[static_cast<std::size_t>(prow)]);
        RatFunc inv = rf_inv(M.at(prow, c));
        for (int cc = c; cc < C; ++cc) M.at(prow, cc) = rf_mul(M.at(prow, cc), inv);
        rhs[static_cast<std::size_t>(prow)] = rf_mul(rhs[static_cast<std::size_t>(prow)], inv);
        for (int r = 0; r < R; ++r) {
            if (r == prow || M.at(r, c).is_zero()) continue;
            RatFunc f = M.at(r, c);
            for (int cc = c; cc < C; ++cc)
                M.at(r, cc) = rf_sub(M.at(r, cc), rf_mul(f, M.at(prow, cc)));
            rhs[static_cast<std::size_t>(r)] = rf_sub(rhs[static_cast<std::size_t>(r)], rf_mul(f, rhs[static_cast<std::size_t>(prow)]));
        }
        pivot_row_of_col[static_cast<std::size_t>(c)] = prow;
        ++prow;
    }
    SolveResult res;
    res.x.assign(static_cast<std::size_t>(C), rf_zero(n));
    for (int c = 0; c < C; ++c) {
        int r = pivot_row_of_col[static_cast<std::size_t>(c)];
        if (r >= 0) res.x[static_cast<std::size_t>(c)] = rhs[static_cast<std::size_t>(r)];
    }
    for (int r = prow; r < R; ++r)
        if (!rhs[static_cast<std::size_t>(r)].is_zero()) res.consistent = false;
    return res;
}

std::vector<RatFunc> field_column(const VectorField& X, int n) {
    std::vector<RatFunc> col;
    col.reserve(static_cast<std::size_t>(2 * n));
    for (int j = 1; j <= n; ++j) {
        col.push_back(to_rf(X.dz_at(j), n));
        col.push_back(to_rf(X.dzbar_at(j), n));
    }
    return col;
}

SolveResult decompose_generic(const VectorField& Y, const std::vector<VectorField>& fields, int n) {
    RfMatrix M;
    M.rows = 2 * n;
    M.cols = static_cast<int>(fields.size());
    M.a.assign(static_cast<std::size_t>(M.rows * M.cols), rf_zero(n));
    for (int c = 0; c < M.cols; ++c) {
        auto col = field_column(fields[static_cast<std::size_t>(c)], n);
        for (int r = 0; r < M.rows; ++r) M.at(r, c) = col[static_cast<std::size_t>(r)];
    }
    std::vector<RatFunc> rhs = field_column(Y, n);
    // pointwise independence near 0 is checked numerically at the origin
    std::vector<std::complex<double>> origin(static_cast<std::size_t>(n), {0.0, 0.0});
    std::vector<std::complex<double>> probe;
    for (const auto& f : fields) {
        auto v = vf_eval(f, origin);
        probe.insert(probe.end(), v.begin(), v.end());
    }
    // rank check at 0 via numeric elimination
    {
        int rows = 2 * n, cols = static_cast<int>(fields.size());
        std::vector<std::complex<double>> A(probe); // cols-major blocks of length rows
        std::vector<int> used(static_cast<std::size_t>(rows), 0);
        int rank = 0;
        for (int c = 0; c < cols; ++c) {
            int best = -1;
            double bestmag = 1e-9;
            for (int r = 0; r < rows; ++r) {
                if (used[static_cast<std::size_t>(r)]) continue;
                double m = std::abs(A[static_cast<std::size_t>(c * rows + r)]);
                if (m > bestmag) {
                    bestmag = m;
                    best = r;
                }
            }
            if (best < 0) continue;
            used[static_cast<std::size_t>(best)] = 1;
            ++rank;
            std::complex<double> piv = A[static_cast<std::size_t>(c * rows + best)];
            for (int c2 = c + 1; c2 < cols; ++c2) {
                std::complex<double> f = A[static_cast<std::size_t>(c2 * rows + best)] / piv;
                for (int r = 0; r < rows; ++r)
                    A[static_cast<std::size_t>(c2 * rows + r)] -= f * A[static_cast<std::size_t>(c * rows + r)];
            }
        }
        if (rank < cols) fail(Errc::SingularFrameAt0, "frame fields are dependent at the origin");
    }
    return solve_rf(std::move(M), std::move(rhs), n);
}

} // namespace

FrameDecomposition decompose_in_frame(const VectorField& Y, const Frame& frame) {
    const int n = frame.n;
    std::vector<VectorField> fields;
    fields.push_back(frame.T);
    for (const auto& L : frame.L) fields.push_back(L);
    for (const auto& L : frame.L) fields.push_back(vf_conj(L));
    SolveResult sol = decompose_generic(Y, fields, n);

    FrameDecomposition out;
    out.gamma = rf_to_ex(sol.x[0]);
    for (int l = 0; l < n - 1; ++l) out.a_coeffs.push_back(rf_to_ex(sol.x[static_cast<std::size_t>(1 + l)]));
    for (int l = 0; l < n - 1; ++l)
        out.b_coeffs.push_back(rf_to_ex(sol.x[static_cast<std::size_t>(n + l)]));
    // residual = Y - (gamma T + sum a_l L_l + sum b_l conj L_l)
    VectorField combo = vf_scale(out.gamma, frame.T);
    for (int l = 0; l < n - 1; ++l) {
        combo = vf_add(combo, vf_scale(out.a_coeffs[static_cast<std::size_t>(l)], frame.L[static_cast<std::size_t>(l)]));
        combo = vf_add(combo, vf_scale(out.b_coeffs[static_cast<std::size_t>(l)], vf_conj(frame.L[static_cast<std::size_t>(l)])));
    }
    out.residual = vf_sub(Y, combo);
    if (sol.consistent) {
        // normalize the residual to literal zeros
        for (int j = 0; j < n; ++j) {
            out.residual.dz[static_cast<std::size_t>(j)] =
                normalize_rational(out.residual.dz[static_cast<std::size_t>(j)], n).is_zero()
                    ? ex_int(0)
                    : out.residual.dz[static_cast<std::size_t>(j)];
            out.residual.dzbar[static_cast<std::size_t>(j)] =
                normalize_rational(out.residual.dzbar[static_cast<std::size_t>(j)], n).is_zero()
                    ? ex_int(0)
                    : out.residual.dzbar[static_cast<std::size_t>(j)];
        }
    }
    return out;
}

std::vector<Ex> decompose_in_ambient(const VectorField& Y, const std::vector<VectorField>& Xs) {
    const int n = Y.n;
    std::vector<VectorField> fields = Xs;
    for (const auto& X : Xs) fields.push_back(vf_conj(X));
    SolveResult sol = decompose_generic(Y, fields, n);
    if (!sol.consistent) fail(Errc::SingularFrameAt0, "ambient frame does not span");
    std::vector<Ex> out;
    out.reserve(sol.x.size());
    for (auto& f : sol.x) out.push_back(rf_to_ex(f));
    return out;
}

std::vector<std::complex<double>> decompose_in_ambient_at(const VectorField& Y,
                                                          const std::vector<VectorField>& Xs,
                                                          const std::vector<std::complex<double>>& p) {
    using C = std::complex<double>;
    const int n = Y.n;
    const int m = 2 * n;
    std::vector<C> A(static_cast<std::size_t>(m * m));
    std::vector<C> b = vf_eval(Y, p);
    for (int c = 0; c < m; ++c) {
        const VectorField& X = static_cast<std::size_t>(c) < Xs.size()
                                   ? Xs[static_cast<std::size_t>(c)]
                                   : Xs[static_cast<std::size_t>(c - n)];
        std::vector<C> col = static_cast<std::size_t>(c) < Xs.size() ? vf_eval(X, p)
                                                                     : vf_eval(vf_conj(X), p);
        for (int r = 0; r < m; ++r) A[static_cast<std::size_t>(r * m + c)] = col[static_cast<std::size_t>(r)];
    }
    // partial-pivot elimination
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int c = 0; c < m; ++c) {
        int best = c;
        double mag = std::abs(A[static_cast<std::size_t>(c * m + c)]);
        for (int r = c + 1; r < m; ++r) {
            double v = std::abs(A[static_cast<std::size_t>(r * m + c)]);
            if (v > mag) {
                mag = v;
                best = r;
            }
        }
        if (mag < 1e-12) fail(Errc::SingularFrameAt0, "frame matrix is singular at the sample point");
        if (best != c) {
            for (int cc = 0; cc < m; ++cc)
                std::swap(A[static_cast<std::size_t>(best * m + cc)], A[static_cast<std::size_t>(c * m + cc)]);
            std::swap(b[static_cast<std::size_t>(best)], b[static_cast<std::size_t>(c)]);
        }
        C piv = A[static_cast<std::size_t>(c * m + c)];
        for (int r = 0; r < m; ++r) {
            if (r == c) continue;
            C f = A[static_cast<std::size_t>(r * m + c)] / piv;
            if (f == C{0.0, 0.0}) continue;
            for (int cc = c; cc < m; ++cc)
                A[static_cast<std::size_t>(r * m + cc)] -= f * A[static_cast<std::size_t>(c * m + cc)];
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(c)];
        }
    }
    std::vector<C> x(static_cast<std::size_t>(m));
    for (int c = 0; c < m; ++c) x[static_cast<std::size_t>(c)] = b[static_cast<std::size_t>(c)] / A[static_cast<std::size_t>(c * m + c)];
    return x;
}

std::vector<Ex> defect_projection(const std::vector<VectorField>& Xs, int j, int k) {
    const int n = static_cast<int>(Xs.size());
    VectorField B = lie_bracket(Xs[static_cast<std::size_t>(j - 1)], Xs[static_cast<std::size_t>(k - 1)]);
    std::vector<Ex> all = decompose_in_ambient(B, Xs);
    return std::vector<Ex>(all.begin() + n, all.end());
}

std::vector<std::complex<double>> defect_projection_at(const std::vector<VectorField>& Xs, int j,
                                                       int k,
                                                       const std::vector<std::complex<double>>& p) {
    const int n = static_cast<int>(Xs.size());
    VectorField B = lie_bracket(Xs[static_cast<std::size_t>(j - 1)], Xs[static_cast<std::size_t>(k - 1)]);
    auto all = decompose_in_ambient_at(B, Xs, p);
    return std::vector<std::complex<double>>(all.begin() + n, all.end());
}

ModelBracketConstants model_bracket_constants(const ModelSpec& spec) {
    const int n = spec.n;
    Frame f = build_model_frame(spec);
    ModelBracketConstants out;
    out.n = n;
    out.gamma.assign(static_cast<std::size_t>(n - 1), std::vector<Scalar>(static_cast<std::size_t>(n - 1)));
    out.c = out.gamma;
    auto constant_gamma = [&](const FrameDecomposition& dec, const char* what) -> Scalar {
        for (const auto& a : dec.a_coeffs)
            if (!normalize_rational(a, n).is_zero())
                fail(Errc::Internal, std::string(what) + ": unexpected L component");
        for (const auto& b : dec.b_coeffs)
            if (!normalize_rational(b, n).is_zero())
                fail(Errc::Internal, std::string(what) + ": unexpected conj(L) component");
        for (int j = 1; j <= n; ++j) {
            if (!normalize_rational(dec.residual.dz_at(j), n).is_zero() ||
                !normalize_rational(dec.residual.dzbar_at(j), n).is_zero())
                fail(Errc::Internal, std::string(what) + ": nonzero residual");
        }
        RatFunc g = normalize_rational(dec.gamma, n);
        Scalar num, den;
        if (!g.num.is_constant(&num) || !g.den.is_constant(&den))
            fail(Errc::Internal, std::string(what) + ": coefficient of T is not constant");
        return num / den;
    };
    for (int j = 1; j <= n - 1; ++j) {
        for (int k = 1; k <= n - 1; ++k) {
            VectorField br = lie_bracket(f.L[static_cast<std::size_t>(j - 1)],
                                         vf_conj(f.L[static_cast<std::size_t>(k - 1)]));
            out.gamma[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)] =
                constant_gamma(decompose_in_frame(br, f), "[L_j, conj(L_k)]");
            VectorField br2 = lie_bracket(f.L[static_cast<std::size_t>(j - 1)],
                                          f.L[static_cast<std::size_t>(k - 1)]);
            out.c[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)] =
                constant_gamma(decompose_in_frame(br2, f), "[L_j, L_k]");
        }
    }
    return out;
}

// --- hypersurfaces -------------------------------------------------------

Hypersurface Hypersurface::siegel(int n) {
    Hypersurface h;
    h.n = n;
    std::vector<Ex> terms;
    terms.push_back(ex_rat(Rat(1) / 2) * (ex_var(n) + ex_varbar(n)));
    for (int l = 1; l <= n - 1; ++l) terms.push_back(ex_var(l) * ex_varbar(l));
    h.rho = ex_sum(std::move(terms));
    std::vector<Ex> g;
    g.push_back(ex_neg(ex_var(n)));
    for (int l = 1; l <= n - 1; ++l) g.push_back(ex_int(-2) * ex_var(l) * ex_varbar(l));
    h.graph_rhs = ex_sum(std::move(g));
    h.exact_graph = true;
    return h;
}

Hypersurface Hypersurface::from_rho(int n, const Ex& rho, int trunc_order) {
    if (!normalize_rational(rho - ex_conj(rho), n).is_zero())
        fail(Errc::BadInput, "defining function must be real-valued");
    RatFunc f = normalize_rational(rho, n);
    Scalar dc;
    if (!f.den.is_constant(&dc)) fail(Errc::BadInput, "defining function must be polynomial");
    // solve rho = (z_n + zbar_n)/2 + R = 0 for zbar_n by iteration
    Ex R = rho - ex_rat(Rat(1) / 2) * (ex_var(n) + ex_varbar(n));
    // normalization d rho/d zbar_n (0) = 1/2, i.e. R has no linear zbar_n term
    {
        Ex d = ex_wirtinger(R, n, true);
        RatFunc d0 = normalize_rational(d, n);
        Exps zero_e(d0.num.width, 0);
        if (d0.num.terms.count(zero_e))
            fail(Errc::BadInput, "defining function must have d rho/d zbar_n = 1/2 at 0");
    }
    Hypersurface h;
    h.n = n;
    h.rho = rho;
    h.trunc_order = trunc_order;
    Ex g = ex_neg(ex_var(n));
    for (int it = 0; it <= trunc_order + 1; ++it) {
        std::vector<Ex> subs(static_cast<std::size_t>(2 * n));
        subs[static_cast<std::size_t>(2 * n - 1)] = g;
        Ex next = ex_neg(ex_var(n)) - ex_int(2) * ex_subst(R, subs);
        RatFunc fn = normalize_rational(next, n);
        Poly cut = poly_truncate(fn.num, static_cast<std::uint32_t>(trunc_order));
        Scalar c1;
        if (!fn.den.is_constant(&c1)) fail(Errc::BadInput, "graph iteration produced a denominator");
        next = poly_to_ex(poly_scale(cut, c1.inverse()), nullptr);
        if (normalize_rational(next - g, n).is_zero()) {
            g = next;
            break;
        }
        g = next;
    }
    h.graph_rhs = g;
    // exact when substituting back kills rho entirely
    std::vector<Ex> subs(static_cast<std::size_t>(2 * n));
    subs[static_cast<std::size_t>(2 * n - 1)] = g;
    h.exact_graph = normalize_rational(ex_subst(rho, subs), n).is_zero();
    return h;
}

Ex Hypersurface::reduce(const Ex& e) const {
    std::vector<Ex> subs(static_cast<std::size_t>(2 * n));
    subs[static_cast<std::size_t>(2 * n - 1)] = graph_rhs;
    return ex_subst(e, subs);
}

ZeroVerdict reduced_zero(const Hypersurface& G, const Ex& e, const IsZeroOptions& opt) {
    Ex red = G.reduce(e);
    if (G.exact_graph) return is_zero(red, G.n, opt);
    // on a truncated reduction only degrees <= trunc_order are meaningful
    try {
        RatFunc f = normalize_rational(red, G.n);
        Poly low = poly_truncate(f.num, static_cast<std::uint32_t>(G.trunc_order));
        if (low.is_zero()) {
            if ((f.num - low).is_zero()) return {ZeroKind::ExactZero, {}, {}};
            fail(Errc::ReductionOrderInsufficient,
                 "residual vanishes up to the truncation order only; raise the truncation order");
        }
        return is_zero(poly_to_ex(low, nullptr), G.n, opt);
    } catch (const Error& err) {
        if (err.code() == Errc::SqrtPresent) return is_zero(red, G.n, opt);
        throw;
    }
}

double levi_form_fd(const StructureMatrix& J, const Hypersurface& G, const VectorField& Lsec,
                    const std::vector<std::complex<double>>& p, double h) {
    using C = std::complex<double>;
    const int n = G.n;
    VectorField X = vf_add(Lsec, vf_conj(Lsec));
    VectorField JX = apply_structure(J, X);
    // central-difference Wirtinger derivative of a coefficient expression
    auto fdw = [&](const Ex& e, const std::vector<C>& q, int j, bool bar) {
        std::vector<C> px = q, mx = q, py = q, my = q;
        px[static_cast<std::size_t>(j - 1)] += C{h, 0};
        mx[static_cast<std::size_t>(j - 1)] -= C{h, 0};
        py[static_cast<std::size_t>(j - 1)] += C{0, h};
        my[static_cast<std::size_t>(j - 1)] -= C{0, h};
        C dx = (ex_eval(e, px) - ex_eval(e, mx)) / (2 * h);
        C dy = (ex_eval(e, py) - ex_eval(e, my)) / (2 * h);
        return bar ? (dx + C{0, 1} * dy) / 2.0 : (dx - C{0, 1} * dy) / 2.0;
    };
    auto coeff = [&](const VectorField& W, int slot) -> const Ex& {
        int j = slot / 2 + 1;
        return (slot % 2 == 0) ? W.dz_at(j) : W.dzbar_at(j);
    };
    // bracket coefficients of [X, JX] at p, all derivatives by differences
    std::vector<C> bracket(static_cast<std::size_t>(2 * n));
    for (int slot = 0; slot < 2 * n; ++slot) {
        C acc{0, 0};
        for (int l = 1; l <= n; ++l) {
            acc += ex_eval(X.dz_at(l), p) * fdw(coeff(JX, slot), p, l, false);
            acc += ex_eval(X.dzbar_at(l), p) * fdw(coeff(JX, slot), p, l, true);
            acc -= ex_eval(JX.dz_at(l), p) * fdw(coeff(X, slot), p, l, false);
            acc -= ex_eval(JX.dzbar_at(l), p) * fdw(coeff(X, slot), p, l, true);
        }
        bracket[static_cast<std::size_t>(slot)] = acc;
    }
    // J applied to the bracket, paired with d rho (also by differences)
    C val{0, 0};
    for (int r = 1; r <= 2 * n; ++r) {
        C jb{0, 0};
        for (int c = 1; c <= 2 * n; ++c)
            jb += ex_eval(J.at(r, c), p) * bracket[static_cast<std::size_t>(c - 1)];
        int j = (r + 1) / 2;
        C rho_d = fdw(G.rho, p, j, r % 2 == 0);
        val += jb * rho_d;
    }
    return val.real();
}

double levi_form(const StructureMatrix& J, const Hypersurface& G, const VectorField& Lsec,
                 const std::vector<std::complex<double>>& p, const LeviOptions& opt) {
    std::complex<double> rho_p = ex_eval(G.rho, p);
    if (std::abs(rho_p) > opt.surface_tol) fail(Errc::NotOnSurface, "point is not on the hypersurface");
    VectorField X = vf_add(Lsec, vf_conj(Lsec));
    std::complex<double> xr = ex_eval(vf_apply(X, G.rho), p);
    if (std::abs(xr) > opt.tangent_tol) fail(Errc::NotTangent, "section is not tangent at the point");
    VectorField JX = apply_structure(J, X);
    VectorField B = lie_bracket(X, JX);
    VectorField JB = apply_structure(J, B);
    std::complex<double> val{0.0, 0.0};
    for (int j = 1; j <= G.n; ++j) {
        val += ex_eval(JB.dz_at(j), p) * ex_eval(ex_wirtinger(G.rho, j, false), p);
        val += ex_eval(JB.dzbar_at(j), p) * ex_eval(ex_wirtinger(G.rho, j, true), p);
    }
    if (std::abs(val.imag()) > opt.imag_tol)
        fail(Errc::Internal, "Levi form value has a non-real part beyond tolerance");
    return val.real();
}

} // namespace crp
