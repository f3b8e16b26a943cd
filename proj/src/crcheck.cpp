#include "crcheck.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace crp {

std::vector<Ex> SymbolicMap::substitution() const {
    std::vector<Ex> subs(static_cast<std::size_t>(2 * n));
    for (int l = 1; l <= n; ++l) {
        subs[static_cast<std::size_t>(2 * (l - 1))] = f(l);
        subs[static_cast<std::size_t>(2 * (l - 1) + 1)] = ex_conj(f(l));
    }
    return subs;
}

bool SymbolicMap::fixes_origin(double tol) const {
    std::vector<std::complex<double>> origin(static_cast<std::size_t>(n), {0.0, 0.0});
    for (int j = 1; j <= n; ++j)
        if (std::abs(ex_eval(f(j), origin)) > tol) return false;
    return true;
}

SymbolicMap identity_map(int n) {
    SymbolicMap m;
    m.n = n;
    m.name = "identity";
    for (int j = 1; j <= n; ++j) m.components.push_back(ex_var(j));
    return m;
}

SymbolicMap dilation_map(int n, const Rat& delta) {
    SymbolicMap m;
    m.n = n;
    m.name = "dilation";
    Ex root;
    if (auto r = rat_sqrt_exact(delta)) {
        root = ex_rat(*r);
    } else {
        if (delta < 0) fail(Errc::BadInput, "dilation parameter must be positive");
        root = ex_sqrt(ex_rat(delta));
    }
    for (int j = 1; j <= n - 1; ++j) m.components.push_back(root * ex_var(j));
    m.components.push_back(ex_rat(delta) * ex_var(n));
    return m;
}

SymbolicMap load_map_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::BadInput, std::string("map file: JSON parse error: ") + e.what());
    }
    if (!j.is_object()) fail(Errc::BadInput, "map file: top level must be an object");
    for (const auto& [key, val] : j.items()) {
        (void)val;
        if (key != "n" && key != "components" && key != "name")
            fail(Errc::BadInput, "map file: unknown key \"" + key + "\"");
    }
    if (!j.contains("n") || !j["n"].is_number_unsigned()) fail(Errc::BadInput, "map file: missing \"n\"");
    SymbolicMap m;
    m.n = j["n"].get<int>();
    if (m.n < 2 || m.n > 16) fail(Errc::BadInput, "map file: n out of supported range");
    if (!j.contains("components") || !j["components"].is_array() ||
        j["components"].size() != static_cast<std::size_t>(m.n))
        fail(Errc::BadInput, "map file: \"components\" must be an array of n expressions");
    for (const auto& c : j["components"]) {
        if (!c.is_string()) fail(Errc::BadInput, "map file: components must be strings");
        m.components.push_back(ex_parse(c.get<std::string>(), m.n));
    }
    if (j.contains("name")) m.name = j["name"].get<std::string>();
    return m;
}

SymbolicMap load_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::BadInput, "cannot open map file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_map_json(ss.str());
}

std::vector<Ex> pseudoholomorphy_residual(const SymbolicMap& f, const StructureMatrix& J,
                                          const StructureMatrix& Jp) {
    if (f.n != J.n || f.n != Jp.n) fail(Errc::BadInput, "dimension mismatch");
    const int n = f.n;
    const int d = 2 * n;
    // complexified differential: rows ordered (f1, fbar1, ..., fn, fbarn),
    // columns (z1, zbar1, ..., zn, zbarn)
    std::vector<Ex> D(static_cast<std::size_t>(d * d));
    auto idx = [&](int r, int c) { return static_cast<std::size_t>((r - 1) * d + (c - 1)); };
    for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= n; ++j) {
            Ex dz = ex_wirtinger(f.f(k), j, false);
            Ex dzb = ex_wirtinger(f.f(k), j, true);
            D[idx(2 * k - 1, 2 * j - 1)] = dz;
            D[idx(2 * k - 1, 2 * j)] = dzb;
            D[idx(2 * k, 2 * j - 1)] = ex_conj(dzb);
            D[idx(2 * k, 2 * j)] = ex_conj(dz);
        }
    }
    auto subs = f.substitution();
    std::vector<Ex> res(static_cast<std::size_t>(d * d));
    for (int r = 1; r <= d; ++r) {
        for (int c = 1; c <= d; ++c) {
            std::vector<Ex> acc;
            for (int k = 1; k <= d; ++k) {
                // (D . J)(r,c)
                const Ex& a = D[idx(r, k)];
                const Ex& b = J.at(k, c);
                if (!ex_is_zero_literal(a) && !ex_is_zero_literal(b)) acc.push_back(a * b);
            }
            for (int k = 1; k <= d; ++k) {
                // (J'(f) . D)(r,c)
                const Ex& a = Jp.at(r, k);
                const Ex& b = D[idx(k, c)];
                if (ex_is_zero_literal(a) || ex_is_zero_literal(b)) continue;
                acc.push_back(ex_neg(ex_subst(a, subs) * b));
            }
            res[idx(r, c)] = ex_sum(std::move(acc));
        }
    }
    return res;
}

CrResiduals cr_residuals(const SymbolicMap& f, const ModelSpec& src, const ModelSpec& tgt,
                         const Hypersurface& gamma_src, const Hypersurface& gamma_tgt) {
    if (f.n != src.n || f.n != tgt.n) fail(Errc::BadInput, "dimension mismatch");
    if (!f.fixes_origin()) fail(Errc::BadInput, "map must fix the origin for the tangential system");
    const int n = f.n;
    Frame frame = build_model_frame(src);
    auto subs = f.substitution();

    CrResiduals out;
    // first family: L_p conj(f_j) = 0
    for (int p = 1; p <= n - 1; ++p) {
        for (int j = 1; j <= n - 1; ++j) {
            Ex r = vf_apply(frame.L[static_cast<std::size_t>(p - 1)], f.fbar(j));
            out.items.emplace_back("cr[" + std::to_string(p) + "," + std::to_string(j) + "]",
                                   gamma_src.reduce(r));
        }
    }
    // second family: L_p conj(f_n) = sum_j beta_j(f) L_p f_j
    for (int p = 1; p <= n - 1; ++p) {
        std::vector<Ex> acc;
        acc.push_back(vf_apply(frame.L[static_cast<std::size_t>(p - 1)], f.fbar(n)));
        for (int j = 1; j <= n - 1; ++j) {
            Ex beta_at_f = ex_subst(model_beta(tgt, j), subs);
            acc.push_back(ex_neg(beta_at_f * vf_apply(frame.L[static_cast<std::size_t>(p - 1)], f.f(j))));
        }
        out.items.emplace_back("cr-bar-n[" + std::to_string(p) + "]", gamma_src.reduce(ex_sum(std::move(acc))));
    }
    // third family: L_p f_n = sum_j alpha_j(f) L_p f_j
    for (int p = 1; p <= n - 1; ++p) {
        std::vector<Ex> acc;
        acc.push_back(vf_apply(frame.L[static_cast<std::size_t>(p - 1)], f.f(n)));
        for (int j = 1; j <= n - 1; ++j) {
            Ex alpha_at_f = ex_subst(model_alpha(tgt, j), subs);
            acc.push_back(ex_neg(alpha_at_f * vf_apply(frame.L[static_cast<std::size_t>(p - 1)], f.f(j))));
        }
        out.items.emplace_back("cr-n[" + std::to_string(p) + "]", gamma_src.reduce(ex_sum(std::move(acc))));
    }
    // surface preservation: rho'(f) = 0 on the source surface
    Ex rho_of_f = ex_subst(gamma_tgt.rho, subs);
    out.items.emplace_back("surface", gamma_src.reduce(rho_of_f));
    return out;
}

CrVerdicts cr_residuals_verdicts(const CrResiduals& res, const Hypersurface& gamma_src,
                                 const IsZeroOptions& opt) {
    CrVerdicts out;
    for (const auto& [label, e] : res.items) {
        ZeroVerdict v;
        if (!gamma_src.exact_graph) {
            // low-order decision only; reduce() was already applied
            RatFunc fr;
            bool rational = true;
            try {
                fr = normalize_rational(e, gamma_src.n);
            } catch (const Error& err) {
                if (err.code() != Errc::SqrtPresent) throw;
                rational = false;
            }
            if (rational) {
                Poly low = poly_truncate(fr.num, static_cast<std::uint32_t>(gamma_src.trunc_order));
                if (low.is_zero() && !(fr.num - low).is_zero())
                    fail(Errc::ReductionOrderInsufficient,
                         "surface reduction order too low to decide residual " + label);
                v = is_zero(poly_to_ex(low, nullptr), gamma_src.n, opt);
            } else {
                v = is_zero(e, gamma_src.n, opt);
            }
        } else {
            v = is_zero(e, gamma_src.n, opt);
        }
        if (v.kind == ZeroKind::NonZero) out.all_zero = false;
        if (v.kind != ZeroKind::ExactZero) out.exact = false;
        out.items.emplace_back(label, std::move(v));
    }
    return out;
}

PushforwardMatrix frame_pushforward_matrix(const SymbolicMap& f, const Frame& source_frame,
                                           const std::vector<std::complex<double>>& p) {
    using C = std::complex<double>;
    const int m = source_frame.n - 1;
    PushforwardMatrix out;
    out.m = m;
    out.a.resize(static_cast<std::size_t>(m * m));
    for (int k = 1; k <= m; ++k)
        for (int j = 1; j <= m; ++j)
            out.a[static_cast<std::size_t>((k - 1) * m + (j - 1))] =
                ex_eval(vf_apply(source_frame.L[static_cast<std::size_t>(k - 1)], f.f(j)), p);

    // 1-norm condition estimate via explicit inversion
    std::vector<C> A = out.a;
    std::vector<C> inv(static_cast<std::size_t>(m * m), C{0, 0});
    for (int i = 0; i < m; ++i) inv[static_cast<std::size_t>(i * m + i)] = C{1, 0};
    bool singular = false;
    for (int c = 0; c < m && !singular; ++c) {
        int best = c;
        double mag = std::abs(A[static_cast<std::size_t>(c * m + c)]);
        for (int r = c + 1; r < m; ++r) {
            double v = std::abs(A[static_cast<std::size_t>(r * m + c)]);
            if (v > mag) {
                mag = v;
                best = r;
            }
        }
        if (mag < 1e-14) {
            singular = true;
            break;
        }
        if (best != c) {
            for (int cc = 0; cc < m; ++cc) {
                std::swap(A[static_cast<std::size_t>(best * m + cc)], A[static_cast<std::size_t>(c * m + cc)]);
                std::swap(inv[static_cast<std::size_t>(best * m + cc)], inv[static_cast<std::size_t>(c * m + cc)]);
            }
        }
        C piv = A[static_cast<std::size_t>(c * m + c)];
        for (int cc = 0; cc < m; ++cc) {
            A[static_cast<std::size_t>(c * m + cc)] /= piv;
            inv[static_cast<std::size_t>(c * m + cc)] /= piv;
        }
        for (int r = 0; r < m; ++r) {
            if (r == c) continue;
            C fct = A[static_cast<std::size_t>(r * m + c)];
            if (fct == C{0, 0}) continue;
            for (int cc = 0; cc < m; ++cc) {
                A[static_cast<std::size_t>(r * m + cc)] -= fct * A[static_cast<std::size_t>(c * m + cc)];
                inv[static_cast<std::size_t>(r * m + cc)] -= fct * inv[static_cast<std::size_t>(c * m + cc)];
            }
        }
    }
    auto norm1 = [&](const std::vector<C>& M) {
        double best = 0;
        for (int c = 0; c < m; ++c) {
            double s = 0;
            for (int r = 0; r < m; ++r) s += std::abs(M[static_cast<std::size_t>(r * m + c)]);
            best = std::max(best, s);
        }
        return best;
    };
    if (singular) {
        out.condition = std::numeric_limits<double>::infinity();
        out.invertible = false;
    } else {
        out.condition = norm1(out.a) * norm1(inv);
        out.invertible = true;
    }
    return out;
}

} // namespace crp
