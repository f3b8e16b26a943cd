#include "identities.hpp"

namespace crp::jet {

namespace {

JetPoly var_word(int idx, bool bar, int t, std::vector<std::uint8_t> word) {
    JetVar v;
    v.bar = bar;
    v.idx = static_cast<std::uint8_t>(idx);
    v.t = static_cast<std::uint8_t>(t);
    std::sort(word.begin(), word.end());
    v.word = std::move(word);
    return JetPoly::variable(v);
}

AtomPoly half() { return AtomPoly(Scalar(Rat(1) / 2)); }
AtomPoly two() { return AtomPoly(Scalar(Rat(2))); }

} // namespace

IdentityResult verify_identity(const RuleSet& rs, const Identity& id) {
    IdentityResult res;
    res.name = id.name;
    res.note = id.note;
    JetPoly diff = id.lhs - id.rhs;
    res.pass = diff.is_zero();
    if (!res.pass) res.difference = diff.str(rs.atoms());
    return res;
}

JetPoly tangency_polynomial(const RuleSet& rs) {
    const int n = rs.n();
    JetPoly p = half() * (jp_var(n, false) + jp_var(n, true));
    for (int j = 1; j <= n - 1; ++j) p = p + jp_var(j, false) * jp_var(j, true);
    return p;
}

JetPoly tangency_expansion(const RuleSet& rs, const Letter& op) {
    RuleSet::Budget budget;
    return rs.apply(op, tangency_polynomial(rs), budget);
}

std::vector<Identity> standard_identities(const RuleSet& rs) {
    const int n = rs.n();
    const int m = n - 1;
    std::vector<Identity> out;

    auto W = [&](std::vector<Letter> ls, int idx, bool bar) { return rs.word(ls, idx, bar); };
    auto gam = [&](int j, int k) { return rs.gamma(j, k); };

    // accessors for the frame coefficient atoms via the beta polynomials:
    // beta_j(f) = sum_l (a_{j,l} f_l + b_{j,l} fbar_l)
    auto a_of = [&](int j, int l) {
        JetVar v;
        v.idx = static_cast<std::uint8_t>(l);
        for (const auto& [mono, c] : rs.beta_poly(j).terms())
            if (mono.size() == 1 && mono[0].first == v && mono[0].second == 1) return c;
        return AtomPoly();
    };
    auto b_of = [&](int j, int l) {
        JetVar v;
        v.bar = true;
        v.idx = static_cast<std::uint8_t>(l);
        for (const auto& [mono, c] : rs.beta_poly(j).terms())
            if (mono.size() == 1 && mono[0].first == v && mono[0].second == 1) return c;
        return AtomPoly();
    };
    auto abar_of = [&](int j, int l) { return a_of(j, l).conj(rs.atoms()); };
    auto bbar_of = [&](int j, int l) { return b_of(j, l).conj(rs.atoms()); };

    // surface-derivative: applying Lbar_k to the surface constraint gives
    // (Lbar_k f_n + Lbar_k fbar_n)/2 + sum_j f_j Lbar_k fbar_j
    for (int k = 1; k <= m; ++k) {
        Identity id;
        id.name = "surface-derivative";
        id.note = "k=" + std::to_string(k);
        id.lhs = tangency_expansion(rs, Letter::lbar(k));
        JetPoly rhs = half() * (W({Letter::lbar(k)}, n, false) + W({Letter::lbar(k)}, n, true));
        for (int j = 1; j <= m; ++j) rhs = rhs + jp_var(j, false) * W({Letter::lbar(k)}, j, true);
        id.rhs = rhs;
        out.push_back(std::move(id));
    }

    // bar-n-first-derivative: L_k fbar_n = sum_j,l (a_{j,l} f_l + b_{j,l} fbar_l) L_k f_j
    for (int k = 1; k <= m; ++k) {
        Identity id;
        id.name = "bar-n-first-derivative";
        id.note = "k=" + std::to_string(k);
        id.lhs = W({Letter::l(k)}, n, true);
        JetPoly rhs;
        for (int j = 1; j <= m; ++j)
            for (int l = 1; l <= m; ++l)
                rhs = rhs + (a_of(j, l) * jp_var(l, false) + b_of(j, l) * jp_var(l, true)) *
                                var_word(j, false, 0, {static_cast<std::uint8_t>(k)});
        id.rhs = rhs;
        out.push_back(std::move(id));
    }

    // mixed-commutation: L_k Lbar_m fbar_j = gamma_{k,m} T fbar_j
    for (int k = 1; k <= m; ++k) {
        for (int mm = 1; mm <= m; ++mm) {
            for (int j = 1; j <= m; ++j) {
                Identity id;
                id.name = "mixed-commutation";
                id.note = "k=" + std::to_string(k) + ",m=" + std::to_string(mm) + ",j=" + std::to_string(j);
                id.lhs = W({Letter::l(k), Letter::lbar(mm)}, j, true);
                id.rhs = gam(k, mm) * var_word(j, true, 1, {});
                out.push_back(std::move(id));
            }
        }
    }

    // bar-n-mixed-second: L_k Lbar_m fbar_n expanded through the conjugated
    // first-order relations
    for (int k = 1; k <= m; ++k) {
        for (int mm = 1; mm <= m; ++mm) {
            Identity id;
            id.name = "bar-n-mixed-second";
            id.note = "k=" + std::to_string(k) + ",m=" + std::to_string(mm);
            id.lhs = W({Letter::l(k), Letter::lbar(mm)}, n, true);
            JetPoly rhs;
            for (int j = 1; j <= m; ++j) {
                JetPoly lead;
                for (int l = 1; l <= m; ++l)
                    lead = lead - bbar_of(j, l) * var_word(l, false, 0, {static_cast<std::uint8_t>(k)});
                lead = lead - two() * var_word(j, false, 0, {static_cast<std::uint8_t>(k)});
                rhs = rhs + lead * var_word(j, true, 0, {static_cast<std::uint8_t>(mm)});
                // alphabar_j(fbar) * gamma_{k,m} T fbar_j
                JetPoly albar;
                for (int l = 1; l <= m; ++l)
                    albar = albar - abar_of(j, l) * jp_var(l, true) - bbar_of(j, l) * jp_var(l, false);
                albar = albar - two() * jp_var(j, false);
                rhs = rhs + gam(k, mm) * (albar * var_word(j, true, 1, {}));
            }
            id.rhs = rhs;
            out.push_back(std::move(id));
        }
    }

    // commutator-definition: Lbar_1 L_1 f_p = L_1 Lbar_1 f_p - gamma_{1,1} T f_p
    for (int p = 1; p <= n; ++p) {
        Identity id;
        id.name = "commutator-definition";
        id.note = "p=" + std::to_string(p);
        id.lhs = W({Letter::lbar(1), Letter::l(1)}, p, false);
        id.rhs = W({Letter::l(1), Letter::lbar(1)}, p, false) - gam(1, 1) * W({Letter::t()}, p, false);
        out.push_back(std::move(id));
    }

    // holomorphic-pair-reduction: Lbar_1 L_1 f_p = -gamma_{1,1} T f_p (p < n)
    for (int p = 1; p <= m; ++p) {
        Identity id;
        id.name = "holomorphic-pair-reduction";
        id.note = "p=" + std::to_string(p);
        id.lhs = W({Letter::lbar(1), Letter::l(1)}, p, false);
        id.rhs = -(gam(1, 1)) * var_word(p, false, 1, {});
        out.push_back(std::move(id));
    }

    // n-mixed-second: L_1 Lbar_1 f_n through the conjugated relations
    {
        Identity id;
        id.name = "n-mixed-second";
        id.note = "k=1";
        id.lhs = W({Letter::l(1), Letter::lbar(1)}, n, false);
        JetPoly rhs;
        for (int j = 1; j <= m; ++j) {
            for (int l = 1; l <= m; ++l) {
                rhs = rhs + bbar_of(j, l) * (var_word(l, false, 0, {1}) * var_word(j, true, 0, {1}) +
                                             gam(1, 1) * (jp_var(l, false) * var_word(j, true, 1, {})));
                rhs = rhs + gam(1, 1) * abar_of(j, l) * (jp_var(l, true) * var_word(j, true, 1, {}));
            }
        }
        id.rhs = rhs;
        out.push_back(std::move(id));
    }

    // triple-same-index: Lbar_k L_k L_k f_p = -2 gamma_{k,k} T L_k f_p (p < n)
    for (int k = 1; k <= m; ++k) {
        for (int p = 1; p <= m; ++p) {
            Identity id;
            id.name = "triple-same-index";
            id.note = "k=" + std::to_string(k) + ",p=" + std::to_string(p);
            id.lhs = W({Letter::lbar(k), Letter::l(k), Letter::l(k)}, p, false);
            id.rhs = -(two() * gam(k, k)) * var_word(p, false, 1, {static_cast<std::uint8_t>(k)});
            out.push_back(std::move(id));
        }
    }

    // n-triple-same-index: L_k L_k Lbar_k f_n
    for (int k = 1; k <= m; ++k) {
        Identity id;
        id.name = "n-triple-same-index";
        id.note = "k=" + std::to_string(k);
        id.lhs = W({Letter::l(k), Letter::l(k), Letter::lbar(k)}, n, false);
        JetPoly rhs;
        std::uint8_t kk = static_cast<std::uint8_t>(k);
        for (int j = 1; j <= m; ++j)
            for (int l = 1; l <= m; ++l)
                rhs = rhs + bbar_of(j, l) *
                                (var_word(l, false, 0, {kk, kk}) * var_word(j, true, 0, {kk}) +
                                 two() * gam(k, k) * (var_word(l, false, 0, {kk}) * var_word(j, true, 1, {})));
        id.rhs = rhs;
        out.push_back(std::move(id));
    }

    // triple-mixed-index: Lbar_k L_k L_k L_m f_p =
    //   -gamma_{m,k} T L_k L_k f_p - 2 gamma_{k,k} T L_k L_m f_p (p < n)
    for (int k = 1; k <= m; ++k) {
        for (int mm = 1; mm <= m; ++mm) {
            for (int p = 1; p <= m; ++p) {
                Identity id;
                id.name = "triple-mixed-index";
                id.note = "k=" + std::to_string(k) + ",m=" + std::to_string(mm) + ",p=" + std::to_string(p);
                id.lhs = W({Letter::lbar(k), Letter::l(k), Letter::l(k), Letter::l(mm)}, p, false);
                id.rhs = -(gam(mm, k)) * W({Letter::t(), Letter::l(k), Letter::l(k)}, p, false) -
                         (two() * gam(k, k)) * W({Letter::t(), Letter::l(k), Letter::l(mm)}, p, false);
                out.push_back(std::move(id));
            }
        }
    }

    // transversal-n-mixed: T L_1 Lbar_1 f_n
    {
        Identity id;
        id.name = "transversal-n-mixed";
        id.note = "k=1";
        id.lhs = W({Letter::t(), Letter::l(1), Letter::lbar(1)}, n, false);
        JetPoly rhs;
        for (int j = 1; j <= m; ++j) {
            for (int l = 1; l <= m; ++l) {
                rhs = rhs + bbar_of(j, l) *
                                (var_word(l, false, 1, {1}) * var_word(j, true, 0, {1}) +
                                 var_word(l, false, 0, {1}) * var_word(j, true, 1, {1}) +
                                 gam(1, 1) * (var_word(l, false, 1, {}) * var_word(j, true, 1, {}) +
                                              jp_var(l, false) * var_word(j, true, 2, {})));
                rhs = rhs + gam(1, 1) * abar_of(j, l) *
                                (var_word(l, true, 1, {}) * var_word(j, true, 1, {}) +
                                 jp_var(l, true) * var_word(j, true, 2, {}));
            }
        }
        id.rhs = rhs;
        out.push_back(std::move(id));
    }

    // transversal-squared-n-mixed: T T L_1 Lbar_1 f_n
    {
        Identity id;
        id.name = "transversal-squared-n-mixed";
        id.note = "k=1";
        id.lhs = W({Letter::t(), Letter::t(), Letter::l(1), Letter::lbar(1)}, n, false);
        JetPoly rhs;
        for (int j = 1; j <= m; ++j) {
            for (int l = 1; l <= m; ++l) {
                rhs = rhs + bbar_of(j, l) *
                                (var_word(l, false, 2, {1}) * var_word(j, true, 0, {1}) +
                                 two() * (var_word(l, false, 1, {1}) * var_word(j, true, 1, {1})) +
                                 var_word(l, false, 0, {1}) * var_word(j, true, 2, {1}) +
                                 gam(1, 1) * (var_word(l, false, 2, {}) * var_word(j, true, 1, {}) +
                                              two() * (var_word(l, false, 1, {}) * var_word(j, true, 2, {})) +
                                              jp_var(l, false) * var_word(j, true, 3, {})));
                rhs = rhs + gam(1, 1) * abar_of(j, l) *
                                (var_word(l, true, 2, {}) * var_word(j, true, 1, {}) +
                                 two() * (var_word(l, true, 1, {}) * var_word(j, true, 2, {})) +
                                 jp_var(l, true) * var_word(j, true, 3, {}));
            }
        }
        id.rhs = rhs;
        out.push_back(std::move(id));
    }

    // n-holo-bar-second: L_m Lbar_k f_n
    for (int mm = 1; mm <= m; ++mm) {
        for (int k = 1; k <= m; ++k) {
            Identity id;
            id.name = "n-holo-bar-second";
            id.note = "m=" + std::to_string(mm) + ",k=" + std::to_string(k);
            id.lhs = W({Letter::l(mm), Letter::lbar(k)}, n, false);
            JetPoly rhs;
            for (int j = 1; j <= m; ++j)
                for (int l = 1; l <= m; ++l)
                    rhs = rhs +
                          bbar_of(j, l) * (var_word(l, false, 0, {static_cast<std::uint8_t>(mm)}) *
                                           var_word(j, true, 0, {static_cast<std::uint8_t>(k)})) +
                          gam(mm, k) * ((bbar_of(j, l) * jp_var(l, false) + abar_of(j, l) * jp_var(l, true)) *
                                        var_word(j, true, 1, {}));
            id.rhs = rhs;
            out.push_back(std::move(id));
        }
    }

    // n-bar-bar-second: Lbar_m Lbar_k f_n
    for (int mm = 1; mm <= m; ++mm) {
        for (int k = 1; k <= m; ++k) {
            Identity id;
            id.name = "n-bar-bar-second";
            id.note = "m=" + std::to_string(mm) + ",k=" + std::to_string(k);
            id.lhs = W({Letter::lbar(mm), Letter::lbar(k)}, n, false);
            JetPoly rhs;
            for (int j = 1; j <= m; ++j) {
                for (int l = 1; l <= m; ++l) {
                    rhs = rhs + abar_of(j, l) * (var_word(l, true, 0, {static_cast<std::uint8_t>(mm)}) *
                                                 var_word(j, true, 0, {static_cast<std::uint8_t>(k)}));
                    rhs = rhs + (bbar_of(j, l) * jp_var(l, false) + abar_of(j, l) * jp_var(l, true)) *
                                    W({Letter::lbar(mm), Letter::lbar(k)}, j, true);
                }
            }
            id.rhs = rhs;
            out.push_back(std::move(id));
        }
    }

    return out;
}

Identity corrupted_identity(const RuleSet& rs) {
    // mixed-commutation with a flipped sign; the difference is
    // 2 gamma_{1,1} T fbar_1 != 0
    Identity id;
    id.name = "mixed-commutation(corrupted)";
    id.note = "k=1,m=1,j=1 with flipped sign";
    id.lhs = rs.word({Letter::l(1), Letter::lbar(1)}, 1, true);
    id.rhs = -(rs.gamma(1, 1)) * var_word(1, true, 1, {});
    return id;
}

} // namespace crp::jet
