#include "engine.hpp"

#include <sstream>

#include "../frames.hpp"

namespace crp::jet {

std::string AtomPoly::str(const AtomTable& tab) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        for (auto [id, e] : m) {
            os << "*" << tab.names.at(id);
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

std::string JetPoly::str(const AtomTable& tab) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str(tab) << ")";
        for (const auto& [v, e] : m) {
            os << "*[" << v.str() << "]";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

JetPoly jp_var(int idx, bool bar) {
    JetVar v;
    v.bar = bar;
    v.idx = static_cast<std::uint8_t>(idx);
    return JetPoly::variable(v);
}

JetPoly jp_word(const RuleSet& rs, std::initializer_list<Letter> letters, int idx, bool bar) {
    return rs.word(std::vector<Letter>(letters), idx, bar);
}

std::shared_ptr<const RuleSet> RuleSet::make_generic(int n) {
    auto rs = std::shared_ptr<RuleSet>(new RuleSet());
    rs->init(n, std::nullopt);
    return rs;
}

std::shared_ptr<const RuleSet> RuleSet::make_bound(const ModelSpec& spec) {
    auto rs = std::shared_ptr<RuleSet>(new RuleSet());
    rs->init(spec.n, spec);
    return rs;
}

AtomPoly RuleSet::gamma(int j, int k) const {
    return gamma_val_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
}

AtomPoly RuleSet::reorder_c(int j, int k) const {
    if (j == k) return AtomPoly();
    return c_val_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)];
}

void RuleSet::init(int n, const std::optional<ModelSpec>& spec) {
    if (n < 2) fail(Errc::BadInput, "jet calculus requires n >= 2");
    n_ = n;
    bound_ = spec.has_value();
    const int m = n - 1;
    auto grid = [&](auto fill) {
        std::vector<std::vector<AtomPoly>> g(static_cast<std::size_t>(m),
                                             std::vector<AtomPoly>(static_cast<std::size_t>(m)));
        for (int j = 1; j <= m; ++j)
            for (int l = 1; l <= m; ++l)
                g[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(l - 1)] = fill(j, l);
        return g;
    };

    if (!bound_) {
        auto make_ids = [&](const char* stem) {
            std::vector<std::vector<std::uint32_t>> ids(static_cast<std::size_t>(m),
                                                        std::vector<std::uint32_t>(static_cast<std::size_t>(m)));
            for (int j = 1; j <= m; ++j)
                for (int l = 1; l <= m; ++l)
                    ids[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(l - 1)] = atoms_.add(
                        std::string(stem) + "[" + std::to_string(j) + "][" + std::to_string(l) + "]");
            return ids;
        };
        id_a_ = make_ids("a");
        id_abar_ = make_ids("ab");
        id_b_ = make_ids("b");
        id_bbar_ = make_ids("bb");
        id_gamma_ = make_ids("g");
        for (int j = 1; j <= m; ++j) {
            for (int l = 1; l <= m; ++l) {
                atoms_.set_conj(id_a_[j - 1][l - 1], id_abar_[j - 1][l - 1], 1);
                atoms_.set_conj(id_b_[j - 1][l - 1], id_bbar_[j - 1][l - 1], 1);
            }
        }
        // conj(gamma[j][k]) = -gamma[k][j]; the diagonal is purely imaginary
        for (int j = 1; j <= m; ++j)
            for (int k = j; k <= m; ++k) atoms_.set_conj(id_gamma_[j - 1][k - 1], id_gamma_[k - 1][j - 1], -1);
        // reorder constants for j < k
        id_c_.assign(static_cast<std::size_t>(m), std::vector<std::uint32_t>(static_cast<std::size_t>(m), 0));
        id_cbar_ = id_c_;
        for (int j = 1; j <= m; ++j) {
            for (int k = j + 1; k <= m; ++k) {
                id_c_[j - 1][k - 1] = atoms_.add("c[" + std::to_string(j) + "][" + std::to_string(k) + "]");
                id_cbar_[j - 1][k - 1] = atoms_.add("cb[" + std::to_string(j) + "][" + std::to_string(k) + "]");
                atoms_.set_conj(id_c_[j - 1][k - 1], id_cbar_[j - 1][k - 1], 1);
            }
        }
        a_val_ = grid([&](int j, int l) { return AtomPoly::atom(id_a_[j - 1][l - 1]); });
        b_val_ = grid([&](int j, int l) { return AtomPoly::atom(id_b_[j - 1][l - 1]); });
        abar_val_ = grid([&](int j, int l) { return AtomPoly::atom(id_abar_[j - 1][l - 1]); });
        bbar_val_ = grid([&](int j, int l) { return AtomPoly::atom(id_bbar_[j - 1][l - 1]); });
        gamma_val_ = grid([&](int j, int k) { return AtomPoly::atom(id_gamma_[j - 1][k - 1]); });
        c_val_ = grid([&](int j, int k) {
            if (j == k) return AtomPoly();
            if (j < k) return AtomPoly::atom(id_c_[j - 1][k - 1]);
            return -AtomPoly::atom(id_c_[k - 1][j - 1]);
        });
    } else {
        // beta_j(z) = -i/2 Lt_{2n,2j-1} = sum_l (a_{j,l} z_l + b_{j,l} zbar_l)
        const ModelSpec& sp = *spec;
        Scalar mhalf_i(Rat(0), Rat(-1) / 2);
        a_val_ = grid([&](int j, int l) {
            return AtomPoly(mhalf_i * sp.coef[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(l - 1)].first);
        });
        b_val_ = grid([&](int j, int l) {
            return AtomPoly(mhalf_i * sp.coef[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(l - 1)].second);
        });
        abar_val_ = grid([&](int j, int l) {
            Scalar s;
            a_val_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(l - 1)].is_scalar(&s);
            return AtomPoly(s.conj());
        });
        bbar_val_ = grid([&](int j, int l) {
            Scalar s;
            b_val_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(l - 1)].is_scalar(&s);
            return AtomPoly(s.conj());
        });
        // bracket constants come from the frame decomposition
        auto consts = model_bracket_constants(sp);
        gamma_val_ = grid([&](int j, int k) {
            return AtomPoly(consts.gamma[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)]);
        });
        c_val_ = grid([&](int j, int k) {
            return AtomPoly(consts.c[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(k - 1)]);
        });
        for (int j = 1; j <= m; ++j) {
            Scalar g;
            gamma_val_[static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(j - 1)].is_scalar(&g);
            if (g.is_zero())
                fail(Errc::ConstraintViolated,
                     "degenerate binding: [L_j, conj(L_j)] has no transversal component (j=" +
                         std::to_string(j) + ")");
        }
    }

    // composite coefficient polynomials beta_j(f), alpha_j(f) and conjugates
    for (int j = 1; j <= m; ++j) {
        JetPoly beta, betabar;
        for (int l = 1; l <= m; ++l) {
            beta = beta + a_val_[j - 1][l - 1] * jp_var(l, false) + b_val_[j - 1][l - 1] * jp_var(l, true);
            betabar = betabar + abar_val_[j - 1][l - 1] * jp_var(l, true) +
                      bbar_val_[j - 1][l - 1] * jp_var(l, false);
        }
        JetPoly alpha = -beta - AtomPoly(Scalar(Rat(2))) * jp_var(j, true);
        JetPoly alphabar = -betabar - AtomPoly(Scalar(Rat(2))) * jp_var(j, false);
        beta_.push_back(beta);
        beta_bar_.push_back(betabar);
        alpha_.push_back(alpha);
        alpha_bar_.push_back(alphabar);
    }

    // derive the transversal closure rule: gamma_{1,1} T f_n = [L_1, Lbar_1] f_n
    closure_ready_ = false;
    Budget budget;
    JetPoly P = word({Letter::l(1), Letter::lbar(1)}, n, false, budget);
    JetPoly Q = word({Letter::lbar(1), Letter::l(1)}, n, false, budget);
    JetPoly D = P - Q;
    AtomPoly g11 = gamma(1, 1);
    if (!bound_) {
        tfn_ = JetPoly();
        for (const auto& [mono, coeff] : D.terms()) {
            JetPoly t;
            t.add_term(mono, coeff.divide_by_term(g11));
            tfn_ = tfn_ + t;
        }
    } else {
        Scalar g;
        g11.is_scalar(&g);
        AtomPoly inv(g.inverse());
        tfn_ = inv * D;
    }
    tfn_bar_ = tfn_.conj(atoms_);
    closure_ready_ = true;
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        memo_.clear(); // bootstrap entries assumed no closure rule
    }
}

JetPoly RuleSet::expand_letter_on_n(const Letter& op, bool target_bar, Budget& budget) const {
    // op is L_m or Lbar_m applied directly to f_n / fbar_n
    // The derivative factor is L_m f_j for an L letter and Lbar_m fbar_j for
    // an Lbar letter; the coefficient picks beta or alpha (or a conjugate)
    // depending on which n-target the letter hit.
    JetPoly out;
    const int m = n_ - 1;
    for (int j = 1; j <= m; ++j) {
        JetVar dv;
        dv.bar = (op.kind == LetterKind::Lbar);
        dv.idx = static_cast<std::uint8_t>(j);
        dv.word = {op.idx};
        const JetPoly* coeff = nullptr;
        if (op.kind == LetterKind::L && target_bar) coeff = &beta_[static_cast<std::size_t>(j - 1)];
        else if (op.kind == LetterKind::L && !target_bar) coeff = &alpha_[static_cast<std::size_t>(j - 1)];
        else if (op.kind == LetterKind::Lbar && !target_bar) coeff = &beta_bar_[static_cast<std::size_t>(j - 1)];
        else coeff = &alpha_bar_[static_cast<std::size_t>(j - 1)];
        out = out + (*coeff) * JetPoly::variable(dv);
        budget.tick();
    }
    return out;
}

JetPoly RuleSet::apply_to_var(const Letter& op, const JetVar& v, Budget& budget) const {
    budget.tick();
    const bool tracing = budget.trace != nullptr;
    auto key = std::make_pair(v, std::make_pair(static_cast<std::uint8_t>(op.kind), op.idx));
    if (!tracing) {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    JetPoly result;

    if (op.kind == LetterKind::T) {
        if (v.idx == static_cast<std::uint8_t>(n_)) {
            if (closure_ready_) {
                budget.log("transversal closure: T " + v.str() + " expands through the bracket relation");
                result = tfn_poly(v.bar);
                // canonical n-target vars are bare; t > 0 only during bootstrap
                for (int r = 0; r < v.t; ++r) result = apply(Letter::t(), result, budget);
            } else {
                JetVar w = v;
                w.t = static_cast<std::uint8_t>(w.t + 1);
                result = JetPoly::variable(w);
            }
        } else {
            JetVar w = v;
            w.t = static_cast<std::uint8_t>(w.t + 1);
            result = JetPoly::variable(w);
        }
    } else if ((op.kind == LetterKind::L) == (!v.bar)) {
        // same chirality: insertion into the sorted word
        if (v.idx == static_cast<std::uint8_t>(n_)) {
            budget.log("derivative relation: " + op.str() + " on " + v.str() + " expands");
            result = expand_letter_on_n(op, v.bar, budget);
            for (int r = 0; r < v.t; ++r) result = apply(Letter::t(), result, budget);
        } else if (v.word.empty() || op.idx <= v.word.front()) {
            JetVar w = v;
            w.word.insert(w.word.begin(), op.idx);
            result = JetPoly::variable(w);
        } else {
            std::uint8_t head = v.word.front();
            JetVar rest = v;
            rest.word.erase(rest.word.begin());
            budget.log("sort letters: " + op.str() + " past " + (v.bar ? "Lbar" : "L") + std::to_string(head));
            JetPoly inner = apply_to_var(op, rest, budget);
            Letter headop = v.bar ? Letter::lbar(head) : Letter::l(head);
            result = apply(headop, inner, budget);
            // [op, head] = c_{op,head} T on the plain side, conjugated on the
            // bar side
            AtomPoly corr = reorder_c(op.idx, head);
            if (v.bar) corr = corr.conj(atoms_);
            if (!corr.is_zero()) {
                JetVar trest = rest;
                trest.t = static_cast<std::uint8_t>(trest.t + 1);
                result = result + corr * JetPoly::variable(trest);
            }
        }
    } else {
        // opposite chirality: push through the word via the commutators
        if (v.word.empty()) {
            if (v.idx < static_cast<std::uint8_t>(n_)) {
                budget.log("tangential relation kills " + op.str() + " on " + v.str());
                result = JetPoly(); // tangential relation kills it
            } else {
                budget.log("derivative relation: " + op.str() + " on " + v.str() + " expands");
                result = expand_letter_on_n(op, v.bar, budget);
                for (int r = 0; r < v.t; ++r) result = apply(Letter::t(), result, budget);
            }
        } else {
            std::uint8_t head = v.word.front();
            JetVar rest = v;
            rest.word.erase(rest.word.begin());
            budget.log("commutator push: " + op.str() + " through " + (v.bar ? "Lbar" : "L") +
                       std::to_string(head) + " emits a T term");
            JetPoly inner = apply_to_var(op, rest, budget);
            Letter headop = v.bar ? Letter::lbar(head) : Letter::l(head);
            result = apply(headop, inner, budget);
            // plain-side word (head is L_a, op is Lbar_b):
            //   Lbar_b L_a = L_a Lbar_b - gamma(a, b) T
            // bar-side word (head is Lbar_b, op is L_m):
            //   L_m Lbar_b = Lbar_b L_m + gamma(m, b) T
            AtomPoly corr = v.bar ? gamma(op.idx, head) : -gamma(head, op.idx);
            JetVar trest = rest;
            trest.t = static_cast<std::uint8_t>(trest.t + 1);
            result = result + corr * JetPoly::variable(trest);
        }
    }

    if (!tracing) {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto [it, inserted] = memo_.emplace(key, result);
        (void)inserted;
        return it->second;
    }
    return result;
}

JetPoly RuleSet::apply(const Letter& op, const JetPoly& p, Budget& budget) const {
    JetPoly out;
    for (const auto& [mono, coeff] : p.terms()) {
        for (std::size_t k = 0; k < mono.size(); ++k) {
            const auto& [v, e] = mono[k];
            JetMono rest;
            rest.reserve(mono.size());
            for (std::size_t l = 0; l < mono.size(); ++l) {
                if (l == k) {
                    if (e > 1) rest.emplace_back(mono[l].first, e - 1);
                } else {
                    rest.push_back(mono[l]);
                }
            }
            JetPoly dv = apply_to_var(op, v, budget);
            AtomPoly c = coeff * AtomPoly(Scalar(Rat(static_cast<long>(e))));
            for (const auto& [dm, dc] : dv.terms()) out.add_term(jm_mul(rest, dm), c * dc);
        }
    }
    return out;
}

JetPoly RuleSet::word(const std::vector<Letter>& letters, int idx, bool bar, Budget& budget) const {
    JetPoly p = jp_var(idx, bar);
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) p = apply(*it, p, budget);
    return p;
}

JetPoly RuleSet::word(const std::vector<Letter>& letters, int idx, bool bar) const {
    Budget budget;
    return word(letters, idx, bar, budget);
}

} // namespace crp::jet
