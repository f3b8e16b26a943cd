#pragma once

#include <memory>
#include <mutex>
#include <optional>

#include "../structure.hpp"
#include "jetvar.hpp"

namespace crp::jet {

// Rewrite rules of the model-case jet calculus over the alphabet
// {T, L_j, Lbar_j} acting on f_1..f_n, fbar_1..fbar_n:
//
//   wrong-chirality kill     L fbar_j = 0,  Lbar f_j = 0          (j < n)
//   bar-target-n expansion   L_m fbar_n  = sum_j beta_j(f) L_m f_j
//                            Lbar_m f_n  = its conjugate
//   target-n expansion       L_m f_n     = sum_j alpha_j(f) L_m f_j
//                            Lbar_m fbar_n = its conjugate
//   commutator push          [L_j, Lbar_k] = gamma_{j,k} T
//   same-chirality sorting   [L_j, L_k] = c_{j,k} T (and conjugate)
//   transversal closure      T f_n = ([L_1,Lbar_1] f_n) / gamma_{1,1},
//                            derived at construction, not hand-entered
//
// Every letter application strictly reduces (inversion count, misordered
// pairs, distance-to-target of n-index letters), so normalization
// terminates; a step budget guards against rule-table bugs.
class RuleSet {
public:
    // Generic symbolic constants.
    static std::shared_ptr<const RuleSet> make_generic(int n);
    // Constants bound to a concrete model structure; gamma and c come from
    // frame bracket decompositions.
    static std::shared_ptr<const RuleSet> make_bound(const ModelSpec& spec);

    int n() const { return n_; }
    bool bound() const { return bound_; }
    const AtomTable& atoms() const { return atoms_; }

    AtomPoly gamma(int j, int k) const;       // [L_j, Lbar_k] / T
    AtomPoly reorder_c(int j, int k) const;   // [L_j, L_k] / T, antisymmetric
    const JetPoly& beta_poly(int j) const { return beta_[static_cast<std::size_t>(j - 1)]; }
    const JetPoly& alpha_poly(int j) const { return alpha_[static_cast<std::size_t>(j - 1)]; }
    const JetPoly& tfn_poly(bool bar) const { return bar ? tfn_bar_ : tfn_; }

    struct Budget {
        long steps = 0;
        long limit = 1000000;
        std::vector<std::string>* trace = nullptr; // optional rule-event log
        std::size_t trace_cap = 200;
        void tick() {
            if (++steps > limit) fail(Errc::NonTermination, "rewrite step budget exceeded");
        }
        void log(const std::string& ev) {
            if (trace && trace->size() < trace_cap) trace->push_back(ev);
        }
    };

    JetPoly apply(const Letter& op, const JetPoly& p, Budget& budget) const;
    JetPoly apply_to_var(const Letter& op, const JetVar& v, Budget& budget) const;

    // Normalize an operator word (letters listed outermost first) applied to
    // the target f_idx / fbar_idx.
    JetPoly word(const std::vector<Letter>& letters, int idx, bool bar, Budget& budget) const;
    JetPoly word(const std::vector<Letter>& letters, int idx, bool bar) const;

    JetPoly conj(const JetPoly& p) const { return p.conj(atoms_); }

private:
    RuleSet() = default;
    void init(int n, const std::optional<ModelSpec>& spec);

    int n_ = 0;
    bool bound_ = false;
    bool closure_ready_ = false;
    AtomTable atoms_;

    // atom ids (generic mode); empty when bound
    std::vector<std::vector<std::uint32_t>> id_a_, id_b_, id_abar_, id_bbar_, id_gamma_;
    std::vector<std::vector<std::uint32_t>> id_c_, id_cbar_; // j < k entries only

    std::vector<std::vector<AtomPoly>> gamma_val_; // (n-1)x(n-1)
    std::vector<std::vector<AtomPoly>> c_val_;     // (n-1)x(n-1), antisymmetric
    std::vector<std::vector<AtomPoly>> a_val_, b_val_, abar_val_, bbar_val_;

    std::vector<JetPoly> beta_, alpha_, beta_bar_, alpha_bar_;
    JetPoly tfn_, tfn_bar_;

    JetPoly expand_letter_on_n(const Letter& op, bool target_bar, Budget& budget) const;

    mutable std::mutex memo_mutex_;
    mutable std::map<std::pair<JetVar, std::pair<std::uint8_t, std::uint8_t>>, JetPoly> memo_;
};

using RuleSetPtr = std::shared_ptr<const RuleSet>;

// Convenience builders for tests and identity transcription.
JetPoly jp_var(int idx, bool bar);
JetPoly jp_word(const RuleSet& rs, std::initializer_list<Letter> letters, int idx, bool bar);

} // namespace crp::jet
