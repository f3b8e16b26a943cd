#pragma once

#include "engine.hpp"

namespace crp::jet {

// C_{p,q} (plain) / Cbar_{p,q} (bar): real-analytic functions of the jet
// variables T^t L^alpha f_j (t+|alpha| <= p, t <= q, j < n) together with
// L^alpha f_n (|alpha| <= p), resp. the conjugated family.
struct Space {
    bool bar = false;
    int p = 0;
    int q = 0;

    Space conj() const { return {!bar, p, q}; }
    std::string str() const {
        return std::string(bar ? "Cbar" : "C") + "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
    friend bool operator==(const Space& a, const Space& b) = default;
    friend auto operator<=>(const Space& a, const Space& b) = default;
};

// Canonical jet variables carry no word on the n-th target, so the
// generator test only sees bare f_n / fbar_n there.
bool is_generator(const JetVar& v, const Space& s, int n);

// Generator operator words of a space (used to verify closure lemmas and
// space inclusions mechanically).
struct GenWord {
    std::vector<Letter> letters; // outermost first
    int idx;
    bool bar;
    std::string str() const;
};
std::vector<GenWord> generator_words(const Space& s, int n);

class MembershipDb {
public:
    explicit MembershipDb(int n) : n_(n) {}

    int n() const { return n_; }

    // Records v in s (and its conjugate fact).
    void add_fact(const JetVar& v, const Space& s, const std::string& provenance);
    // Records s1 subset-of s2 (and the conjugated inclusion).
    void add_bridge(const Space& s1, const Space& s2, const std::string& provenance);

    // Inclusion test: monotone steps (p,q grow, same chirality) composed
    // with registered bridges.
    bool space_leq(const Space& a, const Space& b) const;

    struct VarResolution {
        bool ok = false;
        std::string how; // "generator" or fact provenance
    };
    VarResolution resolve(const JetVar& v, const Space& s) const;

    const std::vector<std::pair<Space, Space>>& bridges() const { return bridges_; }

private:
    int n_;
    std::map<JetVar, std::vector<std::pair<Space, std::string>>> facts_;
    std::vector<std::pair<Space, Space>> bridges_;
};

struct MembershipCheck {
    bool ok = true;
    std::vector<std::pair<JetVar, std::string>> resolved; // var -> how
    std::vector<JetVar> offending;
    std::vector<std::string> axioms_used; // distinct provenance strings
};

// True iff every variable of every monomial is a generator of the space or
// resolves through the fact database.
MembershipCheck check_membership(const JetPoly& poly, const Space& s, const MembershipDb& db);

// --- the derivation chain ------------------------------------------------

struct ChainStep {
    std::string name;
    std::string claim;
    bool pass = false;
    std::vector<std::string> axioms_used;
    std::string detail;
};

struct ChainReport {
    int n = 0;
    bool bound = false;
    bool all_pass = true;
    std::vector<ChainStep> steps;
};

// Replays the prolongation membership chain: the two analytic-inversion
// axioms, the derivative-closure lemmas, the transversal-derivative tower
// T^t L^alpha f_p for t <= 3, the cross-chirality inclusions, and the
// order-3 mixed-word lemma.  Returns the populated fact database alongside
// the per-step report.
ChainReport run_membership_chain(const RuleSet& rs, MembershipDb& db);
ChainReport run_membership_chain(const RuleSet& rs);

// Axiom provenance strings (referenced by acceptance checks).
extern const char* const kAxiomBaseInversion;
extern const char* const kAxiomFirstDerivativeInversion;

} // namespace crp::jet
