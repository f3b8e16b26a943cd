#pragma once

#include "engine.hpp"

namespace crp::jet {

// One displayed equality of the tangential-CR calculus, transcribed as two
// jet polynomials; verification normalizes the difference.
struct Identity {
    std::string name;
    std::string note; // which instance (index choices)
    JetPoly lhs;
    JetPoly rhs;
};

struct IdentityResult {
    std::string name;
    std::string note;
    bool pass = false;
    std::string difference; // printed witness when nonzero
};

IdentityResult verify_identity(const RuleSet& rs, const Identity& id);

// The fourteen displayed equalities, instantiated over all index choices for
// the rule set's dimension.
std::vector<Identity> standard_identities(const RuleSet& rs);

// A deliberately corrupted instance (sign flip); must fail with a witness.
Identity corrupted_identity(const RuleSet& rs);

// The surface constraint (f_n + fbar_n)/2 + sum_j f_j fbar_j.
JetPoly tangency_polynomial(const RuleSet& rs);

// Applies a letter to the surface constraint and returns the normalized
// result (the derived surface identity for that letter).
JetPoly tangency_expansion(const RuleSet& rs, const Letter& op);

} // namespace crp::jet
