#pragma once

#include "membership.hpp"

namespace crp::jet {

// Classification of one order-3 operator word applied to one component.
//
//   reduced    - the normal form only contains variables of order <= 2
//   rearranged - the word is a permutation of a canonical T^t L^alpha word;
//                commuting letters (with their T corrections) maps it to the
//                canonical case
//   axiom      - a canonical T^t L^alpha word whose expression through
//                order <= 2 data rests on the analytic-inversion axioms via
//                the membership chain
struct ReportEntry {
    std::string word;   // e.g. "T L1 Lbar1"
    std::string target; // e.g. "f2"
    std::string status; // reduced | rearranged | axiom
    std::string expression;
    std::string trace;
    std::string paper_case;
    std::vector<std::string> axioms_used;
};

struct CompleteSystemReport {
    int n = 0;
    bool bound = false;
    bool complete = false; // every word classified
    std::vector<ReportEntry> entries;
    ChainReport chain; // the membership chain backing the axiom entries
};

CompleteSystemReport complete_system_report(const RuleSet& rs);

} // namespace crp::jet
