#pragma once

#include <string>

#include "crcheck.hpp"
#include "jet/prolong.hpp"

namespace crp::reports {

struct RunOptions {
    int trials = 20;
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int trunc_order = 4;
    bool json = false;
};

struct Outcome {
    bool pass = true;
    std::string text; // rendered per RunOptions.json
};

IsZeroOptions zero_options(const RunOptions& o);

Outcome check_structure_report(const LoadedStructure& s, const RunOptions& o);
Outcome frame_report(const LoadedStructure& s, const RunOptions& o);
Outcome brackets_report(const LoadedStructure& s, const RunOptions& o);
Outcome levi_report(const LoadedStructure& s, int field, const std::vector<std::complex<double>>& p,
                    const RunOptions& o, double* out_value);
Outcome defect_report(const LoadedStructure& s, int j, int k, const RunOptions& o);
Outcome identities_report(int n, const LoadedStructure* binding, const RunOptions& o);
Outcome prolong_report(int n, const LoadedStructure* binding, const RunOptions& o);
Outcome verify_map_report(const SymbolicMap& f, const LoadedStructure& src,
                          const LoadedStructure& tgt, const RunOptions& o);

// Model spec of a structure usable as a jet-calculus binding (standard or
// model kinds only).
ModelSpec binding_spec(const LoadedStructure& s);

} // namespace crp::reports
