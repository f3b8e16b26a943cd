#pragma once

#include "frames.hpp"

namespace crp {

// Candidate map f = (f_1..f_n) between copies of C^n, components given as
// expressions in the source variables.
struct SymbolicMap {
    int n = 0;
    std::vector<Ex> components;
    std::string name;

    const Ex& f(int j) const { return components[static_cast<std::size_t>(j - 1)]; }
    Ex fbar(int j) const { return ex_conj(f(j)); }

    // substitution z_l -> f_l, zbar_l -> conj(f_l) used to compose
    // target-side data with the map
    std::vector<Ex> substitution() const;

    bool fixes_origin(double tol = 1e-12) const;
};

SymbolicMap identity_map(int n);
// The anisotropic dilation (sqrt(delta) z', delta z_n); exact when delta is
// the square of a rational.
SymbolicMap dilation_map(int n, const Rat& delta);

SymbolicMap load_map_json(const std::string& json_text);
SymbolicMap load_map_file(const std::string& path);

// Entries of df o J - J'(f) o df in the complexified bases (2n x 2n,
// row-major); all zero iff f is (J,J')-holomorphic.
std::vector<Ex> pseudoholomorphy_residual(const SymbolicMap& f, const StructureMatrix& J,
                                          const StructureMatrix& Jp);

// One labelled residual expression per tangential equation, reduced on the
// source hypersurface.
struct CrResiduals {
    // (label, residual expression after surface reduction)
    std::vector<std::pair<std::string, Ex>> items;
};

// Source structure must be a model structure (the frame comes from it); the
// target beta/alpha coefficients come from the target model spec composed
// with f.  The surface-preservation residual composes Gamma'’s defining
// tail with f.
CrResiduals cr_residuals(const SymbolicMap& f, const ModelSpec& src, const ModelSpec& tgt,
                         const Hypersurface& gamma_src, const Hypersurface& gamma_tgt);

struct CrVerdicts {
    bool all_zero = true;
    bool exact = true;
    std::vector<std::pair<std::string, ZeroVerdict>> items;
};

CrVerdicts cr_residuals_verdicts(const CrResiduals& res, const Hypersurface& gamma_src,
                                 const IsZeroOptions& opt = {});

// (L_k f_j)_{k,j=1..n-1} evaluated at p, with a condition estimate.
struct PushforwardMatrix {
    int m = 0; // n-1
    std::vector<std::complex<double>> a; // row-major
    double condition = 0.0;              // 1-norm estimate; infinity when singular
    bool invertible = false;
};

PushforwardMatrix frame_pushforward_matrix(const SymbolicMap& f, const Frame& source_frame,
                                           const std::vector<std::complex<double>>& p);

} // namespace crp
