#pragma once

#include "structure.hpp"

namespace crp {

// First-order derivation sum_j (dz[j-1] d/dz_j + dzbar[j-1] d/dzbar_j).
struct VectorField {
    int n = 0;
    std::vector<Ex> dz;
    std::vector<Ex> dzbar;

    static VectorField zero(int n);
    static VectorField holo(int n, int j);  // d/dz_j
    static VectorField anti(int n, int j);  // d/dzbar_j

    const Ex& dz_at(int j) const { return dz[static_cast<std::size_t>(j - 1)]; }
    const Ex& dzbar_at(int j) const { return dzbar[static_cast<std::size_t>(j - 1)]; }
    bool has_sqrt() const;
};

VectorField vf_add(const VectorField& a, const VectorField& b);
VectorField vf_sub(const VectorField& a, const VectorField& b);
VectorField vf_scale(const Ex& s, const VectorField& a);
VectorField vf_conj(const VectorField& a);

// X acting on a function.
Ex vf_apply(const VectorField& X, const Ex& g);

// Coefficient vector multiplied by the complexified structure matrix.
VectorField apply_structure(const StructureMatrix& J, const VectorField& X);

// [X,Y]f = X(Yf) - Y(Xf).
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

// Evaluate all coefficients at a point.
std::vector<std::complex<double>> vf_eval(const VectorField& X,
                                          const std::vector<std::complex<double>>& p);

enum class FrameTag { ModelOnSiegel, StarAmbient, BlockAmbient };

struct Frame {
    int n = 0;
    FrameTag tag = FrameTag::ModelOnSiegel;
    std::vector<VectorField> L; // L_1..L_{n-1}
    VectorField T;
};

// Fields L_j = d/dz_j + alpha_j d/dz_n + beta_j d/dzbar_n tangent to the
// Siegel boundary, with T = i(d/dz_n - d/dzbar_n).
Frame build_model_frame(const ModelSpec& spec);

Ex model_alpha(const ModelSpec& spec, int j);
Ex model_beta(const ModelSpec& spec, int j);

// Ambient (1,0) frame X_1..X_n of a structure whose first 2n-2 rows are
// standard.  Throws ConstraintViolated when the shape constraints fail.
std::vector<VectorField> build_star_frame(const StarSpec& spec, const IsZeroOptions& opt = {});

// Ambient (1,0) frame of a 2x2-block-diagonal structure
// (X_j = d/dz_j + alpha_j d/dzbar_j).  Throws when the matrix is not block
// diagonal or a block has no such eigenfield.
std::vector<VectorField> build_block_frame(const StructureMatrix& J, const IsZeroOptions& opt = {});

// Generic dispatch used by the CLI `defect` command.
std::vector<VectorField> ambient_frame(const LoadedStructure& s, const IsZeroOptions& opt = {});

struct FrameDecomposition {
    Ex gamma;                 // coefficient of T
    std::vector<Ex> a_coeffs; // coefficients of L_1..L_{n-1}
    std::vector<Ex> b_coeffs; // coefficients of conj(L_1)..conj(L_{n-1})
    VectorField residual;
    bool exact = true;
};

// Solves Y = gamma T + sum a_l L_l + sum b_l conj(L_l) over the rational
// function field.  Throws SqrtCoefficientsUnsupported for sqrt-bearing
// frames and SingularFrameAt0 when the frame degenerates at the origin.
FrameDecomposition decompose_in_frame(const VectorField& Y, const Frame& frame);

// Decomposition of Y over {X_1..X_n, conj(X_1)..conj(X_n)}: returns the 2n
// coefficients in that order.
std::vector<Ex> decompose_in_ambient(const VectorField& Y, const std::vector<VectorField>& Xs);

// Numeric variant at a point (works with sqrt coefficients).
std::vector<std::complex<double>> decompose_in_ambient_at(const VectorField& Y,
                                                          const std::vector<VectorField>& Xs,
                                                          const std::vector<std::complex<double>>& p);

// Coefficients of conj(X_1)..conj(X_n) in the decomposition of [X_j, X_k]:
// the image of the bracket under the projection onto T C^n / T^{1,0}.
std::vector<Ex> defect_projection(const std::vector<VectorField>& Xs, int j, int k);
std::vector<std::complex<double>> defect_projection_at(const std::vector<VectorField>& Xs, int j,
                                                       int k,
                                                       const std::vector<std::complex<double>>& p);

// Structure constants of a model frame, read off by decomposing the brackets
// (never from a closed form): [L_j, conj(L_k)] = gamma[j][k] T and
// [L_j, L_k] = c[j][k] T, both constant with no L / conj(L) components.
struct ModelBracketConstants {
    int n = 0;
    std::vector<std::vector<Scalar>> gamma; // (n-1)x(n-1)
    std::vector<std::vector<Scalar>> c;     // (n-1)x(n-1), antisymmetric
};

ModelBracketConstants model_bracket_constants(const ModelSpec& spec);

struct Hypersurface {
    int n = 0;
    Ex rho;
    Ex graph_rhs;            // substitution for zbar_n on the complexified surface
    int trunc_order = 4;
    bool exact_graph = true; // substitution solves rho = 0 exactly

    static Hypersurface siegel(int n);
    // rho must be real-valued with rho(0)=0 and d rho/d zbar_n = 1/2 at 0.
    static Hypersurface from_rho(int n, const Ex& rho, int trunc_order = 4);

    // Substitute zbar_n by the graph right-hand side.
    Ex reduce(const Ex& e) const;
};

// Reduce, then decide vanishing; on an inexact graph reduction the verdict
// applies to the truncation and degrees beyond trunc_order raise
// ReductionOrderInsufficient.
ZeroVerdict reduced_zero(const Hypersurface& G, const Ex& e, const IsZeroOptions& opt = {});

struct LeviOptions {
    double surface_tol = 1e-10;
    double tangent_tol = 1e-10;
    double imag_tol = 1e-9;
};

// J* d rho [X, JX] at p with X = Lsec + conj(Lsec); returns the real part.
double levi_form(const StructureMatrix& J, const Hypersurface& G, const VectorField& Lsec,
                 const std::vector<std::complex<double>>& p, const LeviOptions& opt = {});

// Same value with every derivative taken by central differences (step h);
// fully independent of the symbolic differentiation path.
double levi_form_fd(const StructureMatrix& J, const Hypersurface& G, const VectorField& Lsec,
                    const std::vector<std::complex<double>>& p, double h = 1e-5);

} // namespace crp
