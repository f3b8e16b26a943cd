#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zerotest.hpp"

namespace crp {

// Complexified almost complex structure on C^n: a 2n x 2n matrix of
// expressions in the basis (d/dz1, d/dzbar1, ..., d/dzn, d/dzbarn).
//
// Basis order matters everywhere below: row/column 2j-1 is the dz_j slot and
// row/column 2j the dzbar_j slot (1-based).  Mixing these up silently breaks
// every reality check, so all accessors take 1-based (row, col).
struct StructureMatrix {
    int n = 0;
    std::vector<Ex> entries; // row-major, size (2n)^2

    static StructureMatrix zero(int n);

    const Ex& at(int row, int col) const { return entries[idx(row, col)]; }
    void set(int row, int col, Ex e) { entries[idx(row, col)] = std::move(e); }

    std::size_t idx(int row, int col) const {
        return static_cast<std::size_t>(row - 1) * static_cast<std::size_t>(2 * n) +
               static_cast<std::size_t>(col - 1);
    }

    bool has_sqrt() const;
};

// Model structure data: for each j = 1..n-1 the linear form
// Lt_{2n,2j-1}(z,zbar) = sum_l (alpha_l z_l + beta_l zbar_l), z'-variables only.
struct ModelSpec {
    int n = 0;
    // coef[j-1][l-1] = (alpha, beta) pair for z_l / zbar_l
    std::vector<std::vector<std::pair<Scalar, Scalar>>> coef;

    static ModelSpec zero(int n);
    Ex linear_form(int j) const; // Lt_{2n,2j-1}
};

// Last-two-rows data of a structure with rows 1..2n-2 standard:
// entries[k-1] = Lt_{2n-1,k} for k = 1..2n.
struct StarSpec {
    int n = 0;
    std::vector<Ex> entries;

    static StarSpec zero(int n);
    const Ex& lt(int col) const { return entries[static_cast<std::size_t>(col - 1)]; }
};

StructureMatrix build_standard(int n);
StructureMatrix build_model(const ModelSpec& spec);
StructureMatrix build_condition_star(const StarSpec& spec);

// Entrywise J*J + I.
std::vector<Ex> involution_residual_entries(const StructureMatrix& J);

struct ResidualReport {
    bool all_zero = true;
    bool exact = true; // false when any verdict was only ProbablyZero
    std::vector<std::pair<std::string, ZeroVerdict>> nonzero; // label -> witness
};

ResidualReport involution_residual_report(const StructureMatrix& J, const IsZeroOptions& opt = {});

// Reality pairing: entry(2k,2l) = conj(entry(2k-1,2l-1)),
// entry(2k,2l-1) = conj(entry(2k-1,2l)).
ResidualReport reality_report(const StructureMatrix& J, const IsZeroOptions& opt = {});

struct StarResiduals {
    // one expression per constraint, with stable labels
    std::vector<std::pair<std::string, Ex>> items;
};

// The 2(n-1)+2 constraints forced by J^2 = -I on the star shape.
StarResiduals star_constraint_residuals(const StarSpec& spec);

ResidualReport star_constraint_report(const StarSpec& spec, const IsZeroOptions& opt = {});

// Degree <= 1 truncation at 0 of an entry (for the first-order vanishing
// property of the odd-column entries).
Ex degree_le1_part(const Ex& e, int n);

// --- JSON interface ----------------------------------------------------

enum class StructKind { Standard, Model, Star, Raw };

struct LoadedStructure {
    StructKind kind;
    int n;
    StructureMatrix matrix;
    std::optional<ModelSpec> model;
    std::optional<StarSpec> star;
};

LoadedStructure load_structure_json(const std::string& json_text);
LoadedStructure load_structure_file(const std::string& path);
std::string structure_kind_name(StructKind k);

} // namespace crp
