#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace crp {

// Immutable expression tree over z_1..z_n, zbar_1..zbar_n with Gaussian
// rational constants.  Conjugation is eliminated eagerly (pushed to the
// leaves), so no Conj node kind is stored.
enum class ExKind : std::uint8_t { Const, Var, Sum, Prod, Neg, Inv, Sqrt };

struct ExNode;
using Ex = std::shared_ptr<const ExNode>;

struct ExNode {
    ExKind kind;
    Scalar value;        // Const
    int var_index = 0;   // Var, 1-based
    bool var_bar = false;
    std::vector<Ex> ch;
};

// --- constructors -----------------------------------------------------

Ex ex_const(Scalar s);
Ex ex_int(long v);
Ex ex_rat(Rat q);
Ex ex_i();
Ex ex_var(int j);     // z_j
Ex ex_varbar(int j);  // zbar_j
Ex ex_sum(std::vector<Ex> terms);
Ex ex_prod(std::vector<Ex> factors);
Ex ex_neg(Ex e);
Ex ex_inv(Ex e);            // throws on a literally zero child
Ex ex_sqrt(Ex e);           // argument must be self-conjugate (checked when sqrt-free)
Ex ex_pow(Ex e, unsigned k);

inline Ex operator+(const Ex& a, const Ex& b) { return ex_sum({a, b}); }
inline Ex operator-(const Ex& a, const Ex& b) { return ex_sum({a, ex_neg(b)}); }
inline Ex operator*(const Ex& a, const Ex& b) { return ex_prod({a, b}); }
inline Ex operator-(const Ex& a) { return ex_neg(a); }

// x_j = (z_j + zbar_j)/2,  y_j = (z_j - zbar_j)/(2i)
Ex ex_x(int j);
Ex ex_y(int j);

// --- queries ----------------------------------------------------------

bool ex_is_zero_literal(const Ex& e);
bool ex_is_const(const Ex& e, Scalar* out = nullptr);
bool ex_contains_sqrt(const Ex& e);
bool ex_structural_equal(const Ex& a, const Ex& b);
int ex_max_var_index(const Ex& e);

// --- operations -------------------------------------------------------

Ex ex_conj(const Ex& e);

// Formal Wirtinger derivative; z_j and zbar_j are independent.
Ex ex_wirtinger(const Ex& e, int j, bool bar);

// Substitute variables: subs[k] (k = 0..2n-1, slot 2(j-1)+bar) replaces the
// variable when the pointer is non-null.
Ex ex_subst(const Ex& e, const std::vector<Ex>& subs);

struct EvalOptions {
    double sqrt_imag_tol = 1e-12;
    double pole_tol = 1e-14;
};

// point[j-1] is the value of z_j; zbar_j evaluates to its conjugate.
std::complex<double> ex_eval(const Ex& e, const std::vector<std::complex<double>>& point,
                             const EvalOptions& opt = {});

std::string ex_print(const Ex& e);

// Parses the expression mini-language; n is the declared dimension used to
// range-check variable indices.
Ex ex_parse(const std::string& text, int n);

} // namespace crp
