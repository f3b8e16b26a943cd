#pragma once

#include <complex>
#include <string>

#include "numbers.hpp"

namespace crp {

// Gaussian rational re + i*im with exact arithmetic.
struct Scalar {
    Rat re;
    Rat im;

    Scalar() : re(0), im(0) {}
    Scalar(int v) : re(v), im(0) {}
    Scalar(Rat r) : re(std::move(r)), im(0) {}
    Scalar(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

    static Scalar zero() { return Scalar(); }
    static Scalar one() { return Scalar(1); }
    static Scalar imaginary_unit() { return Scalar(Rat(0), Rat(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_one() const { return im == 0 && re == 1; }
    bool is_real() const { return im == 0; }
    bool is_imaginary() const { return re == 0; }

    Scalar conj() const { return Scalar(re, -im); }

    Scalar operator-() const { return Scalar(-re, -im); }

    Scalar& operator+=(const Scalar& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        Rat r = re * o.re - im * o.im;
        Rat i = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(i);
        return *this;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }

    Scalar inverse() const {
        Rat n2 = re * re + im * im;
        if (n2 == 0) fail(Errc::DivisionByZeroPolynomial, "inverse of zero scalar");
        return Scalar(re / n2, -im / n2);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    // Arbitrary total order, used only for canonical container keys.
    friend bool operator<(const Scalar& a, const Scalar& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    }

    std::complex<double> to_complex() const { return {rat_double(re), rat_double(im)}; }

    // Renders within the expression grammar, e.g. "3/2", "i", "-2*i", "(1/2+3*i)".
    std::string str() const;
};

Scalar scalar_pow(const Scalar& b, unsigned e);

} // namespace crp
