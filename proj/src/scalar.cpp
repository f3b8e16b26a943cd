#include "scalar.hpp"

namespace crp {

std::string Scalar::str() const {
    if (im == 0) return rat_str(re);
    std::string imag;
    if (im == 1) {
        imag = "i";
    } else if (im == -1) {
        imag = "-i";
    } else {
        imag = rat_str(im) + "*i";
    }
    if (re == 0) return imag;
    std::string s = "(" + rat_str(re);
    if (imag[0] != '-') s += "+";
    s += imag;
    s += ")";
    return s;
}

Scalar scalar_pow(const Scalar& b, unsigned e) {
    Scalar acc = Scalar::one();
    Scalar base = b;
    while (e) {
        if (e & 1u) acc *= base;
        base *= base;
        e >>= 1u;
    }
    return acc;
}

} // namespace crp
