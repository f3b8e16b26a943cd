#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "../scalar.hpp"

namespace crp::jet {

// Symbolic constants of the rewrite system: the frame coefficients a_{j,l},
// b_{j,l} (and conjugates) and the bracket constants gamma_{j,k}, c_{j,k}.
// Conjugation acts as an involution with signs: conj(gamma[j][k]) is
// -gamma[k][j], which makes the diagonal entries purely imaginary.
struct AtomTable {
    std::vector<std::string> names;
    std::vector<std::uint32_t> conj_partner;
    std::vector<int> conj_sign; // +1 or -1

    std::uint32_t add(const std::string& name) {
        names.push_back(name);
        conj_partner.push_back(static_cast<std::uint32_t>(names.size() - 1));
        conj_sign.push_back(1);
        return static_cast<std::uint32_t>(names.size() - 1);
    }
    void set_conj(std::uint32_t a, std::uint32_t b, int sign) {
        conj_partner[a] = b;
        conj_partner[b] = a;
        conj_sign[a] = sign;
        conj_sign[b] = sign;
    }
};

// Laurent monomial in atoms (exponents may be negative, from divisions by
// bracket constants).
using AtomMono = std::vector<std::pair<std::uint32_t, std::int32_t>>; // sorted by atom id

// Polynomial in atoms over Gaussian rationals.
class AtomPoly {
public:
    AtomPoly() = default;
    /*implicit*/ AtomPoly(Scalar s) {
        if (!s.is_zero()) terms_.emplace(AtomMono{}, std::move(s));
    }
    static AtomPoly atom(std::uint32_t id) {
        AtomPoly p;
        p.terms_.emplace(AtomMono{{id, 1}}, Scalar::one());
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    bool is_scalar(Scalar* out = nullptr) const {
        if (terms_.empty()) {
            if (out) *out = Scalar::zero();
            return true;
        }
        if (terms_.size() == 1 && terms_.begin()->first.empty()) {
            if (out) *out = terms_.begin()->second;
            return true;
        }
        return false;
    }
    // single term c * m (invertible in the Laurent ring when c != 0)
    bool is_single_term() const { return terms_.size() == 1; }

    const std::map<AtomMono, Scalar>& terms() const { return terms_; }

    friend AtomPoly operator+(const AtomPoly& a, const AtomPoly& b) {
        AtomPoly out = a;
        for (const auto& [m, c] : b.terms_) out.add_term(m, c);
        return out;
    }
    friend AtomPoly operator-(const AtomPoly& a, const AtomPoly& b) {
        AtomPoly out = a;
        for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
        return out;
    }
    friend AtomPoly operator-(const AtomPoly& a) {
        AtomPoly out;
        for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
        return out;
    }
    friend AtomPoly operator*(const AtomPoly& a, const AtomPoly& b) {
        AtomPoly out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(mono_mul(ma, mb), ca * cb);
        return out;
    }
    friend bool operator==(const AtomPoly& a, const AtomPoly& b) { return a.terms_ == b.terms_; }

    // division by an invertible single-term polynomial
    AtomPoly divide_by_term(const AtomPoly& d) const {
        if (d.terms_.size() != 1) fail(Errc::Internal, "atom division requires a single-term divisor");
        const auto& [dm, dc] = *d.terms_.begin();
        if (dc.is_zero()) fail(Errc::DivisionByZeroPolynomial, "atom division by zero");
        AtomMono dinv;
        dinv.reserve(dm.size());
        for (auto [id, e] : dm) dinv.emplace_back(id, -e);
        Scalar cinv = dc.inverse();
        AtomPoly out;
        for (const auto& [m, c] : terms_) out.add_term(mono_mul(m, dinv), c * cinv);
        return out;
    }

    AtomPoly conj(const AtomTable& tab) const {
        AtomPoly out;
        for (const auto& [m, c] : terms_) {
            AtomMono cm;
            cm.reserve(m.size());
            Scalar coeff = c.conj();
            for (auto [id, e] : m) {
                cm.emplace_back(tab.conj_partner[id], e);
                if (tab.conj_sign[id] < 0 && (e % 2 != 0)) coeff = -coeff;
            }
            std::sort(cm.begin(), cm.end());
            out.add_term(cm, coeff);
        }
        return out;
    }

    std::string str(const AtomTable& tab) const;

private:
    std::map<AtomMono, Scalar> terms_;

    static AtomMono mono_mul(const AtomMono& a, const AtomMono& b) {
        AtomMono out;
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
                out.push_back(a[i++]);
            } else if (i >= a.size() || b[j].first < a[i].first) {
                out.push_back(b[j++]);
            } else {
                std::int32_t e = a[i].second + b[j].second;
                if (e != 0) out.emplace_back(a[i].first, e);
                ++i;
                ++j;
            }
        }
        return out;
    }

    void add_term(const AtomMono& m, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }
};

} // namespace crp::jet
