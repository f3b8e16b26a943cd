#pragma once

#include "atoms.hpp"

namespace crp::jet {

// Operator letters over the frame alphabet.
enum class LetterKind : std::uint8_t { T, L, Lbar };

struct Letter {
    LetterKind kind;
    std::uint8_t idx = 0; // 1..n-1 for L / Lbar

    static Letter t() { return {LetterKind::T, 0}; }
    static Letter l(int j) { return {LetterKind::L, static_cast<std::uint8_t>(j)}; }
    static Letter lbar(int j) { return {LetterKind::Lbar, static_cast<std::uint8_t>(j)}; }

    friend bool operator==(const Letter& a, const Letter& b) = default;
    std::string str() const {
        switch (kind) {
            case LetterKind::T: return "T";
            case LetterKind::L: return "L" + std::to_string(idx);
            case LetterKind::Lbar: return "Lbar" + std::to_string(idx);
        }
        return "?";
    }
};

// Canonical jet variable T^t L^word f_idx (plain side) or
// T^t Lbar^word fbar_idx (bar side); word stored ascending.
//
// Canonical forms never carry a word or a T factor on the n-th target: an
// operator letter on f_n / fbar_n always rewrites through the tangential
// relations or the transversal closure rule.
struct JetVar {
    bool bar = false;
    std::uint8_t idx = 1;
    std::uint8_t t = 0;
    std::vector<std::uint8_t> word;

    int order() const { return t + static_cast<int>(word.size()); }

    friend bool operator==(const JetVar& a, const JetVar& b) = default;
    friend auto operator<=>(const JetVar& a, const JetVar& b) = default;

    JetVar conj() const {
        JetVar v = *this;
        v.bar = !v.bar;
        return v;
    }

    std::string str() const {
        std::string s;
        for (int k = 0; k < t; ++k) s += "T ";
        for (auto w : word) s += (bar ? "Lbar" : "L") + std::to_string(w) + " ";
        s += (bar ? "fbar" : "f") + std::to_string(idx);
        return s;
    }
};

// Monomial: sorted (var, exponent) pairs.
using JetMono = std::vector<std::pair<JetVar, std::uint32_t>>;

inline JetMono jm_mul(const JetMono& a, const JetMono& b) {
    JetMono out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) out.push_back(a[i++]);
        else if (i >= a.size() || b[j].first < a[i].first) out.push_back(b[j++]);
        else {
            out.emplace_back(a[i].first, a[i].second + b[j].second);
            ++i;
            ++j;
        }
    }
    return out;
}

class JetPoly {
public:
    JetPoly() = default;

    static JetPoly variable(JetVar v) {
        JetPoly p;
        p.terms_.emplace(JetMono{{std::move(v), 1}}, AtomPoly(Scalar::one()));
        return p;
    }
    static JetPoly constant(AtomPoly c) {
        JetPoly p;
        if (!c.is_zero()) p.terms_.emplace(JetMono{}, std::move(c));
        return p;
    }

    bool is_zero() const { return terms_.empty(); }
    const std::map<JetMono, AtomPoly>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    void add_term(const JetMono& m, const AtomPoly& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend JetPoly operator+(const JetPoly& a, const JetPoly& b) {
        JetPoly out = a;
        for (const auto& [m, c] : b.terms_) out.add_term(m, c);
        return out;
    }
    friend JetPoly operator-(const JetPoly& a, const JetPoly& b) {
        JetPoly out = a;
        for (const auto& [m, c] : b.terms_) out.add_term(m, -c);
        return out;
    }
    friend JetPoly operator-(const JetPoly& a) {
        JetPoly out;
        for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
        return out;
    }
    friend JetPoly operator*(const JetPoly& a, const JetPoly& b) {
        JetPoly out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) out.add_term(jm_mul(ma, mb), ca * cb);
        return out;
    }
    friend JetPoly operator*(const AtomPoly& c, const JetPoly& a) {
        JetPoly out;
        for (const auto& [m, pc] : a.terms_) out.add_term(m, c * pc);
        return out;
    }
    friend bool operator==(const JetPoly& a, const JetPoly& b) { return a.terms_ == b.terms_; }

    JetPoly conj(const AtomTable& tab) const {
        JetPoly out;
        for (const auto& [m, c] : terms_) {
            JetMono cm;
            cm.reserve(m.size());
            for (const auto& [v, e] : m) cm.emplace_back(v.conj(), e);
            std::sort(cm.begin(), cm.end());
            out.add_term(cm, c.conj(tab));
        }
        return out;
    }

    int max_order() const {
        int m = 0;
        for (const auto& [mono, c] : terms_) {
            (void)c;
            for (const auto& [v, e] : mono) {
                (void)e;
                m = std::max(m, v.order());
            }
        }
        return m;
    }

    std::string str(const AtomTable& tab) const;

private:
    std::map<JetMono, AtomPoly> terms_;
};

} // namespace crp::jet
