#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace crp {

namespace {

Ex make(ExKind k) {
    auto n = std::make_shared<ExNode>();
    n->kind = k;
    return n;
}

const Ex& zero_ex() {
    static const Ex z = ex_const(Scalar::zero());
    return z;
}
const Ex& one_ex() {
    static const Ex o = ex_const(Scalar::one());
    return o;
}

} // namespace

Ex ex_const(Scalar s) {
    auto n = std::make_shared<ExNode>();
    n->kind = ExKind::Const;
    n->value = std::move(s);
    return n;
}

Ex ex_int(long v) { return ex_const(Scalar(Rat(v))); }
Ex ex_rat(Rat q) { return ex_const(Scalar(std::move(q))); }
Ex ex_i() { return ex_const(Scalar::imaginary_unit()); }

Ex ex_var(int j) {
    if (j < 1) fail(Errc::IndexOutOfRange, "variable index must be >= 1");
    auto n = std::make_shared<ExNode>();
    n->kind = ExKind::Var;
    n->var_index = j;
    return n;
}

Ex ex_varbar(int j) {
    if (j < 1) fail(Errc::IndexOutOfRange, "variable index must be >= 1");
    auto n = std::make_shared<ExNode>();
    n->kind = ExKind::Var;
    n->var_index = j;
    n->var_bar = true;
    return n;
}

Ex ex_sum(std::vector<Ex> terms) {
    std::vector<Ex> flat;
    Scalar c = Scalar::zero();
    for (auto& t : terms) {
        if (!t) fail(Errc::Internal, "null expression in sum");
        if (t->kind == ExKind::Const) {
            c += t->value;
        } else if (t->kind == ExKind::Sum) {
            for (auto& s : t->ch) {
                if (s->kind == ExKind::Const) c += s->value;
                else flat.push_back(s);
            }
        } else {
            flat.push_back(std::move(t));
        }
    }
    if (!c.is_zero()) flat.push_back(ex_const(c));
    if (flat.empty()) return zero_ex();
    if (flat.size() == 1) return flat[0];
    auto n = make(ExKind::Sum);
    const_cast<ExNode*>(n.get())->ch = std::move(flat);
    return n;
}

Ex ex_prod(std::vector<Ex> factors) {
    std::vector<Ex> flat;
    Scalar c = Scalar::one();
    for (auto& f : factors) {
        if (!f) fail(Errc::Internal, "null expression in product");
        if (f->kind == ExKind::Const) {
            if (f->value.is_zero()) return zero_ex();
            c *= f->value;
        } else if (f->kind == ExKind::Prod) {
            for (auto& g : f->ch) {
                if (g->kind == ExKind::Const) c *= g->value;
                else flat.push_back(g);
            }
        } else if (f->kind == ExKind::Neg) {
            c *= Scalar(Rat(-1));
            flat.push_back(f->ch[0]);
        } else {
            flat.push_back(std::move(f));
        }
    }
    if (c.is_zero()) return zero_ex();
    if (flat.empty()) return ex_const(c);
    if (!c.is_one()) flat.insert(flat.begin(), ex_const(c));
    if (flat.size() == 1) return flat[0];
    auto n = make(ExKind::Prod);
    const_cast<ExNode*>(n.get())->ch = std::move(flat);
    return n;
}

Ex ex_neg(Ex e) {
    if (!e) fail(Errc::Internal, "null expression in neg");
    if (e->kind == ExKind::Const) return ex_const(-e->value);
    if (e->kind == ExKind::Neg) return e->ch[0];
    auto n = make(ExKind::Neg);
    const_cast<ExNode*>(n.get())->ch = {std::move(e)};
    return n;
}

Ex ex_inv(Ex e) {
    if (!e) fail(Errc::Internal, "null expression in inv");
    if (e->kind == ExKind::Const) {
        if (e->value.is_zero()) fail(Errc::DivisionByZeroPolynomial, "inverse of zero");
        return ex_const(e->value.inverse());
    }
    if (e->kind == ExKind::Inv) return e->ch[0];
    auto n = make(ExKind::Inv);
    const_cast<ExNode*>(n.get())->ch = {std::move(e)};
    return n;
}

Ex ex_sqrt(Ex e) {
    if (!e) fail(Errc::Internal, "null expression in sqrt");
    if (e->kind == ExKind::Const) {
        const Scalar& s = e->value;
        if (!s.is_real() || s.re < 0)
            fail(Errc::InvalidSqrtArgument, "sqrt of a non-real or negative constant");
        if (auto r = rat_sqrt_exact(s.re)) return ex_rat(*r);
    }
    // Self-conjugacy of sqrt-free arguments is enforced where polynomial
    // normalization is available; see poly.cpp (ex_sqrt_checked).
    auto n = make(ExKind::Sqrt);
    const_cast<ExNode*>(n.get())->ch = {std::move(e)};
    return n;
}

Ex ex_pow(Ex e, unsigned k) {
    if (k == 0) return one_ex();
    if (k == 1) return e;
    std::vector<Ex> fs(k, e);
    return ex_prod(std::move(fs));
}

Ex ex_x(int j) {
    return ex_prod({ex_rat(Rat(1) / 2), ex_sum({ex_var(j), ex_varbar(j)})});
}

Ex ex_y(int j) {
    // 1/(2i) = -i/2
    return ex_prod({ex_const(Scalar(Rat(0), Rat(-1) / 2)), ex_sum({ex_var(j), ex_neg(ex_varbar(j))})});
}

bool ex_is_zero_literal(const Ex& e) { return e->kind == ExKind::Const && e->value.is_zero(); }

bool ex_is_const(const Ex& e, Scalar* out) {
    if (e->kind != ExKind::Const) return false;
    if (out) *out = e->value;
    return true;
}

bool ex_contains_sqrt(const Ex& e) {
    if (e->kind == ExKind::Sqrt) return true;
    for (const auto& c : e->ch)
        if (ex_contains_sqrt(c)) return true;
    return false;
}

bool ex_structural_equal(const Ex& a, const Ex& b) {
    if (a.get() == b.get()) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExKind::Const: return a->value == b->value;
        case ExKind::Var: return a->var_index == b->var_index && a->var_bar == b->var_bar;
        default: break;
    }
    if (a->ch.size() != b->ch.size()) return false;
    for (std::size_t k = 0; k < a->ch.size(); ++k)
        if (!ex_structural_equal(a->ch[k], b->ch[k])) return false;
    return true;
}

int ex_max_var_index(const Ex& e) {
    if (e->kind == ExKind::Var) return e->var_index;
    int m = 0;
    for (const auto& c : e->ch) m = std::max(m, ex_max_var_index(c));
    return m;
}

Ex ex_conj(const Ex& e) {
    switch (e->kind) {
        case ExKind::Const: return ex_const(e->value.conj());
        case ExKind::Var: return e->var_bar ? ex_var(e->var_index) : ex_varbar(e->var_index);
        case ExKind::Sum: {
            std::vector<Ex> t;
            t.reserve(e->ch.size());
            for (const auto& c : e->ch) t.push_back(ex_conj(c));
            return ex_sum(std::move(t));
        }
        case ExKind::Prod: {
            std::vector<Ex> t;
            t.reserve(e->ch.size());
            for (const auto& c : e->ch) t.push_back(ex_conj(c));
            return ex_prod(std::move(t));
        }
        case ExKind::Neg: return ex_neg(ex_conj(e->ch[0]));
        case ExKind::Inv: return ex_inv(ex_conj(e->ch[0]));
        case ExKind::Sqrt: return ex_sqrt(ex_conj(e->ch[0]));
    }
    fail(Errc::Internal, "bad expression kind");
}

Ex ex_wirtinger(const Ex& e, int j, bool bar) {
    switch (e->kind) {
        case ExKind::Const: return zero_ex();
        case ExKind::Var:
            return (e->var_index == j && e->var_bar == bar) ? one_ex() : zero_ex();
        case ExKind::Sum: {
            std::vector<Ex> t;
            t.reserve(e->ch.size());
            for (const auto& c : e->ch) t.push_back(ex_wirtinger(c, j, bar));
            return ex_sum(std::move(t));
        }
        case ExKind::Prod: {
            std::vector<Ex> t;
            for (std::size_t k = 0; k < e->ch.size(); ++k) {
                Ex dk = ex_wirtinger(e->ch[k], j, bar);
                if (ex_is_zero_literal(dk)) continue;
                std::vector<Ex> fs;
                fs.reserve(e->ch.size());
                for (std::size_t l = 0; l < e->ch.size(); ++l) fs.push_back(l == k ? dk : e->ch[l]);
                t.push_back(ex_prod(std::move(fs)));
            }
            return ex_sum(std::move(t));
        }
        case ExKind::Neg: return ex_neg(ex_wirtinger(e->ch[0], j, bar));
        case ExKind::Inv: {
            // d(1/u) = -u' / u^2
            Ex du = ex_wirtinger(e->ch[0], j, bar);
            if (ex_is_zero_literal(du)) return zero_ex();
            return ex_neg(ex_prod({du, ex_inv(ex_prod({e->ch[0], e->ch[0]}))}));
        }
        case ExKind::Sqrt: {
            // d sqrt(u) = u' / (2 sqrt(u))
            Ex du = ex_wirtinger(e->ch[0], j, bar);
            if (ex_is_zero_literal(du)) return zero_ex();
            return ex_prod({ex_rat(Rat(1) / 2), du, ex_inv(e)});
        }
    }
    fail(Errc::Internal, "bad expression kind");
}

Ex ex_subst(const Ex& e, const std::vector<Ex>& subs) {
    switch (e->kind) {
        case ExKind::Const: return e;
        case ExKind::Var: {
            std::size_t slot = 2 * static_cast<std::size_t>(e->var_index - 1) + (e->var_bar ? 1 : 0);
            if (slot < subs.size() && subs[slot]) return subs[slot];
            return e;
        }
        case ExKind::Sum: {
            std::vector<Ex> t;
            t.reserve(e->ch.size());
            for (const auto& c : e->ch) t.push_back(ex_subst(c, subs));
            return ex_sum(std::move(t));
        }
        case ExKind::Prod: {
            std::vector<Ex> t;
            t.reserve(e->ch.size());
            for (const auto& c : e->ch) t.push_back(ex_subst(c, subs));
            return ex_prod(std::move(t));
        }
        case ExKind::Neg: return ex_neg(ex_subst(e->ch[0], subs));
        case ExKind::Inv: return ex_inv(ex_subst(e->ch[0], subs));
        case ExKind::Sqrt: return ex_sqrt(ex_subst(e->ch[0], subs));
    }
    fail(Errc::Internal, "bad expression kind");
}

std::complex<double> ex_eval(const Ex& e, const std::vector<std::complex<double>>& point,
                             const EvalOptions& opt) {
    using C = std::complex<double>;
    switch (e->kind) {
        case ExKind::Const: return e->value.to_complex();
        case ExKind::Var: {
            std::size_t j = static_cast<std::size_t>(e->var_index);
            if (j < 1 || j > point.size())
                fail(Errc::IndexOutOfRange, "evaluation point has too few coordinates");
            C v = point[j - 1];
            return e->var_bar ? std::conj(v) : v;
        }
        case ExKind::Sum: {
            C acc{0.0, 0.0};
            for (const auto& c : e->ch) acc += ex_eval(c, point, opt);
            return acc;
        }
        case ExKind::Prod: {
            C acc{1.0, 0.0};
            for (const auto& c : e->ch) acc *= ex_eval(c, point, opt);
            return acc;
        }
        case ExKind::Neg: return -ex_eval(e->ch[0], point, opt);
        case ExKind::Inv: {
            C v = ex_eval(e->ch[0], point, opt);
            if (std::abs(v) < opt.pole_tol) fail(Errc::PoleAtPoint, "denominator vanishes at point");
            return C{1.0, 0.0} / v;
        }
        case ExKind::Sqrt: {
            C v = ex_eval(e->ch[0], point, opt);
            double scale = std::max(1.0, std::abs(v));
            if (std::abs(v.imag()) > opt.sqrt_imag_tol * scale)
                fail(Errc::NegativeSqrtArgument, "sqrt argument is not real at point");
            if (v.real() < -opt.sqrt_imag_tol)
                fail(Errc::NegativeSqrtArgument, "sqrt argument is negative at point");
            return C{std::sqrt(std::max(v.real(), 0.0)), 0.0};
        }
    }
    fail(Errc::Internal, "bad expression kind");
}

// --- printing ----------------------------------------------------------

namespace {

// precedence: 0 sum, 1 product, 2 atom
void print_rec(std::ostringstream& os, const Ex& e, int parent_prec);

void print_wrapped(std::ostringstream& os, const Ex& e, int prec, int parent_prec) {
    if (prec < parent_prec) {
        os << "(";
        print_rec(os, e, 0);
        os << ")";
    } else {
        print_rec(os, e, parent_prec);
    }
}

void print_rec(std::ostringstream& os, const Ex& e, int parent_prec) {
    switch (e->kind) {
        case ExKind::Const: {
            std::string s = e->value.str();
            // Scalar::str parenthesizes mixed values itself; a leading '-'
            // needs product-level protection.
            if (parent_prec >= 1 && !s.empty() && s[0] == '-') os << "(" << s << ")";
            else os << s;
            return;
        }
        case ExKind::Var:
            os << (e->var_bar ? "zbar" : "z") << e->var_index;
            return;
        case ExKind::Sum: {
            if (parent_prec >= 1) os << "(";
            bool first = true;
            for (const auto& c : e->ch) {
                if (c->kind == ExKind::Neg) {
                    os << (first ? "-" : " - ");
                    print_wrapped(os, c->ch[0], c->ch[0]->kind == ExKind::Sum ? 0 : 2, 1);
                } else {
                    if (!first) os << " + ";
                    print_rec(os, c, 1);
                }
                first = false;
            }
            if (parent_prec >= 1) os << ")";
            return;
        }
        case ExKind::Prod: {
            if (parent_prec >= 2) os << "(";
            bool first = true;
            for (std::size_t k = 0; k < e->ch.size(); ++k) {
                if (!first) os << "*";
                // group equal adjacent factors as powers
                std::size_t run = 1;
                while (k + run < e->ch.size() && ex_structural_equal(e->ch[k], e->ch[k + run])) ++run;
                if (run > 1) {
                    print_wrapped(os, e->ch[k], 2, 2);
                    os << "^" << run;
                    k += run - 1;
                } else {
                    print_rec(os, e->ch[k], 1);
                }
                first = false;
            }
            if (parent_prec >= 2) os << ")";
            return;
        }
        case ExKind::Neg:
            if (parent_prec >= 1) {
                os << "(-";
                print_wrapped(os, e->ch[0], 2, 2);
                os << ")";
            } else {
                os << "-";
                print_wrapped(os, e->ch[0], 2, 2);
            }
            return;
        case ExKind::Inv:
            os << "1/";
            print_wrapped(os, e->ch[0], 2, 2);
            return;
        case ExKind::Sqrt:
            os << "sqrt(";
            print_rec(os, e->ch[0], 0);
            os << ")";
            return;
    }
}

} // namespace

std::string ex_print(const Ex& e) {
    std::ostringstream os;
    print_rec(os, e, 0);
    return os.str();
}

// --- parser ------------------------------------------------------------

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    int n;

    explicit Parser(const std::string& text, int dim) : s(text), n(dim) {}

    [[noreturn]] void err(const std::string& msg) { fail(Errc::SyntaxError, msg + " at position " + std::to_string(pos), pos); }

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    BigInt parse_uint() {
        skip_ws();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) err("expected number");
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        return BigInt(s.substr(start, pos - start));
    }

    int parse_index() {
        std::size_t at = pos;
        BigInt v = parse_uint();
        if (v < 1 || v > 4096) fail(Errc::IndexOutOfRange, "variable index out of range at position " + std::to_string(at), at);
        int j = static_cast<int>(v);
        if (n > 0 && j > n)
            fail(Errc::IndexOutOfRange,
                 "variable index " + std::to_string(j) + " exceeds declared dimension " + std::to_string(n) +
                     " at position " + std::to_string(at),
                 at);
        return j;
    }

    Ex parse_expr() {
        Ex acc = parse_term();
        for (;;) {
            if (eat('+')) acc = acc + parse_term();
            else if (eat('-')) acc = acc - parse_term();
            else return acc;
        }
    }

    Ex parse_term() {
        Ex acc = parse_factor();
        for (;;) {
            if (eat('*')) acc = acc * parse_factor();
            else if (eat('/')) acc = acc * ex_inv(parse_factor());
            else return acc;
        }
    }

    Ex parse_factor() {
        Ex a = parse_atom();
        if (eat('^')) {
            BigInt k = parse_uint();
            if (k > 64) err("exponent too large");
            return ex_pow(a, static_cast<unsigned>(k));
        }
        return a;
    }

    Ex parse_atom() {
        skip_ws();
        if (pos >= s.size()) err("unexpected end of input");
        char c = s[pos];
        if (c == '-') {
            ++pos;
            return ex_neg(parse_atom());
        }
        if (c == '(') {
            ++pos;
            Ex e = parse_expr();
            if (!eat(')')) err("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            BigInt num = parse_uint();
            // 'int/uint' is a rational literal; '/' followed by anything else
            // is the term-level division operator
            skip_ws();
            if (pos + 1 < s.size() && s[pos] == '/' && std::isdigit(static_cast<unsigned char>(s[pos + 1]))) {
                ++pos;
                std::size_t at = pos;
                BigInt den = parse_uint();
                if (den == 0) fail(Errc::SyntaxError, "zero denominator at position " + std::to_string(at), at);
                return ex_rat(make_rat(num, den));
            }
            return ex_rat(Rat(num));
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
            std::string word = s.substr(start, pos - start);
            if (word == "i") return ex_i();
            if (word == "sqrt" || word == "conj") {
                if (!eat('(')) err("expected '(' after " + word);
                Ex e = parse_expr();
                if (!eat(')')) err("expected ')'");
                return word == "sqrt" ? ex_sqrt(e) : ex_conj(e);
            }
            if (word == "z") return ex_var(parse_index());
            if (word == "zbar") return ex_varbar(parse_index());
            if (word == "x") return ex_x(parse_index());
            if (word == "y") return ex_y(parse_index());
            pos = start;
            fail(Errc::UnknownVariable, "unknown symbol '" + word + "' at position " + std::to_string(start), start);
        }
        err(std::string("unexpected character '") + c + "'");
    }
};

} // namespace

Ex ex_parse(const std::string& text, int n) {
    Parser p(text, n);
    Ex e = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size()) p.err("trailing input");
    return e;
}

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::Ok: return "Ok";
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::UnknownVariable: return "UnknownVariable";
        case Errc::IndexOutOfRange: return "IndexOutOfRange";
        case Errc::SqrtPresent: return "SqrtPresent";
        case Errc::DivisionByZeroPolynomial: return "DivisionByZeroPolynomial";
        case Errc::InvalidSqrtArgument: return "InvalidSqrtArgument";
        case Errc::NegativeSqrtArgument: return "NegativeSqrtArgument";
        case Errc::PoleAtPoint: return "PoleAtPoint";
        case Errc::NoValidSamplePoint: return "NoValidSamplePoint";
        case Errc::SingularFrameAt0: return "SingularFrameAt0";
        case Errc::SqrtCoefficientsUnsupported: return "SqrtCoefficientsUnsupported";
        case Errc::ConstraintViolated: return "ConstraintViolated";
        case Errc::NonTermination: return "NonTermination";
        case Errc::ReductionOrderInsufficient: return "ReductionOrderInsufficient";
        case Errc::NotTangent: return "NotTangent";
        case Errc::NotOnSurface: return "NotOnSurface";
        case Errc::BadInput: return "BadInput";
        case Errc::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace crp
