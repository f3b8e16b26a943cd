#include "structure.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace crp {

StructureMatrix StructureMatrix::zero(int n) {
    StructureMatrix m;
    m.n = n;
    m.entries.assign(static_cast<std::size_t>(4 * n * n), ex_int(0));
    return m;
}

bool StructureMatrix::has_sqrt() const {
    for (const auto& e : entries)
        if (ex_contains_sqrt(e)) return true;
    return false;
}

ModelSpec ModelSpec::zero(int n) {
    ModelSpec s;
    s.n = n;
    s.coef.assign(static_cast<std::size_t>(n - 1),
                  std::vector<std::pair<Scalar, Scalar>>(static_cast<std::size_t>(n - 1),
                                                         {Scalar::zero(), Scalar::zero()}));
    return s;
}

Ex ModelSpec::linear_form(int j) const {
    std::vector<Ex> terms;
    const auto& row = coef[static_cast<std::size_t>(j - 1)];
    for (int l = 1; l <= n - 1; ++l) {
        const auto& [al, be] = row[static_cast<std::size_t>(l - 1)];
        if (!al.is_zero()) terms.push_back(ex_const(al) * ex_var(l));
        if (!be.is_zero()) terms.push_back(ex_const(be) * ex_varbar(l));
    }
    return ex_sum(std::move(terms));
}

StarSpec StarSpec::zero(int n) {
    StarSpec s;
    s.n = n;
    s.entries.assign(static_cast<std::size_t>(2 * n), ex_int(0));
    return s;
}

StructureMatrix build_standard(int n) {
    if (n < 2) fail(Errc::BadInput, "dimension must be at least 2");
    StructureMatrix m = StructureMatrix::zero(n);
    for (int j = 1; j <= n; ++j) {
        m.set(2 * j - 1, 2 * j - 1, ex_i());
        m.set(2 * j, 2 * j, ex_neg(ex_i()));
    }
    return m;
}

StructureMatrix build_model(const ModelSpec& spec) {
    StructureMatrix m = build_standard(spec.n);
    const int n = spec.n;
    for (int j = 1; j <= n - 1; ++j) {
        Ex lt = spec.linear_form(j); // Lt_{2n,2j-1}
        m.set(2 * n, 2 * j - 1, lt);
        m.set(2 * n - 1, 2 * j, ex_conj(lt));
    }
    return m;
}

StructureMatrix build_condition_star(const StarSpec& spec) {
    StructureMatrix m = build_standard(spec.n);
    const int n = spec.n;
    // row 2n-1 takes the given entries (the diagonal i stays additive),
    // row 2n is pinned by the reality pairing
    for (int l = 1; l <= n; ++l) {
        const Ex& odd = spec.lt(2 * l - 1);
        const Ex& even = spec.lt(2 * l);
        Ex r1_odd = (2 * l - 1 == 2 * n - 1) ? ex_i() + odd : odd;
        m.set(2 * n - 1, 2 * l - 1, r1_odd);
        m.set(2 * n - 1, 2 * l, even);
        m.set(2 * n, 2 * l - 1, ex_conj(even));
        Ex r2_even = (2 * l == 2 * n) ? ex_neg(ex_i()) + ex_conj(odd) : ex_conj(odd);
        m.set(2 * n, 2 * l, r2_even);
    }
    return m;
}

std::vector<Ex> involution_residual_entries(const StructureMatrix& J) {
    const int d = 2 * J.n;
    std::vector<Ex> out(static_cast<std::size_t>(d * d));
    for (int r = 1; r <= d; ++r) {
        for (int c = 1; c <= d; ++c) {
            std::vector<Ex> acc;
            for (int k = 1; k <= d; ++k) {
                const Ex& a = J.at(r, k);
                const Ex& b = J.at(k, c);
                if (ex_is_zero_literal(a) || ex_is_zero_literal(b)) continue;
                acc.push_back(a * b);
            }
            if (r == c) acc.push_back(ex_int(1));
            out[J.idx(r, c)] = ex_sum(std::move(acc));
        }
    }
    return out;
}

namespace {

ResidualReport report_entries(const std::vector<std::pair<std::string, Ex>>& items, int n,
                              const IsZeroOptions& opt) {
    ResidualReport rep;
    for (const auto& [label, e] : items) {
        ZeroVerdict v = is_zero(e, n, opt);
        if (v.kind == ZeroKind::NonZero) {
            rep.all_zero = false;
            rep.nonzero.emplace_back(label, v);
        } else if (v.kind == ZeroKind::ProbablyZero) {
            rep.exact = false;
        }
    }
    return rep;
}

} // namespace

ResidualReport involution_residual_report(const StructureMatrix& J, const IsZeroOptions& opt) {
    auto res = involution_residual_entries(J);
    std::vector<std::pair<std::string, Ex>> items;
    const int d = 2 * J.n;
    for (int r = 1; r <= d; ++r)
        for (int c = 1; c <= d; ++c)
            items.emplace_back("(" + std::to_string(r) + "," + std::to_string(c) + ")",
                               res[J.idx(r, c)]);
    return report_entries(items, J.n, opt);
}

ResidualReport reality_report(const StructureMatrix& J, const IsZeroOptions& opt) {
    std::vector<std::pair<std::string, Ex>> items;
    for (int k = 1; k <= J.n; ++k) {
        for (int l = 1; l <= J.n; ++l) {
            items.emplace_back(
                "(" + std::to_string(2 * k) + "," + std::to_string(2 * l) + ")",
                J.at(2 * k, 2 * l) - ex_conj(J.at(2 * k - 1, 2 * l - 1)));
            items.emplace_back(
                "(" + std::to_string(2 * k) + "," + std::to_string(2 * l - 1) + ")",
                J.at(2 * k, 2 * l - 1) - ex_conj(J.at(2 * k - 1, 2 * l)));
        }
    }
    return report_entries(items, J.n, opt);
}

StarResiduals star_constraint_residuals(const StarSpec& spec) {
    const int n = spec.n;
    const Ex& cc = spec.lt(2 * n - 1); // diagonal perturbation
    const Ex& dd = spec.lt(2 * n);     // off-diagonal entry
    StarResiduals out;
    Ex two_i = ex_int(2) * ex_i();
    for (int j = 1; j <= n - 1; ++j) {
        const Ex& odd = spec.lt(2 * j - 1);
        const Ex& even = spec.lt(2 * j);
        out.items.emplace_back("J1[" + std::to_string(j) + "]",
                               two_i * odd + odd * cc + ex_conj(even) * dd);
        out.items.emplace_back("J2[" + std::to_string(j) + "]",
                               even * cc + ex_conj(odd) * dd);
    }
    out.items.emplace_back("J3", two_i * cc + cc * cc + dd * ex_conj(dd));
    out.items.emplace_back("J4", ex_prod({ex_rat(Rat(1) / 2), cc + ex_conj(cc)}));
    return out;
}

ResidualReport star_constraint_report(const StarSpec& spec, const IsZeroOptions& opt) {
    return report_entries(star_constraint_residuals(spec).items, spec.n, opt);
}

Ex degree_le1_part(const Ex& e, int n) {
    RatFunc f = normalize_rational(e, n);
    Scalar c0;
    if (!f.den.is_constant(&c0)) {
        // expand den^-1 to first order: den = c (1 + u), 1/den = (1 - u)/c + O(2)
        Scalar c = f.den.terms.count(Exps(f.den.width, 0))
                       ? f.den.terms.at(Exps(f.den.width, 0))
                       : Scalar::zero();
        if (c.is_zero()) fail(Errc::BadInput, "entry has a pole at 0");
        Poly u = poly_scale(f.den - Poly::constant(f.den.width, c), c.inverse());
        Poly inv1 = Poly::constant(f.den.width, c.inverse()) - poly_scale(poly_truncate(u, 1), c.inverse());
        Poly prod = poly_truncate(f.num * inv1, 1);
        return poly_to_ex(prod, nullptr);
    }
    return poly_to_ex(poly_truncate(f.num, 1), f.ctx);
}

// --- JSON --------------------------------------------------------------

namespace {

using nlohmann::json;

[[noreturn]] void badinput(const std::string& m) { fail(Errc::BadInput, m); }

int get_n(const json& j) {
    if (!j.contains("n") || !j["n"].is_number_unsigned()) badinput("structure file: missing or invalid \"n\"");
    int n = j["n"].get<int>();
    if (n < 2 || n > 16) badinput("structure file: n out of supported range [2,16]");
    return n;
}

} // namespace

std::string structure_kind_name(StructKind k) {
    switch (k) {
        case StructKind::Standard: return "standard";
        case StructKind::Model: return "model";
        case StructKind::Star: return "star";
        case StructKind::Raw: return "raw";
    }
    return "?";
}

LoadedStructure load_structure_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        badinput(std::string("structure file: JSON parse error: ") + e.what());
    }
    if (!j.is_object()) badinput("structure file: top level must be an object");
    for (const auto& [key, val] : j.items()) {
        (void)val;
        if (key != "n" && key != "kind" && key != "entries")
            badinput("structure file: unknown key \"" + key + "\"");
    }
    int n = get_n(j);
    if (!j.contains("kind") || !j["kind"].is_string()) badinput("structure file: missing \"kind\"");
    std::string kind = j["kind"].get<std::string>();

    json entries = j.contains("entries") ? j["entries"] : json::object();
    if (!entries.is_object()) badinput("structure file: \"entries\" must be an object");

    auto parse_entry = [&](const std::string& key, const json& v) -> Ex {
        if (!v.is_string()) badinput("structure file: entry \"" + key + "\" must be a string");
        try {
            return ex_parse(v.get<std::string>(), n);
        } catch (const Error& e) {
            badinput("structure file: entry \"" + key + "\": " + e.what());
        }
    };

    LoadedStructure out;
    out.n = n;

    if (kind == "standard") {
        if (!entries.empty()) badinput("structure file: standard kind takes no entries");
        out.kind = StructKind::Standard;
        out.matrix = build_standard(n);
        return out;
    }

    if (kind == "model") {
        ModelSpec spec = ModelSpec::zero(n);
        for (const auto& [key, val] : entries.items()) {
            std::string want_prefix = "Lt" + std::to_string(2 * n) + ",";
            if (key.rfind(want_prefix, 0) != 0)
                badinput("structure file: model entry key must look like \"" + want_prefix + "<odd col>\", got \"" + key + "\"");
            int col = 0;
            try {
                col = std::stoi(key.substr(want_prefix.size()));
            } catch (...) {
                badinput("structure file: bad column in key \"" + key + "\"");
            }
            if (col < 1 || col > 2 * n - 3 || col % 2 == 0)
                badinput("structure file: model column must be odd and <= 2n-3 in \"" + key + "\"");
            Ex form = parse_entry(key, val);
            // accept only z'-linear constant-free forms
            RatFunc f = normalize_rational(form, n);
            Scalar dc;
            if (!f.den.is_constant(&dc) || !dc.is_one())
                badinput("structure file: model entry \"" + key + "\" must be polynomial");
            int jrow = (col + 1) / 2;
            auto& row = spec.coef[static_cast<std::size_t>(jrow - 1)];
            for (const auto& [e, c] : f.num.terms) {
                std::uint32_t deg = 0;
                std::size_t slot = 0;
                for (std::size_t k = 0; k < e.size(); ++k) {
                    deg += e[k];
                    if (e[k]) slot = k;
                }
                if (deg != 1) badinput("structure file: model entry \"" + key + "\" must be linear without constant term");
                int l = static_cast<int>(slot / 2) + 1;
                if (l > n - 1) badinput("structure file: model entry \"" + key + "\" must not involve z_n");
                if (slot % 2 == 0) row[static_cast<std::size_t>(l - 1)].first += c;
                else row[static_cast<std::size_t>(l - 1)].second += c;
            }
        }
        out.kind = StructKind::Model;
        out.model = spec;
        out.matrix = build_model(spec);
        return out;
    }

    if (kind == "star") {
        StarSpec spec = StarSpec::zero(n);
        std::string want_prefix = "Lt" + std::to_string(2 * n - 1) + ",";
        for (const auto& [key, val] : entries.items()) {
            if (key.rfind(want_prefix, 0) != 0)
                badinput("structure file: star entry key must look like \"" + want_prefix + "<col>\", got \"" + key + "\"");
            int col = 0;
            try {
                col = std::stoi(key.substr(want_prefix.size()));
            } catch (...) {
                badinput("structure file: bad column in key \"" + key + "\"");
            }
            if (col < 1 || col > 2 * n) badinput("structure file: star column out of range in \"" + key + "\"");
            spec.entries[static_cast<std::size_t>(col - 1)] = parse_entry(key, val);
        }
        out.kind = StructKind::Star;
        out.star = spec;
        out.matrix = build_condition_star(spec);
        return out;
    }

    if (kind == "raw") {
        StructureMatrix m = StructureMatrix::zero(n);
        for (const auto& [key, val] : entries.items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos) badinput("structure file: raw key must be \"row,col\", got \"" + key + "\"");
            int row = 0, col = 0;
            try {
                row = std::stoi(key.substr(0, comma));
                col = std::stoi(key.substr(comma + 1));
            } catch (...) {
                badinput("structure file: bad row/col in key \"" + key + "\"");
            }
            if (row < 1 || row > 2 * n || col < 1 || col > 2 * n)
                badinput("structure file: raw index out of range in \"" + key + "\"");
            m.set(row, col, parse_entry(key, val));
        }
        out.kind = StructKind::Raw;
        out.matrix = std::move(m);
        return out;
    }

    badinput("structure file: unknown kind \"" + kind + "\"");
}

LoadedStructure load_structure_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::BadInput, "cannot open structure file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_structure_json(ss.str());
}

} // namespace crp
