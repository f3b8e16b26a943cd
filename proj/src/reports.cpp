#include "reports.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"
#include "jet/identities.hpp"

namespace crp::reports {

using nlohmann::json;

IsZeroOptions zero_options(const RunOptions& o) {
    IsZeroOptions z;
    z.trials = o.trials;
    z.tol = o.tol;
    z.seed = o.seed;
    return z;
}

namespace {

json point_json(const std::vector<std::complex<double>>& p) {
    json a = json::array();
    for (auto& z : p) a.push_back({z.real(), z.imag()});
    return a;
}

json verdict_json(const ZeroVerdict& v) {
    json j;
    j["verdict"] = zero_kind_name(v.kind);
    if (v.kind == ZeroKind::NonZero) {
        j["witness_point"] = point_json(v.witness);
        j["witness_value"] = {v.witness_value.real(), v.witness_value.imag()};
    }
    return j;
}

json report_json(const ResidualReport& r) {
    json j;
    j["verdict"] = r.all_zero ? (r.exact ? "ExactZero" : "ProbablyZero") : "NonZero";
    json w = json::array();
    for (const auto& [label, v] : r.nonzero) {
        json e = verdict_json(v);
        e["entry"] = label;
        w.push_back(e);
        if (w.size() >= 10) break; // witnesses are capped in reports
    }
    j["witnesses"] = w;
    return j;
}

std::string render(const json& j, bool as_json, const std::string& text) {
    return as_json ? j.dump(2) + "\n" : text;
}

std::string vf_text(const VectorField& X) {
    std::ostringstream os;
    bool first = true;
    for (int j = 1; j <= X.n; ++j) {
        if (!ex_is_zero_literal(X.dz_at(j))) {
            os << (first ? "" : " + ") << "(" << ex_print(X.dz_at(j)) << ")*d/dz" << j;
            first = false;
        }
        if (!ex_is_zero_literal(X.dzbar_at(j))) {
            os << (first ? "" : " + ") << "(" << ex_print(X.dzbar_at(j)) << ")*d/dzbar" << j;
            first = false;
        }
    }
    if (first) os << "0";
    return os.str();
}

json vf_json(const VectorField& X) {
    json j;
    json dz = json::array(), dzb = json::array();
    for (int k = 1; k <= X.n; ++k) {
        dz.push_back(ex_print(X.dz_at(k)));
        dzb.push_back(ex_print(X.dzbar_at(k)));
    }
    j["dz"] = dz;
    j["dzbar"] = dzb;
    return j;
}

} // namespace

ModelSpec binding_spec(const LoadedStructure& s) {
    if (s.kind == StructKind::Standard) return ModelSpec::zero(s.n);
    if (s.kind == StructKind::Model && s.model) return *s.model;
    fail(Errc::BadInput, "binding must be a standard or model structure");
}

Outcome check_structure_report(const LoadedStructure& s, const RunOptions& o) {
    auto zopt = zero_options(o);
    json j;
    j["command"] = "check-structure";
    j["kind"] = structure_kind_name(s.kind);
    j["n"] = s.n;
    auto inv = involution_residual_report(s.matrix, zopt);
    auto real = reality_report(s.matrix, zopt);
    j["involution"] = report_json(inv);
    j["reality"] = report_json(real);
    bool pass = inv.all_zero && real.all_zero;
    std::ostringstream os;
    os << "structure: kind=" << structure_kind_name(s.kind) << " n=" << s.n << "\n";
    os << "involution: " << j["involution"]["verdict"].get<std::string>() << "\n";
    os << "reality: " << j["reality"]["verdict"].get<std::string>() << "\n";
    if (s.kind == StructKind::Star) {
        auto con = star_constraint_report(*s.star, zopt);
        j["constraints"] = report_json(con);
        // per-constraint residual expressions for inspection
        json items = json::array();
        for (auto& [label, e] : star_constraint_residuals(*s.star).items)
            items.push_back({{"label", label}, {"residual", ex_print(e)}});
        j["constraint_residuals"] = items;
        os << "shape constraints: " << j["constraints"]["verdict"].get<std::string>() << "\n";
        pass = pass && con.all_zero;
        // cross-check: constraints hold iff the involution residual vanishes
        bool agree = (con.all_zero == inv.all_zero);
        j["constraints_match_involution"] = agree;
        pass = pass && agree;
    }
    for (const auto& w : j["involution"]["witnesses"]) {
        os << "  witness " << w["entry"].get<std::string>() << " value=("
           << w["witness_value"][0].get<double>() << "," << w["witness_value"][1].get<double>() << ")\n";
    }
    j["pass"] = pass;
    os << (pass ? "PASS" : "FAIL") << "\n";
    return {pass, render(j, o.json, os.str())};
}

Outcome frame_report(const LoadedStructure& s, const RunOptions& o) {
    auto zopt = zero_options(o);
    json j;
    j["command"] = "frame";
    j["kind"] = structure_kind_name(s.kind);
    j["n"] = s.n;
    std::ostringstream os;
    bool pass = true;

    auto eigencheck = [&](const std::vector<VectorField>& Xs, const char* stem) {
        json arr = json::array();
        for (std::size_t k = 0; k < Xs.size(); ++k) {
            VectorField r = vf_sub(apply_structure(s.matrix, Xs[k]), vf_scale(ex_i(), Xs[k]));
            bool ok = true;
            bool exact = true;
            for (int l = 1; l <= s.n; ++l) {
                for (const Ex& e : {r.dz_at(l), r.dzbar_at(l)}) {
                    auto v = is_zero(e, s.n, zopt);
                    ok = ok && v.holds();
                    exact = exact && v.exact();
                }
            }
            arr.push_back({{"field", std::string(stem) + std::to_string(k + 1)},
                           {"verdict", ok ? (exact ? "ExactZero" : "ProbablyZero") : "NonZero"}});
            pass = pass && ok;
        }
        return arr;
    };

    if (s.kind == StructKind::Model || s.kind == StructKind::Standard) {
        ModelSpec spec = binding_spec(s);
        Frame f = build_model_frame(spec);
        json fields = json::array();
        for (std::size_t k = 0; k < f.L.size(); ++k) {
            json e = vf_json(f.L[k]);
            e["name"] = "L" + std::to_string(k + 1);
            fields.push_back(e);
            os << "L" << (k + 1) << " = " << vf_text(f.L[k]) << "\n";
        }
        json tj = vf_json(f.T);
        tj["name"] = "T";
        j["T"] = tj;
        os << "T = " << vf_text(f.T) << "\n";
        j["fields"] = fields;
        j["eigencheck"] = eigencheck(f.L, "L");
        // tangency to the Siegel boundary
        Hypersurface H = Hypersurface::siegel(s.n);
        json tang = json::array();
        for (std::size_t k = 0; k < f.L.size(); ++k) {
            auto v = is_zero(vf_apply(f.L[k], H.rho), s.n, zopt);
            tang.push_back({{"field", "L" + std::to_string(k + 1)}, {"verdict", zero_kind_name(v.kind)}});
            pass = pass && v.holds();
        }
        j["tangency"] = tang;
    } else if (s.kind == StructKind::Star) {
        auto Xs = build_star_frame(*s.star, zopt);
        json fields = json::array();
        for (std::size_t k = 0; k < Xs.size(); ++k) {
            json e = vf_json(Xs[k]);
            e["name"] = "X" + std::to_string(k + 1);
            fields.push_back(e);
            os << "X" << (k + 1) << " = " << vf_text(Xs[k]) << "\n";
        }
        j["fields"] = fields;
        j["eigencheck"] = eigencheck(Xs, "X");
    } else {
        auto Xs = build_block_frame(s.matrix, zopt);
        json fields = json::array();
        for (std::size_t k = 0; k < Xs.size(); ++k) {
            json e = vf_json(Xs[k]);
            e["name"] = "X" + std::to_string(k + 1);
            fields.push_back(e);
            os << "X" << (k + 1) << " = " << vf_text(Xs[k]) << "\n";
        }
        j["fields"] = fields;
        j["eigencheck"] = eigencheck(Xs, "X");
    }
    for (const auto& e : j["eigencheck"])
        os << "eigencheck " << e["field"].get<std::string>() << ": " << e["verdict"].get<std::string>() << "\n";
    j["pass"] = pass;
    os << (pass ? "PASS" : "FAIL") << "\n";
    return {pass, render(j, o.json, os.str())};
}

Outcome brackets_report(const LoadedStructure& s, const RunOptions& o) {
    json j;
    j["command"] = "brackets";
    j["n"] = s.n;
    std::ostringstream os;
    ModelSpec spec = binding_spec(s); // standard/model only
    auto consts = model_bracket_constants(spec);
    json g = json::array(), c = json::array();
    for (int a = 0; a < s.n - 1; ++a) {
        json grow = json::array(), crow = json::array();
        for (int b = 0; b < s.n - 1; ++b) {
            grow.push_back(consts.gamma[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].str());
            crow.push_back(consts.c[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)].str());
        }
        g.push_back(grow);
        c.push_back(crow);
    }
    j["gamma"] = g; // [L_j, conj(L_k)] = gamma[j][k] T
    j["c"] = c;     // [L_j, L_k] = c[j][k] T
    os << "structure constants (coefficients of T):\n";
    os << "[L_j, conj(L_k)]:\n";
    for (const auto& row : g) {
        os << "  ";
        for (const auto& e : row) os << e.get<std::string>() << "  ";
        os << "\n";
    }
    os << "[L_j, L_k]:\n";
    for (const auto& row : c) {
        os << "  ";
        for (const auto& e : row) os << e.get<std::string>() << "  ";
        os << "\n";
    }
    bool pass = true;
    for (int a = 1; a <= s.n - 1; ++a)
        pass = pass && !consts.gamma[static_cast<std::size_t>(a - 1)][static_cast<std::size_t>(a - 1)].is_zero();
    j["transversal_nondegenerate"] = pass;
    j["pass"] = pass;
    os << (pass ? "PASS" : "FAIL") << "\n";
    return {pass, render(j, o.json, os.str())};
}

Outcome levi_report(const LoadedStructure& s, int field, const std::vector<std::complex<double>>& p,
                    const RunOptions& o, double* out_value) {
    json j;
    j["command"] = "levi";
    j["field"] = field;
    j["point"] = point_json(p);
    ModelSpec spec = binding_spec(s);
    if (field < 1 || field > s.n - 1) fail(Errc::BadInput, "field index out of range");
    Frame f = build_model_frame(spec);
    Hypersurface H = Hypersurface::siegel(s.n);
    double v = levi_form(s.matrix, H, f.L[static_cast<std::size_t>(field - 1)], p);
    double fd = levi_form_fd(s.matrix, H, f.L[static_cast<std::size_t>(field - 1)], p);
    double rel = std::abs(v - fd) / std::max(1.0, std::abs(v));
    j["value"] = v;
    j["oracle_value"] = fd;
    j["oracle_relative_error"] = rel;
    bool pass = rel < 1e-6;
    j["pass"] = pass;
    if (out_value) *out_value = v;
    std::ostringstream os;
    os << "Levi form at point for L" << field << ": " << v << "\n";
    os << "finite-difference oracle: " << fd << " (relative error " << rel << ")\n";
    os << (pass ? "PASS" : "FAIL") << "\n";
    return {pass, render(j, o.json, os.str())};
}

Outcome defect_report(const LoadedStructure& s, int jj, int kk, const RunOptions& o) {
    auto zopt = zero_options(o);
    json j;
    j["command"] = "defect";
    j["j"] = jj;
    j["k"] = kk;
    auto Xs = ambient_frame(s, zopt);
    const int n = s.n;
    if (jj < 1 || jj > n || kk < 1 || kk > n || jj == kk) fail(Errc::BadInput, "invalid field pair");
    std::ostringstream os;
    bool pass = true;

    bool sqrt_free = true;
    for (const auto& X : Xs) sqrt_free = sqrt_free && !X.has_sqrt();

    std::vector<std::vector<std::complex<double>>> dirs;
    if (sqrt_free) {
        auto coeffs = defect_projection(Xs, jj, kk);
        json arr = json::array();
        for (std::size_t l = 0; l < coeffs.size(); ++l) {
            arr.push_back(ex_print(coeffs[l]));
            os << "conj(X" << (l + 1) << ") coefficient: " << ex_print(coeffs[l]) << "\n";
        }
        j["symbolic"] = true;
        j["coefficients"] = arr;
        // sample the symbolic coefficients for the direction analysis
        Rng rng(zopt.seed);
        for (int t = 0; t < zopt.trials; ++t) {
            auto p = rng.next_polydisc(n, 0.4);
            std::vector<std::complex<double>> d;
            for (const auto& c : coeffs) d.push_back(ex_eval(c, p));
            dirs.push_back(std::move(d));
        }
    } else {
        j["symbolic"] = false;
        Rng rng(zopt.seed);
        json samples = json::array();
        for (int t = 0; t < zopt.trials; ++t) {
            auto p = rng.next_polydisc(n, 0.4);
            auto d = defect_projection_at(Xs, jj, kk, p);
            json e;
            e["point"] = point_json(p);
            json cs = json::array();
            for (auto& c : d) cs.push_back({c.real(), c.imag()});
            e["coefficients"] = cs;
            samples.push_back(e);
            dirs.push_back(d);
            if (t < 3)
                os << "sample " << t << ": |coeffs| = ["
                   << [&] {
                          std::string acc;
                          for (auto& c : d) acc += std::to_string(std::abs(c)) + " ";
                          return acc;
                      }()
                   << "]\n";
        }
        j["samples"] = samples;
    }

    // support and direction constancy
    std::vector<int> support;
    for (int l = 0; l < n; ++l) {
        double mx = 0;
        for (const auto& d : dirs) mx = std::max(mx, std::abs(d[static_cast<std::size_t>(l)]));
        if (mx > zopt.tol) support.push_back(l + 1);
    }
    j["support"] = support;
    std::string verdict;
    double spread = 0.0;
    if (support.empty()) {
        verdict = "ZERO";
    } else {
        // normalize each sampled coefficient vector by its largest entry and
        // measure the spread
        std::vector<std::complex<double>> ref;
        for (const auto& d : dirs) {
            std::size_t big = 0;
            for (std::size_t l = 1; l < d.size(); ++l)
                if (std::abs(d[l]) > std::abs(d[big])) big = l;
            if (std::abs(d[big]) < zopt.tol) continue;
            std::vector<std::complex<double>> nd;
            for (const auto& c : d) nd.push_back(c / d[big]);
            if (ref.empty()) {
                ref = nd;
            } else {
                for (std::size_t l = 0; l < nd.size(); ++l)
                    spread = std::max(spread, std::abs(nd[l] - ref[l]));
            }
        }
        verdict = spread > 1e-3 ? "NON-CONSTANT" : "CONSTANT";
    }
    j["direction_verdict"] = verdict;
    j["direction_spread"] = spread;
    os << "defect support: conj(X_l) for l in {";
    for (std::size_t l = 0; l < support.size(); ++l) os << (l ? "," : "") << support[l];
    os << "}\n";
    os << "defect direction: " << verdict << " (spread " << spread << ")\n";
    j["pass"] = pass;
    os << (pass ? "PASS" : "FAIL") << "\n";
    return {pass, render(j, o.json, os.str())};
}

namespace {

json chain_json(const jet::ChainReport& rep) {
    json steps = json::array();
    for (const auto& s : rep.steps) {
        json e;
        e["name"] = s.name;
        e["claim"] = s.claim;
        e["pass"] = s.pass;
        e["axioms_used"] = s.axioms_used;
        if (!s.detail.empty()) e["detail"] = s.detail;
        steps.push_back(e);
    }
    json j;
    j["steps"] = steps;
    j["pass"] = rep.all_pass;
    return j;
}

} // namespace

Outcome identities_report(int n, const LoadedStructure* binding, const RunOptions& o) {
    jet::RuleSetPtr rs;
    std::string bname = "generic";
    if (binding) {
        rs = jet::RuleSet::make_bound(binding_spec(*binding));
        bname = structure_kind_name(binding->kind);
    } else {
        rs = jet::RuleSet::make_generic(n);
    }
    json j;
    j["command"] = "identities";
    j["n"] = rs->n();
    j["binding"] = bname;
    auto ids = jet::standard_identities(*rs);
    json results = json::array();
    int passed = 0;
    bool pass = true;
    std::ostringstream os;
    for (const auto& id : ids) {
        auto res = jet::verify_identity(*rs, id);
        json e;
        e["name"] = res.name;
        e["note"] = res.note;
        e["pass"] = res.pass;
        if (!res.pass) e["witness"] = res.difference;
        results.push_back(e);
        passed += res.pass ? 1 : 0;
        pass = pass && res.pass;
        os << (res.pass ? "PASS " : "FAIL ") << res.name << " [" << res.note << "]\n";
        if (!res.pass) os << "  difference: " << res.difference << "\n";
    }
    // the membership chain rides along with the identity suite
    auto chain = jet::run_membership_chain(*rs);
    j["membership_chain"] = chain_json(chain);
    for (const auto& s : chain.steps) {
        os << (s.pass ? "PASS " : "FAIL ") << "chain:" << s.name;
        if (!s.axioms_used.empty()) {
            os << " [axioms:";
            for (const auto& a : s.axioms_used) os << " " << a;
            os << "]";
        }
        os << "\n";
    }
    pass = pass && chain.all_pass;
    j["results"] = results;
    j["counts"] = {{"total", ids.size()}, {"passed", passed}};
    j["pass"] = pass;
    os << "identities: " << passed << "/" << ids.size() << " instances, chain "
       << (chain.all_pass ? "PASS" : "FAIL") << "\n";
    os << (pass ? "PASS" : "FAIL") << "\n";
    return {pass, render(j, o.json, os.str())};
}

Outcome prolong_report(int n, const LoadedStructure* binding, const RunOptions& o) {
    jet::RuleSetPtr rs;
    std::string bname = "generic";
    if (binding) {
        rs = jet::RuleSet::make_bound(binding_spec(*binding));
        bname = structure_kind_name(binding->kind);
    } else {
        rs = jet::RuleSet::make_generic(n);
    }
    auto rep = jet::complete_system_report(*rs);
    json j;
    j["command"] = "prolong-report";
    j["n"] = rep.n;
    j["binding"] = bname;
    j["complete"] = rep.complete;
    j["chain"] = chain_json(rep.chain);
    json entries = json::array();
    int reduced = 0, rearranged = 0, axiom = 0;
    for (const auto& e : rep.entries) {
        json je;
        je["word"] = e.word;
        je["target"] = e.target;
        je["status"] = e.status;
        je["expression"] = e.expression;
        je["trace"] = e.trace;
        je["paper_case"] = e.paper_case;
        if (!e.axioms_used.empty()) je["axioms_used"] = e.axioms_used;
        entries.push_back(je);
        if (e.status == "reduced") ++reduced;
        else if (e.status == "rearranged") ++rearranged;
        else if (e.status == "axiom") ++axiom;
    }
    j["entries"] = entries;
    j["counts"] = {{"total", rep.entries.size()},
                   {"reduced", reduced},
                   {"rearranged", rearranged},
                   {"axiom", axiom}};
    j["pass"] = rep.complete;
    std::ostringstream os;
    os << "complete-system report: n=" << rep.n << " binding=" << bname << "\n";
    os << "entries: " << rep.entries.size() << " (reduced " << reduced << ", rearranged " << rearranged
       << ", axiom " << axiom << ")\n";
    os << "membership chain: " << (rep.chain.all_pass ? "PASS" : "FAIL") << "\n";
    os << (rep.complete ? "PASS" : "FAIL") << "\n";
    return {rep.complete, render(j, o.json, os.str())};
}

Outcome verify_map_report(const SymbolicMap& f, const LoadedStructure& src,
                          const LoadedStructure& tgt, const RunOptions& o) {
    auto zopt = zero_options(o);
    json j;
    j["command"] = "verify-map";
    j["map"] = f.name;
    std::ostringstream os;
    bool pass = true;

    // pseudoholomorphy
    {
        auto res = pseudoholomorphy_residual(f, src.matrix, tgt.matrix);
        bool all = true, exact = true;
        json witnesses = json::array();
        for (std::size_t k = 0; k < res.size(); ++k) {
            auto v = is_zero(res[k], f.n, zopt);
            if (!v.holds()) {
                all = false;
                if (witnesses.size() < 10) {
                    json w = verdict_json(v);
                    w["entry"] = "(" + std::to_string(k / (2 * f.n) + 1) + "," + std::to_string(k % (2 * f.n) + 1) + ")";
                    witnesses.push_back(w);
                }
            }
            exact = exact && v.exact();
        }
        j["pseudoholomorphy"] = {{"verdict", all ? (exact ? "ExactZero" : "ProbablyZero") : "NonZero"},
                                 {"witnesses", witnesses}};
        os << "pseudoholomorphy: " << j["pseudoholomorphy"]["verdict"].get<std::string>() << "\n";
        pass = pass && all;
    }

    // tangential residuals (model/standard structures on the Siegel boundary)
    if ((src.kind == StructKind::Standard || src.kind == StructKind::Model) &&
        (tgt.kind == StructKind::Standard || tgt.kind == StructKind::Model)) {
        Hypersurface H = Hypersurface::siegel(f.n);
        auto res = cr_residuals(f, binding_spec(src), binding_spec(tgt), H, H);
        auto verdicts = cr_residuals_verdicts(res, H, zopt);
        json items = json::array();
        for (auto& [label, v] : verdicts.items) {
            json e = verdict_json(v);
            e["label"] = label;
            items.push_back(e);
            os << "tangential " << label << ": " << zero_kind_name(v.kind) << "\n";
        }
        j["tangential"] = {{"items", items},
                           {"verdict", verdicts.all_zero ? (verdicts.exact ? "ExactZero" : "ProbablyZero")
                                                         : "NonZero"}};
        pass = pass && verdicts.all_zero;

        // pushforward matrix at the origin
        Frame fr = build_model_frame(binding_spec(src));
        std::vector<std::complex<double>> origin(static_cast<std::size_t>(f.n), {0.0, 0.0});
        auto pf = frame_pushforward_matrix(f, fr, origin);
        json mat = json::array();
        for (int r = 0; r < pf.m; ++r) {
            json row = json::array();
            for (int c = 0; c < pf.m; ++c) {
                auto z = pf.a[static_cast<std::size_t>(r * pf.m + c)];
                row.push_back({z.real(), z.imag()});
            }
            mat.push_back(row);
        }
        j["pushforward"] = {{"matrix", mat},
                            {"invertible", pf.invertible},
                            {"condition", pf.invertible ? json(pf.condition) : json("inf")}};
        os << "pushforward at 0: " << (pf.invertible ? "invertible" : "singular");
        if (pf.invertible) os << " (cond " << pf.condition << ")";
        os << "\n";
    }

    j["pass"] = pass;
    os << (pass ? "PASS" : "FAIL") << "\n";
    return {pass, render(j, o.json, os.str())};
}

} // namespace crp::reports
