#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "jet/identities.hpp"
#include "jet/prolong.hpp"

using namespace crp;
using namespace crp::jet;

namespace {

JetVar mkvar(int idx, bool bar, int t, std::vector<std::uint8_t> word) {
    JetVar v;
    v.bar = bar;
    v.idx = static_cast<std::uint8_t>(idx);
    v.t = static_cast<std::uint8_t>(t);
    std::sort(word.begin(), word.end());
    v.word = std::move(word);
    return v;
}

} // namespace

TEST_CASE("apply: basic derivation actions") {
    auto rs = RuleSet::make_generic(2);
    RuleSet::Budget budget;

    // L1 applied to fbar1 dies; Lbar1 applied to fbar1 is the jet variable
    CHECK(rs->apply(Letter::l(1), jp_var(1, true), budget).is_zero());
    JetPoly lb = rs->apply(Letter::lbar(1), jp_var(1, true), budget);
    CHECK(lb == JetPoly::variable(mkvar(1, true, 0, {1})));

    // Leibniz: T(f1 * fbar2') with n=3 below; here T(f1*fbar1)
    JetPoly prod = jp_var(1, false) * jp_var(1, true);
    JetPoly d = rs->apply(Letter::t(), prod, budget);
    JetPoly want = JetPoly::variable(mkvar(1, false, 1, {})) * jp_var(1, true) +
                   jp_var(1, false) * JetPoly::variable(mkvar(1, true, 1, {}));
    CHECK(d == want);
}

TEST_CASE("normalize: displayed reductions") {
    auto rs = RuleSet::make_generic(3);

    // Lbar1 L1 f_p = -gamma(1,1) T f_p for p < n
    for (int p = 1; p <= 2; ++p) {
        JetPoly got = rs->word({Letter::lbar(1), Letter::l(1)}, p, false);
        JetPoly want = -(rs->gamma(1, 1)) * JetPoly::variable(mkvar(p, false, 1, {}));
        CHECK(got == want);
    }

    // Lbar_k L_k L_k f_p = -2 gamma(k,k) T L_k f_p
    JetPoly got = rs->word({Letter::lbar(2), Letter::l(2), Letter::l(2)}, 1, false);
    JetPoly want = -(AtomPoly(Scalar(Rat(2))) * rs->gamma(2, 2)) *
                   JetPoly::variable(mkvar(1, false, 1, {2}));
    CHECK(got == want);

    // Lbar_k L_k L_k L_m f_p with m != k picks up the mixed constant
    JetPoly got2 = rs->word({Letter::lbar(1), Letter::l(1), Letter::l(1), Letter::l(2)}, 1, false);
    JetPoly want2 = -(rs->gamma(2, 1)) * JetPoly::variable(mkvar(1, false, 1, {1, 1})) -
                    (AtomPoly(Scalar(Rat(2))) * rs->gamma(1, 1)) *
                        JetPoly::variable(mkvar(1, false, 1, {1, 2}));
    CHECK(got2 == want2);

    // words reordering same-chirality letters pick up the c constants:
    // L2 L1 f_p vs L1 L2 f_p differ by c_{2,1} T f_p
    JetPoly ab = rs->word({Letter::l(2), Letter::l(1)}, 1, false);
    JetPoly ba = rs->word({Letter::l(1), Letter::l(2)}, 1, false);
    JetPoly diff = ab - ba;
    JetPoly want3 = rs->reorder_c(2, 1) * JetPoly::variable(mkvar(1, false, 1, {}));
    CHECK(diff == want3);
}

TEST_CASE("normalize: idempotence, chirality separation, equivariance") {
    auto rs = RuleSet::make_generic(2);
    std::vector<std::vector<Letter>> words = {
        {Letter::l(1), Letter::lbar(1)},
        {Letter::lbar(1), Letter::l(1), Letter::l(1)},
        {Letter::t(), Letter::l(1), Letter::lbar(1)},
        {Letter::t(), Letter::t(), Letter::l(1), Letter::lbar(1)},
        {Letter::lbar(1), Letter::lbar(1), Letter::lbar(1)},
        {Letter::t(), Letter::t(), Letter::t()},
    };
    for (const auto& w : words) {
        for (int idx = 1; idx <= 2; ++idx) {
            for (bool bar : {false, true}) {
                std::vector<Letter> ww = w;
                if (bar) {
                    for (auto& l : ww) {
                        if (l.kind == LetterKind::L) l.kind = LetterKind::Lbar;
                        else if (l.kind == LetterKind::Lbar) l.kind = LetterKind::L;
                    }
                }
                JetPoly P = rs->word(ww, idx, bar);
                // canonical variables separate chirality: bar-side words only
                // on bar targets, and no words at all on the n-th component
                for (const auto& [mono, c] : P.terms()) {
                    (void)c;
                    for (const auto& [v, e] : mono) {
                        (void)e;
                        if (!v.word.empty()) CHECK(v.idx < 2u);
                        if (v.idx == 2u) CHECK((v.word.empty() && v.t == 0));
                    }
                }
                // conjugation equivariance
                std::vector<Letter> cw = ww;
                for (auto& l : cw) {
                    if (l.kind == LetterKind::L) l.kind = LetterKind::Lbar;
                    else if (l.kind == LetterKind::Lbar) l.kind = LetterKind::L;
                }
                CHECK(rs->conj(P) == rs->word(cw, idx, !bar));
            }
        }
    }
}

TEST_CASE("step budget guards against runaway rewriting") {
    auto rs = RuleSet::make_generic(2);
    RuleSet::Budget tiny;
    tiny.limit = 5;
    CHECK_THROWS_AS(rs->word({Letter::t(), Letter::t(), Letter::t()}, 2, false, tiny), Error);
}

TEST_CASE("identity suite: generic atoms") {
    for (int n : {2, 3}) {
        auto rs = RuleSet::make_generic(n);
        auto ids = standard_identities(*rs);
        // all fourteen families are present
        std::set<std::string> names;
        for (const auto& id : ids) names.insert(id.name);
        CHECK(names.size() == 14);
        for (const auto& id : ids) {
            auto res = verify_identity(*rs, id);
            INFO(id.name, " [", id.note, "] diff = ", res.difference);
            CHECK(res.pass);
        }
    }
}

TEST_CASE("identity suite: bound to concrete structures") {
    ModelSpec std2 = ModelSpec::zero(2);
    auto rs = RuleSet::make_bound(std2);
    for (const auto& id : standard_identities(*rs)) {
        auto res = verify_identity(*rs, id);
        INFO(id.name, " [", id.note, "]");
        CHECK(res.pass);
    }

    // a non-trivial binding
    ModelSpec spec = ModelSpec::zero(3);
    spec.coef[0][0] = {Scalar(Rat(1)), Scalar(Rat(0), Rat(1))};
    spec.coef[0][1] = {Scalar(Rat(2)), Scalar(Rat(1), Rat(1))};
    spec.coef[1][0] = {Scalar(Rat(0), Rat(-1)), Scalar(Rat(1))};
    auto rs3 = RuleSet::make_bound(spec);
    for (const auto& id : standard_identities(*rs3)) {
        auto res = verify_identity(*rs3, id);
        INFO(id.name, " [", id.note, "]");
        CHECK(res.pass);
    }
}

TEST_CASE("corrupted identity fails with a witness") {
    auto rs = RuleSet::make_generic(2);
    auto res = verify_identity(*rs, corrupted_identity(*rs));
    CHECK(!res.pass);
    CHECK(!res.difference.empty());
}

TEST_CASE("degenerate bindings are rejected") {
    // Re b_{1,1} = -1 kills the transversal bracket constant
    ModelSpec spec = ModelSpec::zero(2);
    // b-coefficient of beta_1 is -i/2 * beta-entry; choose the entry so that
    // b_{1,1} = -1, i.e. beta-entry = -2i
    spec.coef[0][0] = {Scalar(Rat(0)), Scalar(Rat(0), Rat(-2))};
    CHECK_THROWS_AS(RuleSet::make_bound(spec), Error);
}

TEST_CASE("tangency expansion") {
    auto rs = RuleSet::make_generic(2);
    // applying Lbar_k to the surface constraint reproduces the displayed
    // derived identity
    JetPoly got = tangency_expansion(*rs, Letter::lbar(1));
    JetPoly rhs = AtomPoly(Scalar(Rat(1) / 2)) *
                      (rs->word({Letter::lbar(1)}, 2, false) + rs->word({Letter::lbar(1)}, 2, true)) +
                  jp_var(1, false) * rs->word({Letter::lbar(1)}, 1, true);
    CHECK(got == rhs);

    // the standard-structure binding expands the conjugate-direction
    // derivative of f_n away entirely
    auto rb = RuleSet::make_bound(ModelSpec::zero(2));
    JetPoly gotb = tangency_expansion(*rb, Letter::lbar(1));
    CHECK(gotb == AtomPoly(Scalar(Rat(1) / 2)) * rb->word({Letter::lbar(1)}, 2, true) +
                      (AtomPoly(Scalar(Rat(1))) + AtomPoly(Scalar(Rat(-1)))) * jp_var(1, false) +
                      jp_var(1, false) * rb->word({Letter::lbar(1)}, 1, true));
}

TEST_CASE("membership: generators and spaces") {
    int n = 2;
    MembershipDb db(n);
    // wrong chirality: a bar-side variable is not a generator of the plain
    // space, and with no facts it cannot resolve
    auto chk = check_membership(JetPoly::variable(mkvar(1, true, 0, {1})), Space{false, 1, 1}, db);
    CHECK(!chk.ok);
    CHECK(chk.offending.size() == 1);

    CHECK(is_generator(mkvar(1, true, 1, {1}), Space{true, 2, 1}, n));
    CHECK(!is_generator(mkvar(1, true, 2, {}), Space{true, 2, 1}, n)); // t exceeds q
    CHECK(is_generator(mkvar(2, true, 0, {}), Space{true, 1, 1}, n));  // bare fbar_n
}

TEST_CASE("membership chain: generic and bound") {
    for (int n : {2, 3}) {
        auto rs = RuleSet::make_generic(n);
        MembershipDb db(n);
        auto rep = run_membership_chain(*rs, db);
        for (const auto& s : rep.steps) {
            INFO(s.name, ": ", s.detail);
            CHECK(s.pass);
        }
        CHECK(rep.all_pass);

        // derived facts: T f_p and T^3 f_p
        CHECK(db.resolve(mkvar(1, false, 1, {}), Space{true, 2, 1}).ok);
        CHECK(db.resolve(mkvar(1, false, 3, {}), Space{true, 4, 1}).ok);
        // and through the exchange bridges into the plain space
        CHECK(db.resolve(mkvar(1, false, 3, {}), Space{false, 2, 1}).ok);

        // the axioms are named with their provenance
        bool base_seen = false, first_seen = false;
        for (const auto& s : rep.steps) {
            for (const auto& a : s.axioms_used) {
                if (a == kAxiomBaseInversion) base_seen = true;
                if (a == kAxiomFirstDerivativeInversion) first_seen = true;
            }
        }
        CHECK(base_seen);
        CHECK(first_seen);
    }

    auto rb = RuleSet::make_bound(ModelSpec::zero(2));
    auto repb = run_membership_chain(*rb);
    CHECK(repb.all_pass);
}

TEST_CASE("complete system report: n=2 standard binding") {
    auto rs = RuleSet::make_bound(ModelSpec::zero(2));
    auto rep = complete_system_report(*rs);
    CHECK(rep.complete);
    CHECK(rep.entries.size() == 27 * 2);

    int reduced = 0, rearranged = 0, axiom = 0;
    bool case_a2b1 = false, case_a1b2 = false, case_t1a1b1 = false;
    for (const auto& e : rep.entries) {
        if (e.status == "reduced") ++reduced;
        else if (e.status == "rearranged") ++rearranged;
        else if (e.status == "axiom") ++axiom;
        else FAIL("unclassified entry: ", e.word, " on ", e.target);
        if (e.paper_case.find("t=0,a=2,b=1") != std::string::npos) {
            case_a2b1 = true;
            CHECK(!e.trace.empty());
        }
        if (e.paper_case.find("t=0,a=1,b=2") != std::string::npos) {
            case_a1b2 = true;
            CHECK(!e.trace.empty());
        }
        if (e.paper_case.find("t=1,a=1,b=1") != std::string::npos) {
            case_t1a1b1 = true;
            CHECK(!e.trace.empty());
        }
    }
    CHECK(reduced > 0);
    CHECK(rearranged > 0);
    CHECK(axiom > 0);
    CHECK(case_a2b1);
    CHECK(case_a1b2);
    CHECK(case_t1a1b1);
    CHECK(reduced + rearranged + axiom == 54);

    // axiom entries name their grounding
    for (const auto& e : rep.entries) {
        if (e.status == "axiom") CHECK(!e.axioms_used.empty());
    }

    // determinism: a second run yields the same entries
    auto rep2 = complete_system_report(*rs);
    REQUIRE(rep2.entries.size() == rep.entries.size());
    for (std::size_t k = 0; k < rep.entries.size(); ++k) {
        CHECK(rep.entries[k].word == rep2.entries[k].word);
        CHECK(rep.entries[k].expression == rep2.entries[k].expression);
        CHECK(rep.entries[k].status == rep2.entries[k].status);
    }
}

TEST_CASE("complete system report: generic n=2") {
    auto rs = RuleSet::make_generic(2);
    auto rep = complete_system_report(*rs);
    CHECK(rep.complete);
    for (const auto& e : rep.entries) CHECK(e.status != "unclassified");
}
