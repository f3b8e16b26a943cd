#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "crprolong.h"

namespace {
const std::string kFixtures = CRP_FIXTURES_DIR;
}

TEST_CASE("options defaults") {
    crp_options o;
    crp_options_init(&o);
    CHECK(o.trials == 20);
    CHECK(o.tolerance == doctest::Approx(1e-9));
    CHECK(o.seed == 0);
    CHECK(o.truncation_order == 4);
    CHECK(o.json_output == 0);
    CHECK(std::string(crp_version()).find("crprolong") != std::string::npos);
}

TEST_CASE("structure lifecycle and checks") {
    crp_structure* s = nullptr;
    REQUIRE(crp_structure_load_file((kFixtures + "/std2.json").c_str(), &s) == CRP_OK);
    CHECK(crp_structure_dim(s) == 2);
    CHECK(std::string(crp_structure_kind(s)) == "standard");

    crp_options o;
    crp_options_init(&o);
    char* report = nullptr;
    CHECK(crp_check_structure(s, &o, &report) == CRP_OK);
    REQUIRE(report != nullptr);
    CHECK(std::string(report).find("involution: ExactZero") != std::string::npos);
    crp_string_free(report);

    o.json_output = 1;
    report = nullptr;
    CHECK(crp_frame_report(s, &o, &report) == CRP_OK);
    REQUIRE(report != nullptr);
    CHECK(std::string(report).find("\"pass\": true") != std::string::npos);
    crp_string_free(report);
    crp_structure_free(s);
}

TEST_CASE("verification failure surfaces as a status") {
    crp_structure* s = nullptr;
    REQUIRE(crp_structure_load_file((kFixtures + "/nonstructure2.json").c_str(), &s) == CRP_OK);
    crp_options o;
    crp_options_init(&o);
    char* report = nullptr;
    CHECK(crp_check_structure(s, &o, &report) == CRP_VERIFY_FAIL);
    REQUIRE(report != nullptr);
    CHECK(std::string(report).find("NonZero") != std::string::npos);
    crp_string_free(report);
    crp_structure_free(s);
}

TEST_CASE("input errors carry messages") {
    crp_structure* s = nullptr;
    CHECK(crp_structure_load_file((kFixtures + "/does-not-exist.json").c_str(), &s) == CRP_INPUT_ERROR);
    CHECK(std::string(crp_last_error()).size() > 0);

    CHECK(crp_structure_load_json("{\"n\": 2, \"kind\": \"standard\", \"zz\": 1}", &s) == CRP_INPUT_ERROR);
    CHECK(std::string(crp_last_error()).find("unknown key") != std::string::npos);
}

TEST_CASE("expression utilities") {
    double re = 0, im = 0;
    double point[4] = {3.0, 4.0, 0.0, 0.0};
    CHECK(crp_expr_eval("z1*zbar1", 2, point, &re, &im) == CRP_OK);
    CHECK(re == doctest::Approx(25.0));
    CHECK(im == doctest::Approx(0.0));

    CHECK(crp_expr_eval("z3", 2, point, &re, &im) == CRP_INPUT_ERROR);

    char* printed = nullptr;
    CHECK(crp_expr_roundtrip("y2^2 + x1", 2, &printed) == CRP_OK);
    REQUIRE(printed != nullptr);
    CHECK(std::string(printed).size() > 0);
    crp_string_free(printed);
}

TEST_CASE("map verification through the C surface") {
    crp_map* f = nullptr;
    REQUIRE(crp_map_load_file((kFixtures + "/lambda14.json").c_str(), &f) == CRP_OK);
    crp_structure* s = nullptr;
    REQUIRE(crp_structure_load_file((kFixtures + "/std2.json").c_str(), &s) == CRP_OK);
    crp_options o;
    crp_options_init(&o);
    char* report = nullptr;
    CHECK(crp_verify_map(f, s, s, &o, &report) == CRP_OK);
    crp_string_free(report);
    crp_map_free(f);

    f = nullptr;
    REQUIRE(crp_map_load_file((kFixtures + "/conjugation2.json").c_str(), &f) == CRP_OK);
    report = nullptr;
    CHECK(crp_verify_map(f, s, s, &o, &report) == CRP_VERIFY_FAIL);
    REQUIRE(report != nullptr);
    CHECK(std::string(report).find("NonZero") != std::string::npos);
    crp_string_free(report);
    crp_map_free(f);
    crp_structure_free(s);
}

TEST_CASE("identities and defect through the C surface") {
    crp_options o;
    crp_options_init(&o);
    char* report = nullptr;
    CHECK(crp_identities_report(2, nullptr, &o, &report) == CRP_OK);
    REQUIRE(report != nullptr);
    CHECK(std::string(report).find("identities:") != std::string::npos);
    crp_string_free(report);

    crp_structure* s = nullptr;
    REQUIRE(crp_structure_load_file((kFixtures + "/star43.json").c_str(), &s) == CRP_OK);
    report = nullptr;
    CHECK(crp_defect_report(s, 1, 2, &o, &report) == CRP_OK);
    REQUIRE(report != nullptr);
    CHECK(std::string(report).find("NON-CONSTANT") != std::string::npos);
    crp_string_free(report);
    crp_structure_free(s);
}
