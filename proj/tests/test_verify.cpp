#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnls/verify.hpp"

using namespace cnls;

TEST_CASE("individual fast checks pass on a fresh build") {
    SuiteOptions opt;
    opt.checks = {"resonance_probe", "strang_order", "gauge_reduction"};
    SuiteReport report = verify_claims(opt);
    REQUIRE(report.results.size() == 3);
    for (const auto& r : report.results) CHECK(r.passed);
    CHECK(report.all_hard_passed);

    Json j = report.to_json();
    CHECK(j["all_hard_passed"] == true);
    CHECK(j["checks"].size() == 3);
}

TEST_CASE("unknown check names are refused") {
    SuiteOptions opt;
    opt.checks = {"no_such_check"};
    CHECK_THROWS_AS(verify_claims(opt), ConfigError);
}

TEST_CASE("derivative identities pass and the flipped-sign hook breaks them") {
    SuiteOptions ok;
    ok.checks = {"derivative_identities"};
    SuiteReport good = verify_claims(ok);
    REQUIRE(good.results.size() == 1);
    CHECK(good.results[0].passed);
    CHECK(good.results[0].details["c_psi"].get<double>() ==
          doctest::Approx(0.5).epsilon(1e-6));

    SuiteOptions flipped;
    flipped.checks = {"derivative_identities"};
    flipped.flip_psi_sign = true;
    SuiteReport bad = verify_claims(flipped);
    REQUIRE(bad.results.size() == 1);
    CHECK_FALSE(bad.results[0].passed);
    CHECK_FALSE(bad.all_hard_passed);
}

TEST_CASE("monitoring is report-only") {
    SuiteOptions opt;
    opt.checks = {"monitoring"};
    SuiteReport report = verify_claims(opt);
    REQUIRE(report.results.size() == 1);
    const CheckResult& r = report.results[0];
    CHECK_FALSE(r.hard);
    CHECK(r.passed);  // monitoring never fails
    CHECK(report.all_hard_passed);
    // the report carries the fitted quantities
    CHECK(r.details["quintic"].contains("h2_growth_alpha"));
    CHECK(r.details["quintic"].contains("fitted_iteration_constant"));
    CHECK(r.details["hartree"].contains("max_e2_increment_ratio"));
}
