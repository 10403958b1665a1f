#include <sstream>

#include <doctest.h>

#include "fracstab/selftest.hpp"

using namespace fracstab;

TEST_CASE("selftest passes on a fresh build") {
    SelftestOptions opt;
    opt.systems = 150;
    opt.curve_trials = 8;
    std::ostringstream out;
    const SelftestReport report = run_selftest(opt, out);
    CHECK(report.ok());
    CHECK(report.failed == 0);
    CHECK(report.passed > 100);
    CHECK(out.str().find("selftest:") != std::string::npos);
}

TEST_CASE("selftest output is deterministic for a fixed seed") {
    SelftestOptions opt;
    opt.seed = 99;
    opt.systems = 100;
    opt.curve_trials = 5;
    std::ostringstream first, second;
    const SelftestReport a = run_selftest(opt, first);
    const SelftestReport b = run_selftest(opt, second);
    CHECK(first.str() == second.str());
    CHECK(a.passed == b.passed);
    CHECK(a.skipped == b.skipped);

    opt.seed = 100;
    std::ostringstream third;
    run_selftest(opt, third);  // different seed may change skip counts, must not fail
}

TEST_CASE("a corrupted curve is reported") {
    CriticalCurve curve = CriticalCurve::make(2.5, 0.3, 0.7);
    REQUIRE(check_curve_invariants(curve, 48) == 0);
    curve.rho2 = -curve.rho2;
    CHECK(check_curve_invariants(curve, 48) > 0);
}
