#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "fracstab/char_function.hpp"
#include "fracstab/critical_curve.hpp"
#include "fracstab/random.hpp"
#include "fracstab/selftest.hpp"

using namespace fracstab;
using std::numbers::pi;

TEST_CASE("rho coefficients for the doubled-order configuration") {
    // q2 = 2 q1 forces rho1 = 1 and rho2 = 2 cos(q1 pi / 2).
    const CriticalCurve curve = CriticalCurve::make(4.0, 0.4, 0.8);
    CHECK(curve.rho1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(curve.rho2 == doctest::Approx(2.0 * std::cos(0.2 * pi)).epsilon(1e-14));
    CHECK(curve.rho2 > 1.0);
    CHECK(curve.q1 / curve.q2 <= curve.rho() + 1e-15);
    CHECK(curve.rho() <= 1.0);
}

TEST_CASE("sample at omega = 1 reproduces the reference point") {
    const CriticalCurve curve = CriticalCurve::make(4.0, 0.4, 0.8);
    const CurveSample s = curve.sample(1.0);
    const double rho2 = 2.0 * std::cos(0.2 * pi);
    CHECK(s.b == doctest::Approx(1.0 - 4.0 * rho2).epsilon(1e-12));   // -5.472136
    CHECK(s.a == doctest::Approx(4.0 - rho2).epsilon(1e-12));         // 2.381966
    CHECK_THROWS_AS(curve.sample(0.0), std::domain_error);
    CHECK_THROWS_AS(curve.sample(-1.0), std::domain_error);
}

TEST_CASE("curve points are zeros of the characteristic function") {
    std::mt19937_64 gen(52);
    for (int trial = 0; trial < 40; ++trial) {
        const double c = std::exp(uniform(gen, std::log(0.1), std::log(10.0)));
        const double q1 = uniform(gen, 0.05, 0.9);
        const double q2 = uniform(gen, q1 + 0.05, 1.0);
        const CriticalCurve curve = CriticalCurve::make(c, q1, q2);
        const double omega = std::exp(uniform(gen, std::log(0.1), std::log(10.0)));
        const CurveSample s = curve.sample(omega);
        const CharFunction f = CharFunction::make(s.a, s.b, c, q1, q2);
        const double scale = 1.0 + std::pow(omega, q1 + q2);
        CHECK(std::abs(f.value({0.0, omega})) <= 1e-10 * scale);
    }
}

TEST_CASE("a_star inverts the parametrization") {
    const CriticalCurve curve = CriticalCurve::make(4.0, 0.4, 0.8);
    const CurveSample ref = curve.sample(1.0);
    CHECK(curve.a_star(ref.b) == doctest::Approx(ref.a).epsilon(1e-10));
    CHECK(curve.crossing_frequency(ref.b) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("closed-form axis crossings") {
    std::mt19937_64 gen(53);
    for (int trial = 0; trial < 20; ++trial) {
        const double c = std::exp(uniform(gen, std::log(0.1), std::log(10.0)));
        const double q1 = uniform(gen, 0.05, 0.9);
        const double q2 = uniform(gen, q1 + 0.05, 1.0);
        const CriticalCurve curve = CriticalCurve::make(c, q1, q2);

        CHECK(std::abs(curve.b_of(curve.omega_b())) <= 1e-9 * (1.0 + curve.rho2 * c));
        CHECK(std::abs(curve.a_of(curve.omega_a())) <= 1e-9 * (1.0 + curve.rho2 * c));
        CHECK(curve.omega_a() < curve.omega_b());
        CHECK(curve.a_star(0.0) < 0.0);
        CHECK(curve.crossing_frequency(0.0) == doctest::Approx(curve.omega_b()).epsilon(1e-10));
    }
}

TEST_CASE("threshold respects the bound inequalities") {
    const CriticalCurve curve = CriticalCurve::make(4.0, 0.4, 0.8);
    CHECK(curve.a_star(10.0) <= -std::pow(10.0, 0.5) + 1e-12);
    std::mt19937_64 gen(54);
    for (int trial = 0; trial < 30; ++trial) {
        const double b = uniform(gen, -15.0, 15.0);
        const double a = curve.a_star(b);
        const double bound = b >= 0.0 ? -std::pow(b, 0.5)
                                      : std::pow(-b, 2.0) * std::pow(4.0, -1.0);
        CHECK(a <= bound + 1e-12);
    }
}

TEST_CASE("monotone and convex threshold") {
    const CriticalCurve curve = CriticalCurve::make(4.0, 0.4, 0.8);
    double prev_b = 0.0, prev_a = 0.0;
    std::vector<CurveSample> samples;
    for (int k = 0; k <= 200; ++k) {
        const double omega = 0.05 * std::pow(20.0 / 0.05, k / 200.0);
        const CurveSample s = curve.sample(omega);
        if (k > 0) {
            CHECK(s.b > prev_b);
            CHECK(s.a < prev_a);
        }
        prev_b = s.b;
        prev_a = s.a;
        samples.push_back(s);
    }
    for (std::size_t k = 2; k < samples.size(); ++k) {
        const auto& p = samples[k - 2];
        const auto& m = samples[k - 1];
        const auto& n = samples[k];
        const double interp = p.a + (n.a - p.a) * (m.b - p.b) / (n.b - p.b);
        CHECK(m.a <= interp + 1e-9);
    }
}

TEST_CASE("sign pattern depends on omega only through the scaled variable") {
    // u = c * omega^{-(q1+q2)} crosses rho at omega_a (sign of a) and 1/rho
    // at omega_b (sign of b).
    std::mt19937_64 gen(55);
    for (int trial = 0; trial < 25; ++trial) {
        const double c = std::exp(uniform(gen, std::log(0.2), std::log(8.0)));
        const double q1 = uniform(gen, 0.1, 0.8);
        const double q2 = uniform(gen, q1 + 0.1, 1.0);
        const CriticalCurve curve = CriticalCurve::make(c, q1, q2);
        const double omega = std::exp(uniform(gen, std::log(0.05), std::log(20.0)));
        const double u = c * std::pow(omega, -(q1 + q2));
        const CurveSample s = curve.sample(omega);
        CHECK((s.a > 0.0) == (u > 1.0 / curve.rho()));
        CHECK((s.b < 0.0) == (u > curve.rho()));
    }
}

TEST_CASE("construction guards") {
    CHECK_THROWS_AS(CriticalCurve::make(-1.0, 0.4, 0.8), std::invalid_argument);
    CHECK_THROWS_AS(CriticalCurve::make(0.0, 0.4, 0.8), std::invalid_argument);
    CHECK_THROWS_AS(CriticalCurve::make(1.0, 0.8, 0.4), std::invalid_argument);
    CHECK_THROWS_AS(CriticalCurve::make(1.0, 0.5, 0.5 + 1e-12), std::invalid_argument);
    CHECK_THROWS_AS(CriticalCurve::make(1.0, 0.4, 1.2), std::invalid_argument);
}

TEST_CASE("corrupting rho2 is caught by the invariant checker") {
    CriticalCurve curve = CriticalCurve::make(4.0, 0.4, 0.8);
    CHECK(check_curve_invariants(curve, 64) == 0);
    curve.rho2 = -curve.rho2;
    CHECK(check_curve_invariants(curve, 64) > 0);
}
