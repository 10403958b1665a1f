#include "fracstab/critical_curve.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracstab/errors.hpp"

namespace fracstab {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

CriticalCurve CriticalCurve::make(double c, double q1, double q2) {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("CriticalCurve: c must be positive");
    }
    if (!(q1 > 0.0 && q2 <= 1.0 && q1 < q2)) {
        throw std::invalid_argument("CriticalCurve: orders must satisfy 0 < q1 < q2 <= 1");
    }
    if (q2 - q1 < 1e-9) {
        throw std::invalid_argument("CriticalCurve: orders too close; use the commensurate path");
    }
    const double denom = std::sin((q2 - q1) * kHalfPi);
    CriticalCurve curve;
    curve.c = c;
    curve.q1 = q1;
    curve.q2 = q2;
    curve.rho1 = std::sin(q1 * kHalfPi) / denom;
    curve.rho2 = std::sin(q2 * kHalfPi) / denom;
    return curve;
}

double CriticalCurve::b_of(double omega) const {
    return rho1 * std::pow(omega, q2) - c * rho2 * std::pow(omega, -q1);
}

double CriticalCurve::a_of(double omega) const {
    return c * rho1 * std::pow(omega, -q2) - rho2 * std::pow(omega, q1);
}

CurveSample CriticalCurve::sample(double omega) const {
    if (!(omega > 0.0)) {
        throw std::domain_error("CriticalCurve::sample: omega must be positive");
    }
    return CurveSample{omega, b_of(omega), a_of(omega)};
}

double CriticalCurve::omega_a() const {
    return std::pow(c * rho(), 1.0 / (q1 + q2));
}

double CriticalCurve::omega_b() const {
    return std::pow(c / rho(), 1.0 / (q1 + q2));
}

double CriticalCurve::crossing_frequency(double b) const {
    if (!std::isfinite(b)) {
        throw std::invalid_argument("crossing_frequency: b must be finite");
    }
    double lo = omega_a();
    double hi = omega_b();

    int guard = 0;
    while (b_of(lo) > b) {
        lo *= 0.5;
        if (++guard > 4000 || lo == 0.0) {
            throw NoConvergenceError("crossing_frequency: bracket underflow");
        }
    }
    guard = 0;
    while (b_of(hi) < b) {
        hi *= 2.0;
        if (++guard > 4000 || !std::isfinite(hi)) {
            throw NoConvergenceError("crossing_frequency: bracket overflow");
        }
    }

    while (hi - lo > 1e-12 * lo) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (b_of(mid) < b) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double CriticalCurve::a_star(double b) const {
    return a_of(crossing_frequency(b));
}

}  // namespace fracstab
