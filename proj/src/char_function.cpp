#include "fracstab/char_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracstab/errors.hpp"

namespace fracstab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTol = 1e-8;
constexpr double kResidualLimit = 0.1;

// arg with -0.0 imaginary parts mapped onto the upper edge of the cut,
// so that arg(s) lands in (-pi, pi].
double principal_arg(std::complex<double> s) {
    const double im = s.imag() == 0.0 ? 0.0 : s.imag();
    return std::atan2(im, s.real());
}

}  // namespace

std::complex<double> principal_pow(std::complex<double> s, double q) {
    if (s.real() == 0.0 && s.imag() == 0.0) {
        return {0.0, 0.0};
    }
    const double th = principal_arg(s);
    const double lr = std::log(std::abs(s));
    return std::polar(std::exp(q * lr), q * th);
}

CharFunction CharFunction::make(double a, double b, double c, double q1, double q2) {
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c))) {
        throw std::invalid_argument("CharFunction: coefficients must be finite");
    }
    if (!(q1 > 0.0 && q1 <= 1.0 && q2 > 0.0 && q2 <= 1.0)) {
        throw std::invalid_argument("CharFunction: orders must lie in (0, 1]");
    }
    if (q1 > q2) {
        std::swap(q1, q2);
        std::swap(a, b);
    }
    return CharFunction{a, b, c, q1, q2};
}

std::complex<double> CharFunction::value(std::complex<double> s) const {
    if (s.real() == 0.0 && s.imag() == 0.0) {
        return {c, 0.0};
    }
    const double th = principal_arg(s);
    const double lr = std::log(std::abs(s));
    const auto power = [&](double q) { return std::polar(std::exp(q * lr), q * th); };
    return power(q1 + q2) + a * power(q2) + b * power(q1) + c;
}

std::complex<double> CharFunction::derivative(std::complex<double> s) const {
    if (s.real() == 0.0 && s.imag() == 0.0) {
        throw std::domain_error("CharFunction::derivative undefined at s = 0");
    }
    const double th = principal_arg(s);
    const double lr = std::log(std::abs(s));
    const auto power = [&](double q) { return std::polar(std::exp(q * lr), q * th); };
    return (q1 + q2) * power(q1 + q2 - 1.0) + a * q2 * power(q2 - 1.0) + b * q1 * power(q1 - 1.0);
}

double CharFunction::contour_radius() const {
    const double total = std::abs(a) + std::abs(b) + std::abs(c);
    if (total == 0.0) {
        return 2.0;
    }
    const double log_r = std::log(3.0 * total) / q1;
    if (log_r > 690.0) {
        throw std::domain_error("CharFunction: contour radius overflows for these coefficients");
    }
    return std::max(2.0, std::exp(log_r));
}

namespace {

// Walks f along one parameterized contour leg, accumulating the phase
// change with interval bisection until every increment is below pi/2.
// Tracks the minimal relative modulus on the imaginary axis for the
// boundary-root detection.
class PhaseWalker {
public:
    explicit PhaseWalker(const CharFunction& f) : f_(f) {}

    template <typename Path>
    void leg(const Path& path, int initial_intervals, bool on_axis) {
        std::complex<double> prev = eval(path(0.0), on_axis);
        double t_prev = 0.0;
        for (int k = 1; k <= initial_intervals; ++k) {
            const double t = static_cast<double>(k) / initial_intervals;
            const std::complex<double> cur = eval(path(t), on_axis);
            refine(path, t_prev, prev, t, cur, 0, on_axis);
            t_prev = t;
            prev = cur;
        }
    }

    double total() const { return total_; }

private:
    std::complex<double> eval(std::complex<double> s, bool on_axis) {
        const std::complex<double> v = f_.value(s);
        if (on_axis) {
            const double w = std::abs(s.imag());
            const double rel = std::abs(v) / (1.0 + std::pow(w, f_.q1 + f_.q2));
            if (rel < kBoundaryTol) {
                throw BoundaryRootError(w, rel);
            }
        }
        return v;
    }

    template <typename Path>
    void refine(const Path& path, double t0, std::complex<double> f0, double t1,
                std::complex<double> f1, int depth, bool on_axis) {
        const double inc = std::arg(f1 / f0);
        if (std::abs(inc) < kPi / 2.0 && depth >= 1) {
            total_ += inc;
            return;
        }
        if (depth > kMaxDepth) {
            throw UnreliableWindingError(std::abs(inc));
        }
        const double tm = 0.5 * (t0 + t1);
        const std::complex<double> fm = eval(path(tm), on_axis);
        refine(path, t0, f0, tm, fm, depth + 1, on_axis);
        refine(path, tm, fm, t1, f1, depth + 1, on_axis);
    }

    static constexpr int kMaxDepth = 52;

    const CharFunction& f_;
    double total_ = 0.0;
};

RhpCount count_commensurate(const CharFunction& f) {
    const double q = 0.5 * (f.q1 + f.q2);
    // Roots of z^2 + (a+b) z + c, z standing for s^q.
    const std::complex<double> disc = std::complex<double>((f.a + f.b) * (f.a + f.b) - 4.0 * f.c, 0.0);
    const std::complex<double> sq = std::sqrt(disc);
    const std::complex<double> roots[2] = {0.5 * (-(f.a + f.b) + sq), 0.5 * (-(f.a + f.b) - sq)};

    int count = 0;
    for (const auto& z : roots) {
        if (std::abs(z) == 0.0) {
            continue;  // excluded by the c != 0 precondition
        }
        const double th = std::abs(std::arg(z));
        if (th > q * kPi) {
            continue;  // no preimage on the principal branch
        }
        const std::complex<double> s = principal_pow(z, 1.0 / q);
        if (std::abs(s.real()) <= 1e-9 * (1.0 + std::abs(s))) {
            throw BoundaryRootError(std::abs(s.imag()), std::abs(s.real()));
        }
        if (s.real() > 0.0) {
            ++count;
        }
    }
    return RhpCount{count, f.contour_radius(), 0.0};
}

}  // namespace

RhpCount count_rhp_roots(const CharFunction& f) {
    if (f.c == 0.0) {
        throw std::invalid_argument("count_rhp_roots: c must be nonzero (Delta(0) != 0)");
    }
    if (f.commensurate()) {
        return count_commensurate(f);
    }

    const double radius = f.contour_radius();

    // By conjugate symmetry only the upper half of the contour is walked:
    // from s = R along the quarter arc to iR, then down the axis to 0.
    // Both endpoints are real, and the full winding equals twice the phase
    // change accumulated here.
    PhaseWalker walker(f);

    const auto arc = [&](double t) {
        return std::polar(radius, t * kPi / 2.0);
    };
    walker.leg(arc, 64, false);

    // Geometric descent R -> omega_floor, then a straight run into 0.
    // The floor sits where the constant term dominates all power terms.
    const double coeff = std::abs(f.a) + std::abs(f.b) + 1.0;
    double floor_log = std::log(1e-3 * std::abs(f.c) / coeff) / f.q1;
    double omega_floor = std::exp(std::min(floor_log, std::log(1e-9)));
    omega_floor = std::max(omega_floor, 1e-280);

    const double log_hi = std::log(radius);
    const double log_lo = std::log(omega_floor);
    const auto axis_geom = [&](double t) {
        return std::complex<double>(0.0, std::exp(log_hi + t * (log_lo - log_hi)));
    };
    const int decades = static_cast<int>((log_hi - log_lo) / std::numbers::ln10) + 1;
    walker.leg(axis_geom, std::max(64, 8 * decades), true);

    const auto axis_tail = [&](double t) {
        return std::complex<double>(0.0, omega_floor * (1.0 - t));
    };
    walker.leg(axis_tail, 4, true);

    const double full_winding = 2.0 * walker.total();
    const double count_real = full_winding / (2.0 * kPi);
    const long count = std::lround(count_real);
    const double residual = std::abs(full_winding - 2.0 * kPi * static_cast<double>(count));
    if (residual >= kResidualLimit || count < 0) {
        throw UnreliableWindingError(residual);
    }
    return RhpCount{static_cast<int>(count), radius, residual};
}

std::complex<double> track_root(const CharFunction& f, std::complex<double> s0) {
    std::complex<double> s = s0;
    for (int iter = 0; iter < 100; ++iter) {
        const std::complex<double> v = f.value(s);
        const double scale = 1.0 + std::pow(std::abs(s), f.q1 + f.q2);
        if (std::abs(v) <= 1e-12 * scale) {
            return s;
        }
        if (s.real() == 0.0 && s.imag() == 0.0) {
            throw NoConvergenceError("track_root: iterate hit the origin");
        }
        const std::complex<double> dv = f.derivative(s);
        if (std::abs(dv) == 0.0 || !std::isfinite(std::abs(dv))) {
            throw NoConvergenceError("track_root: vanishing derivative");
        }
        s -= v / dv;
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw NoConvergenceError("track_root: iterate diverged");
        }
    }
    throw NoConvergenceError("track_root: no convergence within 100 Newton steps");
}

}  // namespace fracstab
