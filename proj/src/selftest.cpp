#include "fracstab/selftest.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "fracstab/char_function.hpp"
#include "fracstab/errors.hpp"
#include "fracstab/fhn.hpp"
#include "fracstab/random.hpp"
#include "fracstab/stability.hpp"

namespace fracstab {

int check_curve_invariants(const CriticalCurve& curve, int n_samples) {
    int violations = 0;
    if (n_samples < 3) {
        return 0;
    }

    // Log-spaced parameter sweep straddling the sign-change window
    // [omega_a, omega_b] by two decades on each side.
    double w_lo, w_hi;
    try {
        w_lo = curve.omega_a() / 100.0;
        w_hi = curve.omega_b() * 100.0;
        if (!(w_lo > 0.0) || !(w_hi > w_lo)) {
            return 1;
        }
    } catch (const std::exception&) {
        return 1;
    }

    std::vector<CurveSample> samples;
    samples.reserve(static_cast<std::size_t>(n_samples));
    const double ratio = std::log(w_hi / w_lo);
    for (int k = 0; k < n_samples; ++k) {
        const double w = w_lo * std::exp(ratio * k / (n_samples - 1));
        samples.push_back(curve.sample(w));
    }

    const CharFunction base = CharFunction::make(0.0, 0.0, curve.c, curve.q1, curve.q2);
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const CurveSample& s = samples[k];
        if (k > 0 && !(s.b > samples[k - 1].b && s.a < samples[k - 1].a)) {
            ++violations;  // monotonicity of the parametrization
        }
        // Boundary property: Delta(i omega) = 0 once (b, a) come from the curve.
        CharFunction f = base;
        f.a = s.a;
        f.b = s.b;
        const double scale = 1.0 + std::pow(s.omega, curve.q1 + curve.q2);
        if (!(std::abs(f.value({0.0, s.omega})) <= 1e-9 * scale)) {
            ++violations;
        }
        // Bound inequalities of the threshold function.
        const double bound = s.b >= 0.0
            ? -std::pow(s.b, curve.q1 / curve.q2)
            : std::pow(-s.b, curve.q2 / curve.q1) * std::pow(curve.c, 1.0 - curve.q2 / curve.q1);
        if (!(s.a <= bound + 1e-12)) {
            ++violations;
        }
    }
    // Midpoint convexity of a as a function of b.
    for (std::size_t k = 2; k < samples.size(); ++k) {
        const CurveSample& p = samples[k - 2];
        const CurveSample& m = samples[k - 1];
        const CurveSample& n = samples[k];
        if (n.b <= p.b) {
            continue;
        }
        const double interp = p.a + (n.a - p.a) * (m.b - p.b) / (n.b - p.b);
        if (!(m.a <= interp + 1e-9)) {
            ++violations;
        }
    }
    try {
        if (!(curve.a_star(0.0) < 0.0)) {
            ++violations;
        }
    } catch (const std::exception&) {
        ++violations;
    }
    return violations;
}

namespace {

void record(SelftestReport& report, bool ok, const std::string& message) {
    if (ok) {
        ++report.passed;
    } else {
        ++report.failed;
        report.failures.push_back(message);
    }
}

void oracle_cross_validation(const SelftestOptions& options, SelftestReport& report,
                             std::ostream& out) {
    std::mt19937_64 gen(options.seed);
    int agreed = 0, total = 0, skipped = 0;
    for (int trial = 0; trial < options.systems; ++trial) {
        LinearSystem2 sys;
        sys.a11 = uniform(gen, -3.0, 3.0);
        sys.a12 = uniform(gen, -3.0, 3.0);
        sys.a21 = uniform(gen, -3.0, 3.0);
        sys.a22 = uniform(gen, -3.0, 3.0);
        sys.q1 = uniform(gen, 0.05, 1.0);
        sys.q2 = uniform(gen, 0.05, 1.0);
        if (std::abs(sys.det()) < 1e-6) {
            ++skipped;
            continue;
        }
        const StabilityVerdict v = classify_matrix(sys);
        if (v.margin && std::abs(*v.margin) < 1e-6) {
            ++skipped;
            continue;
        }
        ++total;
        bool ok = false;
        std::string note;
        try {
            ok = verify_with_oracle(sys);
        } catch (const std::exception& e) {
            note = e.what();
        }
        if (ok) {
            ++agreed;
        } else {
            std::ostringstream msg;
            msg << "oracle mismatch: A=[[" << sys.a11 << "," << sys.a12 << "],[" << sys.a21
                << "," << sys.a22 << "]] q=(" << sys.q1 << "," << sys.q2 << ") verdict="
                << to_string(v.kind);
            if (!note.empty()) {
                msg << " (" << note << ")";
            }
            record(report, false, msg.str());
        }
    }
    report.passed += agreed;
    report.skipped += skipped;
    out << "oracle-agreement: " << agreed << "/" << total << " agreed, " << skipped
        << " skipped\n";
}

void curve_invariant_suite(const SelftestOptions& options, SelftestReport& report,
                           std::ostream& out) {
    std::mt19937_64 gen(options.seed ^ 0x9e3779b97f4a7c15ULL);
    int clean = 0;
    for (int trial = 0; trial < options.curve_trials; ++trial) {
        const double c = std::exp(uniform(gen, std::log(0.05), std::log(20.0)));
        double q1 = uniform(gen, 0.05, 0.98);
        double q2 = uniform(gen, 0.05, 1.0);
        if (q1 > q2) {
            std::swap(q1, q2);
        }
        if (q2 - q1 < 0.02) {
            q2 = std::min(1.0, q1 + 0.02);
        }
        const CriticalCurve curve = CriticalCurve::make(c, q1, q2);
        const int violations = check_curve_invariants(curve, options.curve_samples);
        if (violations == 0) {
            ++clean;
            ++report.passed;
        } else {
            std::ostringstream msg;
            msg << "curve invariants: " << violations << " violations for c=" << c
                << " q=(" << q1 << "," << q2 << ")";
            record(report, false, msg.str());
        }
    }
    out << "curve-invariants: " << clean << "/" << options.curve_trials << " curves clean\n";
}

void fhn_anchor_suite(SelftestReport& report, std::ostream& out) {
    FhnParams params{0.08, 0.7, 0.8, 0.0};
    // Current whose 6-digit rounding is 1.24567; the rest state is exactly (0.8, 1.875).
    params.I = params.i_inf(0.8);

    const FhnEquilibrium eq = equilibrium(params);
    record(report,
           std::abs(eq.v_star - 0.8) <= 1e-9 && std::abs(eq.w_star - 1.875) <= 1e-9,
           "fhn equilibrium anchor (0.8, 1.875) missed");

    const StabilityVerdict stable = classify_equilibrium(params, 0.58, 0.8);
    record(report, stable.kind == VerdictKind::StableAtOrders,
           "fhn verdict at q1=0.58 is not StableAtOrders");
    const StabilityVerdict unstable = classify_equilibrium(params, 0.63, 0.8);
    record(report, unstable.kind == VerdictKind::UnstableAtOrders,
           "fhn verdict at q1=0.63 is not UnstableAtOrders");

    const auto q1_star = hopf_q1(params, 0.8);
    record(report, q1_star && std::abs(*q1_star - 0.599) <= 0.005,
           "fhn Hopf threshold q1* far from 0.599");

    out << "fhn-anchors: equilibrium, verdict flip, Hopf threshold checked\n";
}

}  // namespace

SelftestReport run_selftest(const SelftestOptions& options, std::ostream& out) {
    SelftestReport report;
    oracle_cross_validation(options, report, out);
    curve_invariant_suite(options, report, out);
    fhn_anchor_suite(report, out);
    out << "selftest: " << report.passed << " passed, " << report.failed << " failed, "
        << report.skipped << " skipped\n";
    for (const std::string& line : report.failures) {
        out << "  FAIL " << line << "\n";
    }
    return report;
}

}  // namespace fracstab
