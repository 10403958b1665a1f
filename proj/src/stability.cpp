#include "fracstab/stability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "fracstab/char_function.hpp"
#include "fracstab/critical_curve.hpp"
#include "fracstab/errors.hpp"

namespace fracstab {

const char* to_string(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::StableAllOrders: return "StableAllOrders";
        case VerdictKind::UnstableAllOrders: return "UnstableAllOrders";
        case VerdictKind::StableAtOrders: return "StableAtOrders";
        case VerdictKind::UnstableAtOrders: return "UnstableAtOrders";
        case VerdictKind::MarginalHopf: return "MarginalHopf";
        case VerdictKind::DegenerateZeroRoot: return "DegenerateZeroRoot";
    }
    return "?";
}

namespace {

StabilityVerdict verdict_from_margin(double margin, double a_star, double decay,
                                     const char* stable_rule, const char* unstable_rule) {
    StabilityVerdict v;
    v.margin = margin;
    if (std::abs(margin) <= kHopfTolerance * (1.0 + std::abs(a_star))) {
        v.kind = VerdictKind::MarginalHopf;
        v.rule = "Prop-3b";
    } else if (margin > 0.0) {
        v.kind = VerdictKind::StableAtOrders;
        v.rule = stable_rule;
        v.decay_order = decay;
    } else {
        v.kind = VerdictKind::UnstableAtOrders;
        v.rule = unstable_rule;
    }
    return v;
}

}  // namespace

StabilityVerdict classify_coeffs(double a, double b, double c, double q1, double q2) {
    if (!(q1 > 0.0 && q1 <= 1.0 && q2 > 0.0 && q2 <= 1.0)) {
        throw std::invalid_argument("classify_coeffs: orders must lie in (0, 1]");
    }
    if (!(std::isfinite(a) && std::isfinite(b) && std::isfinite(c))) {
        throw std::invalid_argument("classify_coeffs: coefficients must be finite");
    }
    // Swap symmetry: (a,b,q1,q2) and (b,a,q2,q1) define the same function.
    if (q1 > q2) {
        std::swap(q1, q2);
        std::swap(a, b);
    }

    StabilityVerdict v;
    if (c < 0.0) {
        v.kind = VerdictKind::UnstableAllOrders;
        v.rule = "Cor-1";
        return v;
    }
    if (c == 0.0) {
        v.kind = VerdictKind::DegenerateZeroRoot;
        v.rule = "Prop-2";
        return v;
    }
    if (a + 1.0 > 0.0 && a + b > 0.0 && b + c > 0.0) {
        v.kind = VerdictKind::StableAllOrders;
        v.rule = "Cor-3a";
        v.decay_order = q1;
        return v;
    }
    if (a + b + c + 1.0 <= 0.0) {
        v.kind = VerdictKind::UnstableAllOrders;
        v.rule = "Cor-3b";
        return v;
    }

    if (q2 - q1 < CharFunction::kCommensurateGap) {
        // Matignon condition for the quadratic in s^q: the complex pair
        // sits on |arg| = q*pi/2 exactly when a + b = -2 sqrt(c) cos(q*pi/2).
        const double q = 0.5 * (q1 + q2);
        const double a_star = -b - 2.0 * std::sqrt(c) * std::cos(q * std::numbers::pi / 2.0);
        return verdict_from_margin(a - a_star, a_star, q1, "Mat-a", "Mat-b");
    }

    const CriticalCurve curve = CriticalCurve::make(c, q1, q2);
    const double a_star = curve.a_star(b);
    return verdict_from_margin(a - a_star, a_star, q1, "Cor-2a", "Cor-2b");
}

namespace {

// One decoupled scalar equation D^q x = d x: stable iff d < 0, for every
// order, by the scalar Matignon condition.
int diagonal_sign(double d) {
    if (d < 0.0) return -1;
    if (d > 0.0) return 1;
    return 0;
}

StabilityVerdict classify_decoupled(const LinearSystem2& sys) {
    const int s1 = diagonal_sign(sys.a11);
    const int s2 = diagonal_sign(sys.a22);
    StabilityVerdict v;
    v.rule = "decoupled";
    if (s1 == 0 || s2 == 0) {
        v.kind = VerdictKind::DegenerateZeroRoot;
        return v;
    }
    if (s1 < 0 && s2 < 0) {
        v.kind = VerdictKind::StableAllOrders;
        v.decay_order = std::min(sys.q1, sys.q2);
        return v;
    }
    v.kind = VerdictKind::UnstableAllOrders;
    return v;
}

}  // namespace

StabilityVerdict classify_matrix(const LinearSystem2& sys) {
    if (sys.decoupled()) {
        return classify_decoupled(sys);
    }
    return classify_coeffs(-sys.a11, -sys.a22, sys.det(), sys.q1, sys.q2);
}

bool verify_with_oracle(const LinearSystem2& sys) {
    const StabilityVerdict verdict = classify_matrix(sys);
    const CharFunction f = CharFunction::make(-sys.a11, -sys.a22, sys.det(), sys.q1, sys.q2);
    try {
        const RhpCount rc = count_rhp_roots(f);
        if (verdict.stable()) {
            return rc.count == 0;
        }
        if (verdict.unstable()) {
            return rc.count >= 1;
        }
        return false;  // marginal verdicts must show up as boundary roots
    } catch (const BoundaryRootError&) {
        return verdict.kind == VerdictKind::MarginalHopf;
    }
}

}  // namespace fracstab
