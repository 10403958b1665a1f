#pragma once

#include <optional>
#include <string>

namespace fracstab {

enum class VerdictKind {
    StableAllOrders,    ///< asymptotically stable regardless of the orders
    UnstableAllOrders,  ///< unstable regardless of the orders
    StableAtOrders,     ///< stable at the given orders (a > a_star)
    UnstableAtOrders,   ///< unstable at the given orders (a < a_star)
    MarginalHopf,       ///< on the critical curve within tolerance; no claim made
    DegenerateZeroRoot  ///< c = 0, the characteristic function vanishes at 0
};

const char* to_string(VerdictKind kind);

struct StabilityVerdict {
    VerdictKind kind = VerdictKind::DegenerateZeroRoot;
    /// min(q1,q2) for the stable kinds, absent otherwise.
    std::optional<double> decay_order;
    /// Which clause fired, e.g. "Cor-1", "Cor-2a", "Cor-3b", "Mat-a".
    std::string rule;
    /// a - a_star when the threshold was computed.
    std::optional<double> margin;

    bool stable() const {
        return kind == VerdictKind::StableAllOrders || kind == VerdictKind::StableAtOrders;
    }
    bool unstable() const {
        return kind == VerdictKind::UnstableAllOrders || kind == VerdictKind::UnstableAtOrders;
    }
};

/// Two equations with individual Caputo orders:
///   D^{q1} x = a11 x + a12 y
///   D^{q2} y = a21 x + a22 y
struct LinearSystem2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
    double q1 = 0.5, q2 = 0.5;

    /// a12 * a21 == 0: one equation does not feed the other. Classified
    /// per-equation by diagonal sign instead of via the coupled machinery.
    bool decoupled() const { return a12 * a21 == 0.0; }

    double det() const { return a11 * a22 - a12 * a21; }
};

/// Verdict for the characteristic coefficients (a, b, c) at orders (q1, q2).
/// The pair ((a,b),(q1,q2)) is normalized by the swap symmetry first.
StabilityVerdict classify_coeffs(double a, double b, double c, double q1, double q2);

/// Verdict for the matrix form; delegates with a = -a11, b = -a22, c = det.
StabilityVerdict classify_matrix(const LinearSystem2& sys);

/// Cross-check of classify_matrix against the argument-principle count.
/// Requires det != 0; propagates oracle errors other than BoundaryRootError
/// (which must coincide with a MarginalHopf verdict to count as agreement).
bool verify_with_oracle(const LinearSystem2& sys);

/// Relative tolerance for calling a configuration marginal: the verdict is
/// MarginalHopf iff |a - a_star| <= kHopfTolerance * (1 + |a_star|).
inline constexpr double kHopfTolerance = 1e-10;

}  // namespace fracstab
