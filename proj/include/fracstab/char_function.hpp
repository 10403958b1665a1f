#pragma once

#include <complex>

namespace fracstab {

/// Principal-branch complex power s^q with arg(s) in (-pi, pi] and the
/// limit convention 0^q = 0 for q > 0.
std::complex<double> principal_pow(std::complex<double> s, double q);

/// The quasi-polynomial s^{q1+q2} + a*s^{q2} + b*s^{q1} + c on the
/// principal branch. Orders are normalized so that q1 <= q2 (swapping
/// (a,b) together with (q1,q2) leaves the function unchanged).
struct CharFunction {
    double a = 0.0;   ///< coefficient of s^{q2}
    double b = 0.0;   ///< coefficient of s^{q1}
    double c = 0.0;   ///< constant term, equals the value at s = 0
    double q1 = 0.5;  ///< smaller order, in (0, 1]
    double q2 = 0.5;  ///< larger order, in (0, 1]

    /// Validating factory; swaps (a,b) and (q1,q2) if needed so q1 <= q2.
    static CharFunction make(double a, double b, double c, double q1, double q2);

    std::complex<double> value(std::complex<double> s) const;

    /// d/ds of value(); domain error at s = 0.
    std::complex<double> derivative(std::complex<double> s) const;

    /// Algebraic decay exponent of stable trajectories, min(q1, q2).
    double decay_order() const { return q1; }

    /// Orders too close for the incommensurate machinery; handled via the
    /// reduction to a quadratic in s^q.
    bool commensurate() const { return q2 - q1 < kCommensurateGap; }

    /// Radius enclosing every root: max(2, (3(|a|+|b|+|c|))^{1/q1}).
    double contour_radius() const;

    static constexpr double kCommensurateGap = 1e-9;
};

/// Zeros in the open right half-plane, counted with multiplicity by the
/// argument principle along the D-shaped contour of radius contour_radius.
struct RhpCount {
    int count = 0;
    double contour_radius = 0.0;
    /// Distance of the raw winding integral to the nearest multiple of 2*pi.
    double winding_residual = 0.0;
};

/// Counts right-half-plane roots of f. Requires c != 0 (so the origin is
/// off the contour). Throws BoundaryRootError when the relative modulus
/// min |f(i w)| / (1 + w^{q1+q2}) drops below 1e-8 on the axis scan, and
/// UnreliableWindingError when the winding residual is >= 0.1.
RhpCount count_rhp_roots(const CharFunction& f);

/// Newton refinement from s0, at most 100 steps; succeeds once
/// |f(s)| <= 1e-12 * (1 + |s|^{q1+q2}). Throws NoConvergenceError.
std::complex<double> track_root(const CharFunction& f, std::complex<double> s0);

}  // namespace fracstab
