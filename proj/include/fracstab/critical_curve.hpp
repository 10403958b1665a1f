#pragma once

namespace fracstab {

/// One point of the critical curve in the (b,a)-plane together with the
/// crossing frequency that generated it.
struct CurveSample {
    double omega = 0.0;
    double b = 0.0;
    double a = 0.0;
};

/// Parametric locus of coefficient pairs (b,a) for which the characteristic
/// function has a pure imaginary root pair, for fixed c > 0 and orders
/// 0 < q1 < q2 <= 1:
///
///   b(w) = rho1 * w^{q2} - c * rho2 * w^{-q1}
///   a(w) = c * rho1 * w^{-q2} - rho2 * w^{q1}
///
/// with rho1 = sin(q1 pi/2) / sin((q2-q1) pi/2) and
///      rho2 = sin(q2 pi/2) / sin((q2-q1) pi/2).
///
/// b is strictly increasing and a strictly decreasing in w, so the locus is
/// the graph of a decreasing convex bijection a_star: R -> R.
struct CriticalCurve {
    double c = 1.0;
    double q1 = 0.4;
    double q2 = 0.8;
    double rho1 = 0.0;
    double rho2 = 0.0;

    /// Validating factory: requires c > 0, 0 < q1 < q2 <= 1 and
    /// q2 - q1 >= 1e-9 (below that the commensurate reduction applies).
    static CriticalCurve make(double c, double q1, double q2);

    double rho() const { return rho1 / rho2; }

    double b_of(double omega) const;
    double a_of(double omega) const;

    /// Both coordinates at a parameter value; domain error for omega <= 0.
    CurveSample sample(double omega) const;

    /// Root of a(w) = 0: (c * rho)^{1/(q1+q2)}.
    double omega_a() const;
    /// Root of b(w) = 0: (c / rho)^{1/(q1+q2)}.
    double omega_b() const;

    /// The unique w with b(w) = b, bracketed from [omega_a, omega_b] by
    /// doubling/halving, then bisected to 1e-12 relative width.
    double crossing_frequency(double b) const;

    /// Threshold a_star(b) = a(b^{-1}(b)).
    double a_star(double b) const;
};

}  // namespace fracstab
