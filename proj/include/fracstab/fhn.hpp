#pragma once

#include <array>
#include <optional>
#include <vector>

#include "fracstab/fde_solver.hpp"
#include "fracstab/stability.hpp"

namespace fracstab {

/// FitzHugh-Nagumo with Caputo derivatives:
///   D^{q1} v = v - v^3/3 - w + I
///   D^{q2} w = r (v + c - d w)
/// Equivalent conductance form uses phi = r*d in (0,1), alpha = 1/d > 1,
/// beta = c/d, with w_inf(v) = alpha*v + beta and
/// I_inf(v) = (alpha-1) v + v^3/3 + beta.
struct FhnParams {
    double r = 0.08;
    double c = 0.7;
    double d = 0.8;
    double I = 0.0;  ///< external excitation current

    double phi() const { return r * d; }
    double alpha() const { return 1.0 / d; }
    double beta() const { return c / d; }

    double i_inf(double v) const { return (alpha() - 1.0) * v + v * v * v / 3.0 + beta(); }
    double i_inf_prime(double v) const { return v * v + alpha() - 1.0; }

    /// Throws std::invalid_argument unless r > 0, d > 0, phi in (0,1), alpha > 1.
    void validate() const;
};

/// Unique rest state and the characteristic coefficients of its linearization.
struct FhnEquilibrium {
    double v_star = 0.0;
    double w_star = 0.0;
    double coeff_a = 0.0;  ///< -1 + v_star^2
    double coeff_b = 0.0;  ///< phi, always > 0
    double coeff_c = 0.0;  ///< phi * I_inf'(v_star) = det(J), always > 0
};

/// Solves I_inf(v) = I by safeguarded Newton inside an analytic bracket.
/// Residual contract: |I_inf(v_star) - I| <= 1e-12 * (1 + |I|).
FhnEquilibrium equilibrium(const FhnParams& params);

/// Stability of the rest state at the given orders. Whenever
/// |v_star| > sqrt(1 - phi) the verdict is StableAllOrders.
StabilityVerdict classify_equilibrium(const FhnParams& params, double q1, double q2);

/// Critical order q1* in (0, q2) where the linearization crosses the
/// stability boundary, when the equilibrium is order-dependent
/// (|v_star| <= sqrt(1 - phi)); nullopt otherwise or when no sign change
/// exists. 64-point scan, then bisection to 1e-6; the smallest root wins.
std::optional<double> hopf_q1(const FhnParams& params, double q2);

/// Hopf boundary in the (q1,q2)-plane: for q2 on a grid_n-point grid over
/// (0,1], the pairs (hopf_q1(q2), q2) that exist. All emitted pairs satisfy
/// q1 < q2 (points at/below the bisector never arise).
std::vector<std::array<double, 2>> hopf_curve(const FhnParams& params, int grid_n);

struct BranchPoint {
    double I = 0.0;
    double v_star = 0.0;
    /// |v_star| > sqrt(1 - phi): stable regardless of the orders.
    bool order_robust = false;
};

/// Equilibrium branch over n equally spaced currents in [i_min, i_max].
std::vector<BranchPoint> branch_diagram(double r, double c, double d,
                                        double i_min, double i_max, int n);

/// Two-dimensional FdeProblem for the model at the given orders.
FdeProblem make_fhn_problem(const FhnParams& params, double q1, double q2,
                            double v0, double w0, double t_end, double step);

}  // namespace fracstab
