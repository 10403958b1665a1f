#include "fracstab/fhn.hpp"

#include <cmath>
#include <stdexcept>

#include "fracstab/critical_curve.hpp"

namespace fracstab {

void FhnParams::validate() const {
    if (!(r > 0.0) || !(d > 0.0)) {
        throw std::invalid_argument("FhnParams: r and d must be positive");
    }
    const double p = phi();
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("FhnParams: phi = r*d must lie in (0, 1)");
    }
    if (!(alpha() > 1.0)) {
        throw std::invalid_argument("FhnParams: alpha = 1/d must exceed 1");
    }
    if (!std::isfinite(c) || !std::isfinite(I)) {
        throw std::invalid_argument("FhnParams: c and I must be finite");
    }
}

FhnEquilibrium equilibrium(const FhnParams& params) {
    params.validate();
    const double target = params.I;
    const double excess = std::abs(target - params.beta());
    const double reach = std::max(3.0, std::cbrt(3.0 * excess) + 2.0);

    // I_inf is strictly increasing, so the root is unique and bracketed.
    double lo = -reach;
    double hi = reach;
    double v = 0.0;
    const double tol = 1e-12 * (1.0 + std::abs(target));
    for (int iter = 0; iter < 200; ++iter) {
        const double fv = params.i_inf(v) - target;
        if (std::abs(fv) <= tol) {
            break;
        }
        if (fv > 0.0) {
            hi = v;
        } else {
            lo = v;
        }
        double next = v - fv / params.i_inf_prime(v);
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        v = next;
    }

    FhnEquilibrium eq;
    eq.v_star = v;
    eq.w_star = params.alpha() * v + params.beta();
    eq.coeff_a = -1.0 + v * v;
    eq.coeff_b = params.phi();
    eq.coeff_c = params.phi() * params.i_inf_prime(v);
    return eq;
}

StabilityVerdict classify_equilibrium(const FhnParams& params, double q1, double q2) {
    const FhnEquilibrium eq = equilibrium(params);
    return classify_coeffs(eq.coeff_a, eq.coeff_b, eq.coeff_c, q1, q2);
}

std::optional<double> hopf_q1(const FhnParams& params, double q2) {
    if (!(q2 > 0.0 && q2 <= 1.0)) {
        throw std::invalid_argument("hopf_q1: q2 must lie in (0, 1]");
    }
    const FhnEquilibrium eq = equilibrium(params);
    if (std::abs(eq.v_star) > std::sqrt(1.0 - params.phi())) {
        return std::nullopt;  // stable for every order pair, no crossing
    }

    const auto gap = [&](double q1) {
        const CriticalCurve curve = CriticalCurve::make(eq.coeff_c, q1, q2);
        return eq.coeff_a - curve.a_star(eq.coeff_b);
    };

    constexpr int kGrid = 64;
    double prev_q = q2 * 0.5 / kGrid;
    double prev_g = gap(prev_q);
    for (int k = 1; k < kGrid; ++k) {
        const double cur_q = q2 * (k + 0.5) / kGrid;
        const double cur_g = gap(cur_q);
        if (prev_g == 0.0) {
            return prev_q;
        }
        if ((prev_g < 0.0) != (cur_g < 0.0)) {
            double lo = prev_q, g_lo = prev_g;
            double hi = cur_q;
            while (hi - lo > 1e-6) {
                const double mid = 0.5 * (lo + hi);
                const double g_mid = gap(mid);
                if ((g_mid < 0.0) == (g_lo < 0.0)) {
                    lo = mid;
                    g_lo = g_mid;
                } else {
                    hi = mid;
                }
            }
            return 0.5 * (lo + hi);  // smallest sign change wins
        }
        prev_q = cur_q;
        prev_g = cur_g;
    }
    return std::nullopt;
}

std::vector<std::array<double, 2>> hopf_curve(const FhnParams& params, int grid_n) {
    if (grid_n < 1) {
        throw std::invalid_argument("hopf_curve: grid_n must be positive");
    }
    std::vector<std::array<double, 2>> points;
    for (int j = 1; j <= grid_n; ++j) {
        const double q2 = static_cast<double>(j) / grid_n;
        if (const auto q1 = hopf_q1(params, q2)) {
            points.push_back({*q1, q2});
        }
    }
    return points;
}

std::vector<BranchPoint> branch_diagram(double r, double c, double d,
                                        double i_min, double i_max, int n) {
    if (n < 2) {
        throw std::invalid_argument("branch_diagram: need at least two samples");
    }
    if (!(i_min < i_max)) {
        throw std::invalid_argument("branch_diagram: require i_min < i_max");
    }
    FhnParams params{r, c, d, i_min};
    params.validate();
    const double robust_level = std::sqrt(1.0 - params.phi());

    std::vector<BranchPoint> branch;
    branch.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        params.I = i_min + (i_max - i_min) * static_cast<double>(j) / (n - 1);
        const FhnEquilibrium eq = equilibrium(params);
        branch.push_back({params.I, eq.v_star, std::abs(eq.v_star) > robust_level});
    }
    return branch;
}

FdeProblem make_fhn_problem(const FhnParams& params, double q1, double q2,
                            double v0, double w0, double t_end, double step) {
    params.validate();
    FdeProblem problem;
    problem.orders = {q1, q2};
    problem.initial_state = {v0, w0};
    problem.t_end = t_end;
    problem.step = step;
    problem.rhs = [params](double, std::span<const double> x, std::span<double> out) {
        const double v = x[0];
        const double w = x[1];
        out[0] = v - v * v * v / 3.0 - w + params.I;
        out[1] = params.r * (v + params.c - params.d * w);
    };
    return problem;
}

}  // namespace fracstab
