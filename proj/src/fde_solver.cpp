#include "fracstab/fde_solver.hpp"

#include <cmath>
#include <stdexcept>

#include "fracstab/errors.hpp"

namespace fracstab {

namespace {

constexpr double kOverflowLimit = 1e12;

// (m+1)^q - m^q without cancellation for large m.
double pow_diff(double m, double q) {
    if (m == 0.0) {
        return 1.0;
    }
    return std::pow(m, q) * std::expm1(q * std::log1p(1.0 / m));
}

// Fractional Adams weights for one component order.
struct OrderWeights {
    double h_pow_q_pred;    // h^q / Gamma(q+1)
    double h_pow_q_corr;    // h^q / Gamma(q+2)
    double q;
    std::vector<double> predictor;  // predictor kernel (m+1)^q - m^q
    std::vector<double> corrector;  // interior second differences of m^{q+1}

    OrderWeights(double q_, double h, std::size_t n) : q(q_) {
        const double hq = std::pow(h, q_);
        h_pow_q_pred = hq / std::tgamma(q_ + 1.0);
        h_pow_q_corr = hq / std::tgamma(q_ + 2.0);
        predictor.resize(n);
        corrector.resize(n);
        for (std::size_t m = 0; m < n; ++m) {
            const double dm = static_cast<double>(m);
            predictor[m] = pow_diff(dm, q_);
            corrector[m] = pow_diff(dm + 1.0, q_ + 1.0) - pow_diff(dm, q_ + 1.0);
        }
    }

    // Weight of the initial sample f_0 in the corrector at step k -> k+1.
    double initial_weight(std::size_t k) const {
        const double dk = static_cast<double>(k);
        return std::pow(dk, q + 1.0) - (dk - q) * std::pow(dk + 1.0, q);
    }
};

void validate(const FdeProblem& p, std::size_t& n_steps) {
    const std::size_t dim = p.orders.size();
    if (dim == 0 || p.initial_state.size() != dim) {
        throw std::invalid_argument("FdeProblem: orders and initial_state sizes must match");
    }
    for (double q : p.orders) {
        if (!(q > 0.0 && q <= 1.0)) {
            throw std::invalid_argument("FdeProblem: every order must lie in (0, 1]");
        }
    }
    if (!(p.step > 0.0) || !(p.t_end > 0.0)) {
        throw std::invalid_argument("FdeProblem: step and t_end must be positive");
    }
    if (!p.rhs) {
        throw std::invalid_argument("FdeProblem: rhs is empty");
    }
    const double ratio = p.t_end / p.step;
    const long long k = std::llround(ratio);
    if (k < 1 || std::abs(static_cast<double>(k) * p.step - p.t_end) > 1e-9 * p.t_end) {
        throw std::invalid_argument("FdeProblem: step must divide t_end");
    }
    n_steps = static_cast<std::size_t>(k);
}

}  // namespace

double Trajectory::norm(std::size_t k) const {
    double acc = 0.0;
    for (double x : state(k)) {
        acc += x * x;
    }
    return std::sqrt(acc);
}

Trajectory solve(const FdeProblem& problem) {
    std::size_t n_steps = 0;
    validate(problem, n_steps);
    const std::size_t dim = problem.orders.size();
    const double h = problem.step;

    std::vector<OrderWeights> weights;
    weights.reserve(dim);
    for (double q : problem.orders) {
        weights.emplace_back(q, h, n_steps);
    }

    // Full history of the right-hand side, one contiguous vector per component.
    std::vector<std::vector<double>> fhist(dim);
    for (auto& v : fhist) {
        v.reserve(n_steps + 1);
    }

    Trajectory traj;
    traj.dimension = dim;
    traj.orders = problem.orders;
    traj.times.reserve(n_steps + 1);
    traj.data.reserve((n_steps + 1) * dim);

    std::vector<double> state(problem.initial_state);
    std::vector<double> rhs_out(dim);
    std::vector<double> predicted(dim);

    traj.times.push_back(0.0);
    traj.data.insert(traj.data.end(), state.begin(), state.end());

    problem.rhs(0.0, state, rhs_out);
    for (std::size_t i = 0; i < dim; ++i) {
        fhist[i].push_back(rhs_out[i]);
    }

    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t_next = static_cast<double>(k + 1) * h;

        for (std::size_t i = 0; i < dim; ++i) {
            const double* w = weights[i].predictor.data();
            const double* fh = fhist[i].data();
            double acc = 0.0;
            for (std::size_t j = 0; j <= k; ++j) {
                acc += w[k - j] * fh[j];
            }
            predicted[i] = problem.initial_state[i] + weights[i].h_pow_q_pred * acc;
        }

        problem.rhs(t_next, predicted, rhs_out);

        bool overflow = false;
        for (std::size_t i = 0; i < dim; ++i) {
            const double* w = weights[i].corrector.data();
            const double* fh = fhist[i].data();
            double acc = weights[i].initial_weight(k) * fh[0];
            for (std::size_t j = 1; j <= k; ++j) {
                acc += w[k - j] * fh[j];
            }
            acc += rhs_out[i];
            state[i] = problem.initial_state[i] + weights[i].h_pow_q_corr * acc;
            if (!std::isfinite(state[i]) || std::abs(state[i]) > kOverflowLimit) {
                overflow = true;
            }
        }
        if (overflow) {
            traj.truncated = true;
            break;
        }

        traj.times.push_back(t_next);
        traj.data.insert(traj.data.end(), state.begin(), state.end());

        problem.rhs(t_next, state, rhs_out);
        for (std::size_t i = 0; i < dim; ++i) {
            fhist[i].push_back(rhs_out[i]);
        }
    }
    return traj;
}

double estimate_decay_exponent(const Trajectory& traj, double tail_fraction) {
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0)) {
        throw std::invalid_argument("estimate_decay_exponent: tail_fraction must lie in (0, 1)");
    }
    const std::size_t n = traj.size();
    if (n < 4) {
        throw std::invalid_argument("estimate_decay_exponent: trajectory too short");
    }
    std::size_t count = static_cast<std::size_t>(std::lround(tail_fraction * static_cast<double>(n)));
    count = std::min(std::max<std::size_t>(count, 2), n - 1);
    const std::size_t start = n - count;
    if (!(traj.times[start] > 0.0)) {
        throw std::invalid_argument("estimate_decay_exponent: window must start at t > 0");
    }

    std::vector<double> norms(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double m = traj.norm(start + k);
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw DegenerateTailError("estimate_decay_exponent: vanishing or non-finite norm in tail");
        }
        norms[k] = m;
    }

    // Total upward movement relative to the window entry distinguishes a
    // sustained oscillation from a decaying tail with ripples.
    double rise = 0.0;
    for (std::size_t k = 0; k + 1 < count; ++k) {
        rise += std::max(0.0, norms[k + 1] - norms[k]);
    }
    if (rise > 0.5 * norms.front()) {
        throw DegenerateTailError("estimate_decay_exponent: oscillatory tail (relative oscillation > 50%)");
    }

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < count; ++k) {
        const double x = std::log(traj.times[start + k]);
        const double y = std::log(norms[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double dn = static_cast<double>(count);
    const double denom = dn * sxx - sx * sx;
    if (denom == 0.0) {
        throw DegenerateTailError("estimate_decay_exponent: degenerate time window");
    }
    const double slope = (dn * sxy - sx * sy) / denom;
    return -slope;
}

}  // namespace fracstab
