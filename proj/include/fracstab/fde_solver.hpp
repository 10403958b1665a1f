#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracstab {

/// Initial value problem for an n-dimensional Caputo system where component
/// i carries its own order q_i in (0, 1]:
///   D^{q_i} x_i(t) = rhs_i(t, x),  x(0) = initial_state.
/// The grid is uniform: step * k = t_end for an integer k.
struct FdeProblem {
    std::vector<double> orders;
    std::function<void(double t, std::span<const double> state, std::span<double> out)> rhs;
    std::vector<double> initial_state;
    double t_end = 1.0;
    double step = 1e-2;
};

/// Uniform-grid solution history. `data` is row-major: state k occupies
/// data[k*dimension .. (k+1)*dimension).
struct Trajectory {
    std::vector<double> times;
    std::vector<double> data;
    std::size_t dimension = 0;
    std::vector<double> orders;
    /// Set when a component exceeded the overflow threshold; times/data
    /// stop at the last finite step.
    bool truncated = false;

    std::size_t size() const { return times.size(); }

    std::span<const double> state(std::size_t k) const {
        return {data.data() + k * dimension, dimension};
    }

    /// Euclidean norm of state k.
    double norm(std::size_t k) const;
};

/// Adams-Bashforth-Moulton predictor-corrector (one corrector pass) with
/// per-component fractional convolution weights and full memory. Unstable
/// runs are truncated at the overflow threshold 1e12 and flagged.
Trajectory solve(const FdeProblem& problem);

/// Least-squares slope of log||x|| against log t over the last
/// tail_fraction of the grid, negated, so a t^{-q} tail yields ~q.
/// Throws DegenerateTailError for vanishing norms or a tail whose total
/// upward movement exceeds half its starting norm (sustained oscillation).
double estimate_decay_exponent(const Trajectory& traj, double tail_fraction);

}  // namespace fracstab
