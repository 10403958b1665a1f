#pragma once

#include <stdexcept>
#include <string>

namespace fracstab {

/// A zero of the characteristic function was detected on (or numerically
/// indistinguishable from) the imaginary axis. Callers should treat this
/// as the marginal / Hopf case rather than a countable configuration.
class BoundaryRootError : public std::runtime_error {
public:
    BoundaryRootError(double omega, double residual)
        : std::runtime_error("boundary root near omega=" + std::to_string(omega) +
                             " (relative |Delta|=" + std::to_string(residual) + ")"),
          omega(omega),
          residual(residual) {}

    double omega;
    double residual;
};

/// The winding integral did not land near an integer multiple of 2*pi.
class UnreliableWindingError : public std::runtime_error {
public:
    explicit UnreliableWindingError(double residual)
        : std::runtime_error("unreliable winding number (residual=" + std::to_string(residual) + ")"),
          residual(residual) {}

    double residual;
};

/// Newton iteration failed to reach the root tolerance.
class NoConvergenceError : public std::runtime_error {
public:
    explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// The trajectory tail cannot support a decay-exponent fit.
class DegenerateTailError : public std::runtime_error {
public:
    explicit DegenerateTailError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fracstab
