#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fracstab/critical_curve.hpp"

namespace fracstab {

struct SelftestOptions {
    std::uint64_t seed = 20170403;
    int systems = 1000;       ///< random systems for the oracle cross-validation
    int curve_trials = 25;    ///< random critical curves checked
    int curve_samples = 64;   ///< samples per curve
};

struct SelftestReport {
    int passed = 0;
    int failed = 0;
    int skipped = 0;
    std::vector<std::string> failures;

    bool ok() const { return failed == 0; }
};

/// Cross-validates the classifier against the argument-principle count on
/// random systems, checks the critical-curve invariants on random curves,
/// and verifies the FitzHugh-Nagumo anchors. Progress lines go to `out`.
SelftestReport run_selftest(const SelftestOptions& options, std::ostream& out);

/// Invariant violations for one curve over n log-spaced samples:
/// monotonicity of b and a, midpoint convexity of a_star, the two bound
/// inequalities, vanishing of the characteristic function at i*omega, and
/// a_star(0) < 0. A correctly constructed curve yields 0.
int check_curve_invariants(const CriticalCurve& curve, int n_samples);

}  // namespace fracstab
