#pragma once

#include <cstdint>
#include <random>

namespace fracstab {

/// Uniform double in [lo, hi) from the raw engine output. Used instead of
/// std::uniform_real_distribution so that seeded runs produce identical
/// streams on every platform.
inline double uniform(std::mt19937_64& gen, double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

}  // namespace fracstab
