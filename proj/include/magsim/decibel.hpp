#pragma once

#include <cmath>
#include <limits>

namespace magsim {

/// 20 log10(forward / backward) for non-negative magnitudes. Equal values give
/// exactly 0 dB (including both zero); a vanishing backward value gives +inf
/// and a vanishing forward value -inf.
inline double ratio_db(double forward, double backward) {
    if (forward == backward) return 0.0;
    if (backward == 0.0) return std::numeric_limits<double>::infinity();
    if (forward == 0.0) return -std::numeric_limits<double>::infinity();
    return 20.0 * std::log10(forward / backward);
}

} // namespace magsim
