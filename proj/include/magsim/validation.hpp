#pragma once

#include "magsim/mean_field.hpp"
#include "magsim/params.hpp"

#include <string_view>

namespace magsim {

enum class Verdict { Pass, Warn, Fail };
std::string_view verdict_name(Verdict v);

/// "x << y" as a ratio: below 0.1 passes, below 1 warns, otherwise fails.
Verdict classify_ratio(double ratio);

/// Linearization sanity checks for one steady state.
struct ValidationReport {
    double m_occupancy = 0.0;            ///< |<m>|^2
    double m_occupancy_simplified = 0.0; ///< red-sideband approximation
    double occupancy_bound = 0.0;        ///< 5 N
    bool occupancy_ok = true;            ///< m_occupancy < occupancy_bound

    double kerr_term = 0.0; ///< K |<m>|^3, rad/s
    double drive_sum = 0.0; ///< E_a + E_c + E_m, rad/s
    double kerr_ratio = 0.0;
    Verdict kerr_verdict = Verdict::Pass;
    bool kerr_ok = true; ///< kerr_verdict == Pass

    Verdict overall() const;
};

/// Unit convention for evaluating the simplified occupancy formula. Ordinary
/// divides omega_b, g_ac and g_cm by 2pi while keeping the drive amplitudes in
/// rad/s, which is not dimensionally consistent but is how published figures
/// for this formula are sometimes quoted.
enum class FrequencyUnits { Angular, Ordinary };

/// [E_m (w_b^2 - g_ac^2) + E_a g_ac g_cm]^2 / w_b^6 (forward) or with
/// E_c w_b g_cm (backward); exact for D_a = D_c = -w_b, D~_m = w_b, g_ac = g_cm.
double simplified_magnon_occupancy(const SystemParams& params, const DriveConfig& drive,
                                   FrequencyUnits units = FrequencyUnits::Angular);

/// Occupancy fields only; kerr fields left at their defaults.
ValidationReport magnon_occupancy_check(const SystemParams& params, const SteadyState& state,
                                        const DriveConfig& drive);

/// Kerr fields only.
ValidationReport kerr_check(const SystemParams& params, const SteadyState& state,
                            const DriveConfig& drive);

/// Both checks.
ValidationReport validate(const SystemParams& params, const SteadyState& state,
                          const DriveConfig& drive);

} // namespace magsim
