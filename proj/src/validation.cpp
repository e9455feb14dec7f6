#include "magsim/validation.hpp"

#include "magsim/constants.hpp"

#include <cmath>
#include <limits>

namespace magsim {

std::string_view verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Warn: return "warn";
    case Verdict::Fail: return "fail";
    }
    return "?";
}

Verdict classify_ratio(double ratio) {
    if (ratio < 0.1) return Verdict::Pass;
    if (ratio < 1.0) return Verdict::Warn;
    return Verdict::Fail;
}

Verdict ValidationReport::overall() const {
    if (!occupancy_ok) return Verdict::Fail;
    return kerr_verdict;
}

double simplified_magnon_occupancy(const SystemParams& p, const DriveConfig& d,
                                   FrequencyUnits units) {
    const double scale = units == FrequencyUnits::Angular ? 1.0 : 1.0 / constants::two_pi;
    const double wb = p.omega_b * scale;
    const double gac = p.g_ac * scale;
    const double gcm = p.g_cm * scale;
    double amplitude = d.e_m * (wb * wb - gac * gac);
    if (d.direction == Direction::Forward) amplitude += d.e_a * gac * gcm;
    if (d.direction == Direction::Backward) amplitude += d.e_c * wb * gcm;
    return amplitude * amplitude / std::pow(wb, 6);
}

ValidationReport magnon_occupancy_check(const SystemParams& p, const SteadyState& s,
                                        const DriveConfig& d) {
    ValidationReport r;
    r.m_occupancy = std::norm(s.amp_m);
    r.m_occupancy_simplified = simplified_magnon_occupancy(p, d);
    r.occupancy_bound = 5.0 * p.n_spins;
    r.occupancy_ok = r.m_occupancy < r.occupancy_bound;
    return r;
}

ValidationReport kerr_check(const SystemParams& p, const SteadyState& s, const DriveConfig& d) {
    ValidationReport r;
    r.kerr_term = p.kerr * std::pow(std::abs(s.amp_m), 3);
    r.drive_sum = d.e_a + d.e_c + d.e_m;
    if (r.drive_sum > 0.0) {
        r.kerr_ratio = r.kerr_term / r.drive_sum;
    } else {
        r.kerr_ratio = r.kerr_term > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    }
    r.kerr_verdict = classify_ratio(r.kerr_ratio);
    r.kerr_ok = r.kerr_verdict == Verdict::Pass;
    return r;
}

ValidationReport validate(const SystemParams& p, const SteadyState& s, const DriveConfig& d) {
    ValidationReport r = magnon_occupancy_check(p, s, d);
    const ValidationReport k = kerr_check(p, s, d);
    r.kerr_term = k.kerr_term;
    r.drive_sum = k.drive_sum;
    r.kerr_ratio = k.kerr_ratio;
    r.kerr_verdict = k.kerr_verdict;
    r.kerr_ok = k.kerr_ok;
    return r;
}

} // namespace magsim
