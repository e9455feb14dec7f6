#pragma once

#include "magsim/constants.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace magsim {

/// Which port carries the probe drive. The magnon is driven in every case.
enum class Direction {
    Forward,    ///< E_a != 0, E_c = 0
    Backward,   ///< E_c != 0, E_a = 0
    MagnonOnly, ///< E_a = E_c = 0
};

/// Column suffix used in tables: "12", "21" or "m".
std::string_view direction_suffix(Direction d);
std::string_view direction_name(Direction d);
/// Accepts "forward"/"12", "backward"/"21", "magnon"/"magnon_only"/"m".
Direction parse_direction(std::string_view text);

/// Physical parameters of the two-cavity magnomechanical system.
///
/// Every rate and frequency is an angular frequency in rad/s. Powers are in
/// watts and the temperature in kelvin. Absolute mode frequencies other than
/// the phonon and the drive are optional; the dynamics only needs detunings.
struct SystemParams {
    std::optional<double> omega_a;
    std::optional<double> omega_c;
    std::optional<double> omega_m;
    double omega_b = 0.0;
    double omega_d = 0.0;

    double delta_a = 0.0;
    double delta_c = 0.0;
    double delta_m = 0.0;
    double delta_m_tilde = 0.0; ///< magnon detuning including the magnetostrictive shift

    double g_ac = 0.0;
    double g_cm = 0.0;
    double g_mb = 0.0; ///< single-magnon magnomechanical rate

    double kappa_a = 0.0;
    double kappa_c = 0.0;
    double kappa_m = 0.0;
    double kappa_b = 0.0;

    double p_a = 0.0;
    double p_c = 0.0;
    double p_m = 0.0;

    double temperature = 0.0;
    double n_spins = 0.0;
    double kerr = 0.0;
};

/// Drive amplitudes (rad/s) for one probe direction.
struct DriveConfig {
    Direction direction = Direction::MagnonOnly;
    double e_a = 0.0;
    double e_c = 0.0;
    double e_m = 0.0;
};

/// Unit-suffixed key/value record from which SystemParams are built.
///
/// Frequencies use `*_hz` keys holding ordinary frequencies nu (multiplied by
/// 2pi on ingest) unless `angular` is set, in which case they are taken as
/// rad/s verbatim. Detunings and g_ac may instead be given as multiples of
/// omega_b through `*_over_omega_b`. Powers use `*_mw`.
class RawParams {
public:
    /// Sets a key, replacing any alias that addresses the same quantity.
    /// `kappa_hz` and `p_mw` expand to both cavities.
    void set(const std::string& key, double value);
    std::optional<double> get(const std::string& key) const;
    bool contains(const std::string& key) const { return values_.count(key) != 0; }

    /// Applies every entry of `other` on top of this record.
    void merge(const RawParams& other);

    const std::map<std::string, double>& entries() const { return values_; }

    bool angular = false;

private:
    std::map<std::string, double> values_;
};

/// All keys accepted by RawParams::set (after alias expansion).
const std::vector<std::string>& param_keys();
bool is_param_key(std::string_view key);

/// Converts a raw record into canonical angular units and checks consistency.
/// Throws ConfigError on a missing field, a negative rate, or an
/// (omega_j, omega_d, delta_j) triple inconsistent beyond 1e-9 relative.
SystemParams build_params(const RawParams& raw);

/// E = sqrt(kappa) * sqrt(P / (hbar omega_d)).
double drive_amplitude(double power, double kappa, double omega_d);

/// Bose-Einstein occupancy of a mode at `omega` (rad/s), zero at T = 0.
double thermal_occupancy(double omega, double temperature);

/// Drive amplitudes for a probe direction, using p_a (forward) or p_c (backward).
DriveConfig make_drive(const SystemParams& params, Direction direction);

inline double to_hz(double angular) { return angular / constants::two_pi; }

} // namespace magsim
