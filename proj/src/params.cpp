#include "magsim/params.hpp"

#include "magsim/constants.hpp"
#include "magsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace magsim {

namespace {

const std::vector<std::string> kKeys = {
    "omega_a_hz", "omega_c_hz", "omega_m_hz", "omega_b_hz", "omega_d_hz", "b0_oe",
    "delta_a_hz", "delta_c_hz", "delta_m_hz", "delta_m_tilde_hz",
    "delta_a_over_omega_b", "delta_c_over_omega_b", "delta_m_over_omega_b",
    "delta_m_tilde_over_omega_b",
    "g_ac_hz", "g_ac_over_omega_b", "g_cm_hz", "g_mb_hz",
    "kappa_a_hz", "kappa_c_hz", "kappa_m_hz", "kappa_b_hz",
    "p_a_mw", "p_c_mw", "p_m_mw",
    "temperature_k", "n_spins", "kerr_hz",
};

// Keys that address the same physical quantity; setting one drops the others.
const std::vector<std::vector<std::string>> kAliasGroups = {
    {"delta_a_hz", "delta_a_over_omega_b"},
    {"delta_c_hz", "delta_c_over_omega_b"},
    {"delta_m_hz", "delta_m_over_omega_b"},
    {"delta_m_tilde_hz", "delta_m_tilde_over_omega_b"},
    {"g_ac_hz", "g_ac_over_omega_b"},
    {"omega_m_hz", "b0_oe"},
};

class Reader {
public:
    explicit Reader(const RawParams& raw)
        : raw_(raw), scale_(raw.angular ? 1.0 : constants::two_pi) {}

    std::optional<double> frequency(const std::string& key) const {
        auto v = raw_.get(key);
        if (!v) return std::nullopt;
        return finite(key, *v) * scale_;
    }

    double required_frequency(const std::string& key) const {
        auto v = frequency(key);
        if (!v) throw ConfigError("missing field: " + key);
        return *v;
    }

    std::optional<double> plain(const std::string& key) const {
        auto v = raw_.get(key);
        if (!v) return std::nullopt;
        return finite(key, *v);
    }

private:
    static double finite(const std::string& key, double v) {
        if (!std::isfinite(v)) throw ConfigError("non-finite value for " + key);
        return v;
    }

    const RawParams& raw_;
    double scale_;
};

void require_non_negative(const std::string& name, double v) {
    if (v < 0.0) throw ConfigError("negative value for " + name);
}

// `<stem>_hz` or `<stem>_over_omega_b`, or nullopt.
std::optional<double> frequency_or_ratio(const Reader& r, const std::string& stem, double omega_b) {
    if (auto v = r.frequency(stem + "_hz")) return v;
    if (auto v = r.plain(stem + "_over_omega_b")) return *v * omega_b;
    return std::nullopt;
}

double resolve_detuning(const Reader& r, const std::string& stem, double omega_b,
                        std::optional<double> omega_j, std::optional<double> omega_d) {
    auto direct = frequency_or_ratio(r, stem, omega_b);
    if (direct && omega_j && omega_d) {
        const double implied = *omega_j - *omega_d;
        const double scale = std::max({std::abs(*omega_j), std::abs(*omega_d), std::abs(*direct)});
        if (std::abs(*direct - implied) > 1e-9 * scale) {
            throw ConfigError("inconsistent " + stem + ": given detuning differs from "
                              "mode frequency minus drive frequency");
        }
    }
    if (direct) return *direct;
    if (omega_j && omega_d) return *omega_j - *omega_d;
    throw ConfigError("missing field: " + stem + "_hz");
}

} // namespace

std::string_view direction_suffix(Direction d) {
    switch (d) {
    case Direction::Forward: return "12";
    case Direction::Backward: return "21";
    case Direction::MagnonOnly: return "m";
    }
    return "?";
}

std::string_view direction_name(Direction d) {
    switch (d) {
    case Direction::Forward: return "forward";
    case Direction::Backward: return "backward";
    case Direction::MagnonOnly: return "magnon";
    }
    return "?";
}

Direction parse_direction(std::string_view text) {
    if (text == "forward" || text == "12") return Direction::Forward;
    if (text == "backward" || text == "21") return Direction::Backward;
    if (text == "magnon" || text == "magnon_only" || text == "m") return Direction::MagnonOnly;
    throw ConfigError("unknown direction: " + std::string(text));
}

void RawParams::set(const std::string& key, double value) {
    if (key == "kappa_hz") {
        set("kappa_a_hz", value);
        set("kappa_c_hz", value);
        return;
    }
    if (key == "p_mw") {
        set("p_a_mw", value);
        set("p_c_mw", value);
        return;
    }
    if (!is_param_key(key)) throw ConfigError("unknown parameter key: " + key);
    for (const auto& group : kAliasGroups) {
        if (std::find(group.begin(), group.end(), key) != group.end()) {
            for (const auto& alias : group) values_.erase(alias);
        }
    }
    values_[key] = value;
}

std::optional<double> RawParams::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

void RawParams::merge(const RawParams& other) {
    for (const auto& [k, v] : other.values_) set(k, v);
    angular = angular || other.angular;
}

const std::vector<std::string>& param_keys() { return kKeys; }

bool is_param_key(std::string_view key) {
    return key == "kappa_hz" || key == "p_mw" ||
           std::find(kKeys.begin(), kKeys.end(), key) != kKeys.end();
}

SystemParams build_params(const RawParams& raw) {
    const Reader r(raw);
    SystemParams p;

    p.omega_b = r.required_frequency("omega_b_hz");
    if (p.omega_b <= 0.0) throw ConfigError("omega_b_hz must be positive");

    p.omega_a = r.frequency("omega_a_hz");
    p.omega_c = r.frequency("omega_c_hz");
    p.omega_m = r.frequency("omega_m_hz");
    if (auto b0 = r.plain("b0_oe")) {
        if (p.omega_m) throw ConfigError("both omega_m_hz and b0_oe given");
        p.omega_m = constants::two_pi * constants::gyromagnetic_hz_per_oe * *b0;
    }

    std::optional<double> omega_d = r.frequency("omega_d_hz");
    if (!omega_d) {
        // Infer the drive frequency from any mode whose detuning is given directly.
        const std::pair<std::optional<double>, std::string> candidates[] = {
            {p.omega_a, "delta_a"}, {p.omega_c, "delta_c"}, {p.omega_m, "delta_m"}};
        for (const auto& [omega_j, stem] : candidates) {
            if (!omega_j) continue;
            if (auto d = frequency_or_ratio(r, stem, p.omega_b)) {
                omega_d = *omega_j - *d;
                break;
            }
        }
    }
    if (!omega_d) throw ConfigError("missing field: omega_d_hz");
    p.omega_d = *omega_d;
    if (p.omega_d <= 0.0) throw ConfigError("omega_d_hz must be positive");

    p.delta_a = resolve_detuning(r, "delta_a", p.omega_b, p.omega_a, omega_d);
    p.delta_c = resolve_detuning(r, "delta_c", p.omega_b, p.omega_c, omega_d);

    auto tilde = frequency_or_ratio(r, "delta_m_tilde", p.omega_b);
    std::optional<double> bare;
    if (frequency_or_ratio(r, "delta_m", p.omega_b) || p.omega_m) {
        bare = resolve_detuning(r, "delta_m", p.omega_b, p.omega_m, omega_d);
    }
    if (!tilde && !bare) throw ConfigError("missing field: delta_m_tilde_hz");
    p.delta_m_tilde = tilde ? *tilde : *bare;
    p.delta_m = bare ? *bare : *tilde;

    auto g_ac = frequency_or_ratio(r, "g_ac", p.omega_b);
    if (!g_ac) throw ConfigError("missing field: g_ac_hz");
    p.g_ac = *g_ac;
    p.g_cm = r.required_frequency("g_cm_hz");
    p.g_mb = r.required_frequency("g_mb_hz");
    p.kappa_a = r.required_frequency("kappa_a_hz");
    p.kappa_c = r.required_frequency("kappa_c_hz");
    p.kappa_m = r.required_frequency("kappa_m_hz");
    p.kappa_b = r.required_frequency("kappa_b_hz");

    p.p_a = r.plain("p_a_mw").value_or(0.0) * 1e-3;
    p.p_c = r.plain("p_c_mw").value_or(0.0) * 1e-3;
    p.p_m = r.plain("p_m_mw").value_or(0.0) * 1e-3;
    p.temperature = r.plain("temperature_k").value_or(0.0);
    p.n_spins = r.plain("n_spins").value_or(constants::default_spin_number);
    p.kerr = r.frequency("kerr_hz").value_or(constants::two_pi * constants::default_kerr_hz);

    require_non_negative("g_ac", p.g_ac);
    require_non_negative("g_cm", p.g_cm);
    require_non_negative("g_mb", p.g_mb);
    require_non_negative("kappa_a", p.kappa_a);
    require_non_negative("kappa_c", p.kappa_c);
    require_non_negative("kappa_m", p.kappa_m);
    require_non_negative("kappa_b", p.kappa_b);
    require_non_negative("p_a", p.p_a);
    require_non_negative("p_c", p.p_c);
    require_non_negative("p_m", p.p_m);
    require_non_negative("temperature", p.temperature);
    require_non_negative("kerr", p.kerr);
    if (p.omega_a) require_non_negative("omega_a", *p.omega_a);
    if (p.omega_c) require_non_negative("omega_c", *p.omega_c);
    if (p.omega_m) require_non_negative("omega_m", *p.omega_m);
    if (!(p.n_spins > 0.0)) throw ConfigError("n_spins must be positive");
    return p;
}

double drive_amplitude(double power, double kappa, double omega_d) {
    if (!(omega_d > 0.0)) throw ConfigError("drive frequency must be positive");
    if (power < 0.0) throw ConfigError("drive power must be non-negative");
    if (kappa < 0.0) throw ConfigError("dissipation rate must be non-negative");
    return std::sqrt(kappa) * std::sqrt(power / (constants::hbar * omega_d));
}

double thermal_occupancy(double omega, double temperature) {
    if (temperature <= 0.0) return 0.0;
    const double x = constants::hbar * omega / (constants::k_boltzmann * temperature);
    return 1.0 / std::expm1(x);
}

DriveConfig make_drive(const SystemParams& params, Direction direction) {
    DriveConfig d;
    d.direction = direction;
    d.e_m = drive_amplitude(params.p_m, params.kappa_m, params.omega_d);
    if (direction == Direction::Forward) {
        d.e_a = drive_amplitude(params.p_a, params.kappa_a, params.omega_d);
    } else if (direction == Direction::Backward) {
        d.e_c = drive_amplitude(params.p_c, params.kappa_c, params.omega_d);
    }
    return d;
}

} // namespace magsim
