#include "magsim/transmission.hpp"

#include "magsim/constants.hpp"
#include "magsim/errors.hpp"

#include <cmath>
#include <limits>

namespace magsim {

namespace {

SteadyState solve(const SystemParams& p, const DriveConfig& d, MeanFieldMethod method) {
    return method == MeanFieldMethod::ClosedForm ? steady_state_closed_form(p, d)
                                                 : steady_state_self_consistent(p, d);
}

// Output field of the far cavity for a given probe direction and power.
double output_field(SystemParams p, Direction direction, double power, MeanFieldMethod method) {
    p.p_a = power;
    p.p_c = power;
    const SteadyState s = solve(p, make_drive(p, direction), method);
    return direction == Direction::Forward ? std::sqrt(p.kappa_c) * std::abs(s.amp_c)
                                           : std::sqrt(p.kappa_a) * std::abs(s.amp_a);
}

} // namespace

double transmission(const SystemParams& params, Direction direction, double power,
                    MeanFieldMethod method) {
    if (direction == Direction::MagnonOnly) {
        throw ConfigError("transmission needs a forward or backward probe");
    }
    if (!(power > 0.0)) {
        throw UndefinedError("transmission coefficient undefined at zero probe power");
    }
    const double eps = std::sqrt(power / (constants::hbar * params.omega_d));
    return output_field(params, direction, power, method) / eps;
}

double isolation_db(const SystemParams& params, double power, MeanFieldMethod method) {
    if (power < 0.0) throw ConfigError("probe power must be non-negative");
    if (power > 0.0) {
        return ratio_db(transmission(params, Direction::Forward, power, method),
                        transmission(params, Direction::Backward, power, method));
    }
    const double fwd = output_field(params, Direction::Forward, 0.0, method);
    const double bwd = output_field(params, Direction::Backward, 0.0, method);
    if (fwd != 0.0 || bwd != 0.0) return ratio_db(fwd, bwd);

    // No magnon drive either: the mean field is linear in the probe, so any
    // finite probe gives the limiting ratio.
    const double unit_probe = constants::hbar * params.omega_d;
    return ratio_db(output_field(params, Direction::Forward, unit_probe, method),
                    output_field(params, Direction::Backward, unit_probe, method));
}

TransmissionPoint transmission_point(const SystemParams& params, double power,
                                     MeanFieldMethod method) {
    TransmissionPoint t;
    t.power = power;
    if (power > 0.0) {
        t.t12 = transmission(params, Direction::Forward, power, method);
        t.t21 = transmission(params, Direction::Backward, power, method);
        t.t_iso_db = ratio_db(t.t12, t.t21);
    } else {
        t.t12 = std::numeric_limits<double>::quiet_NaN();
        t.t21 = std::numeric_limits<double>::quiet_NaN();
        t.t_iso_db = isolation_db(params, power, method);
    }
    return t;
}

} // namespace magsim
