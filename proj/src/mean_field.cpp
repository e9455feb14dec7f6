#include "magsim/mean_field.hpp"

#include "magsim/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace magsim {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

void check_denominator(const SystemParams& p, double den) {
    const double scale = std::abs(p.g_cm * p.g_cm * p.delta_a) +
                         std::abs(p.g_ac * p.g_ac * p.delta_m_tilde) +
                         std::abs(p.delta_a * p.delta_c * p.delta_m_tilde);
    if (!(std::abs(den) > 1e-12 * scale) || scale == 0.0) {
        throw SingularityError("closed-form mean field is singular (resonant degeneracy)");
    }
}

double relative(cd residual, double norm) {
    return norm > 0.0 ? std::abs(residual) / norm : 0.0;
}

} // namespace

double closed_form_denominator(const SystemParams& p) {
    return p.g_cm * p.g_cm * p.delta_a + p.g_ac * p.g_ac * p.delta_m_tilde -
           p.delta_a * p.delta_c * p.delta_m_tilde;
}

std::complex<double> phonon_amplitude(const SystemParams& p, std::complex<double> amp_m) {
    return -I * p.g_mb * std::norm(amp_m) / cd(p.kappa_b, p.omega_b);
}

SteadyState steady_state_closed_form(const SystemParams& p, const DriveConfig& d) {
    const double den = closed_form_denominator(p);
    check_denominator(p, den);

    const double dt = p.delta_m_tilde;
    SteadyState s;
    s.amp_a = I * (d.e_m * p.g_ac * p.g_cm - d.e_a * p.g_cm * p.g_cm - d.e_c * p.g_ac * dt +
                   d.e_a * p.delta_c * dt) / den;
    s.amp_c = -I * (d.e_m * p.g_cm * p.delta_a + d.e_a * p.g_ac * dt - d.e_c * p.delta_a * dt) / den;
    s.amp_m = -I * (d.e_m * p.g_ac * p.g_ac - d.e_a * p.g_ac * p.g_cm + d.e_c * p.g_cm * p.delta_a -
                    d.e_m * p.delta_a * p.delta_c) / den;
    s.amp_b = phonon_amplitude(p, s.amp_m);
    s.delta_m_tilde_used = dt;
    s.method = MeanFieldMethod::ClosedForm;
    return s;
}

SteadyState solve_stationary(const SystemParams& p, const DriveConfig& d, double delta_m_tilde) {
    Eigen::Matrix3cd m;
    m << cd(p.kappa_a, p.delta_a), I * p.g_ac, 0.0,
         I * p.g_ac, cd(p.kappa_c, p.delta_c), I * p.g_cm,
         0.0, I * p.g_cm, cd(p.kappa_m, delta_m_tilde);
    const Eigen::Vector3cd rhs(d.e_a, d.e_c, d.e_m);

    Eigen::FullPivLU<Eigen::Matrix3cd> lu(m);
    if (!lu.isInvertible()) {
        throw SingularityError("stationary mean-field system is singular");
    }
    const Eigen::Vector3cd x = lu.solve(rhs);

    SteadyState s;
    s.amp_a = x(0);
    s.amp_c = x(1);
    s.amp_m = x(2);
    s.amp_b = phonon_amplitude(p, s.amp_m);
    s.delta_m_tilde_used = delta_m_tilde;
    s.method = MeanFieldMethod::SelfConsistent;
    return s;
}

SteadyState steady_state_self_consistent(const SystemParams& p, const DriveConfig& d,
                                         SelfConsistentOptions options) {
    if (!(options.tol > 0.0)) throw ConfigError("self-consistent tolerance must be positive");
    if (options.max_iter < 1) throw ConfigError("max_iter must be at least 1");

    std::vector<double> history;
    double detuning = p.delta_m;
    double relaxation = 1.0;
    double previous_step = 0.0;
    double residual = 0.0;

    for (int iter = 0; iter < options.max_iter; ++iter) {
        history.push_back(detuning);
        SteadyState s = solve_stationary(p, d, detuning);
        const double updated = p.delta_m + 2.0 * p.g_mb * s.amp_b.real();
        const double step = updated - detuning;
        const double scale = std::max({std::abs(updated), std::abs(p.delta_m), p.kappa_m});
        residual = scale > 0.0 ? std::abs(step) / scale : std::abs(step);

        if (residual < options.tol) {
            s.detuning_history = std::move(history);
            s.residual = residual;
            return s;
        }
        if (iter > 0 && std::signbit(step) != std::signbit(previous_step)) relaxation = 0.5;
        previous_step = step;
        detuning += relaxation * step;
    }
    throw ConvergenceError("self-consistent mean field did not converge", residual);
}

double stationary_residual(const SystemParams& p, const DriveConfig& d, const SteadyState& s,
                           bool include_damping) {
    const double ka = include_damping ? p.kappa_a : 0.0;
    const double kc = include_damping ? p.kappa_c : 0.0;
    const double km = include_damping ? p.kappa_m : 0.0;
    const double dt = s.delta_m_tilde_used;

    const cd ta = cd(ka, p.delta_a) * s.amp_a;
    const cd tac = I * p.g_ac * s.amp_c;
    const cd r1 = ta + tac - d.e_a;

    const cd tc = cd(kc, p.delta_c) * s.amp_c;
    const cd tca = I * p.g_ac * s.amp_a;
    const cd tcm = I * p.g_cm * s.amp_m;
    const cd r2 = tc + tca + tcm - d.e_c;

    const cd tm = cd(km, dt) * s.amp_m;
    const cd tmc = I * p.g_cm * s.amp_c;
    const cd r3 = tm + tmc - d.e_m;

    const cd tb = cd(p.kappa_b, p.omega_b) * s.amp_b;
    const cd tbm = I * p.g_mb * std::norm(s.amp_m);
    const cd r4 = tb + tbm;

    return std::max({relative(r1, std::abs(ta) + std::abs(tac) + d.e_a),
                     relative(r2, std::abs(tc) + std::abs(tca) + std::abs(tcm) + d.e_c),
                     relative(r3, std::abs(tm) + std::abs(tmc) + d.e_m),
                     relative(r4, std::abs(tb) + std::abs(tbm))});
}

EffectiveCoupling effective_coupling(const SystemParams& p, const DriveConfig& d) {
    const double den = closed_form_denominator(p);
    check_denominator(p, den);
    const double num = d.e_m * p.g_ac * p.g_ac - d.e_a * p.g_ac * p.g_cm +
                       d.e_c * p.g_cm * p.delta_a - d.e_m * p.delta_a * p.delta_c;
    return {2.0 * p.g_mb * num / den, d.direction};
}

EffectiveCoupling effective_coupling(const SteadyState& s, double g_mb, Direction direction) {
    const cd g = 2.0 * I * g_mb * s.amp_m;
    const double magnitude = std::abs(g);
    return {std::signbit(g.real()) ? -magnitude : magnitude, direction};
}

} // namespace magsim
