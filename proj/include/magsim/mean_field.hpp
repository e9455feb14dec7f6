#pragma once

#include "magsim/params.hpp"

#include <complex>
#include <vector>

namespace magsim {

enum class MeanFieldMethod { ClosedForm, SelfConsistent };

/// Stationary mean amplitudes <a>, <c>, <m>, <b>.
struct SteadyState {
    std::complex<double> amp_a;
    std::complex<double> amp_c;
    std::complex<double> amp_m;
    std::complex<double> amp_b;
    double delta_m_tilde_used = 0.0;
    MeanFieldMethod method = MeanFieldMethod::ClosedForm;

    // Self-consistent solves only.
    std::vector<double> detuning_history;
    double residual = 0.0;
};

/// Real effective magnomechanical coupling G_mb entering the drift matrix.
struct EffectiveCoupling {
    double value = 0.0;
    Direction direction = Direction::MagnonOnly;
};

/// g_cm^2 D_a + g_ac^2 D~_m - D_a D_c D~_m, the determinant of the
/// damping-free stationary system (up to a factor of -i).
double closed_form_denominator(const SystemParams& params);

/// Damping-free stationary amplitudes, valid for detunings much larger than
/// the linewidths. Uses params.delta_m_tilde as given.
/// Throws SingularityError when the denominator vanishes.
SteadyState steady_state_closed_form(const SystemParams& params, const DriveConfig& drive);

/// Stationary amplitudes including damping at a fixed effective magnon detuning.
SteadyState solve_stationary(const SystemParams& params, const DriveConfig& drive,
                             double delta_m_tilde);

struct SelfConsistentOptions {
    double tol = 1e-10;
    int max_iter = 1000;
};

/// Fixed point over the magnon detuning: D~_m = D_m + g_mb (<b> + <b>*), with
/// damping retained everywhere. Starts from D~_m = D_m and switches to a
/// relaxation factor of 0.5 once successive updates alternate in sign.
/// Throws ConvergenceError after max_iter iterations.
SteadyState steady_state_self_consistent(const SystemParams& params, const DriveConfig& drive,
                                         SelfConsistentOptions options = {});

/// Phonon displacement driven by the magnon population.
std::complex<double> phonon_amplitude(const SystemParams& params, std::complex<double> amp_m);

/// Largest relative residual of the four stationary mean-value equations,
/// evaluated at state.delta_m_tilde_used. With include_damping false the
/// linewidth terms of the a, c and m equations are dropped.
double stationary_residual(const SystemParams& params, const DriveConfig& drive,
                           const SteadyState& state, bool include_damping = true);

/// Closed-form directional coupling
/// G = 2 g_mb (E_m g_ac^2 - E_a g_ac g_cm + E_c g_cm D_a - E_m D_a D_c) / den.
EffectiveCoupling effective_coupling(const SystemParams& params, const DriveConfig& drive);

/// Coupling from an arbitrary steady state: |2 g_mb <m>| carrying the sign of
/// Re(2i g_mb <m>), the phase of <m> being absorbed into the mode definition.
EffectiveCoupling effective_coupling(const SteadyState& state, double g_mb, Direction direction);

} // namespace magsim
