#pragma once

#include "magsim/decibel.hpp"
#include "magsim/mean_field.hpp"
#include "magsim/params.hpp"

namespace magsim {

/// Forward/backward transmission at a common probe power P_a = P_c = power.
struct TransmissionPoint {
    double power = 0.0;
    double t12 = 0.0;
    double t21 = 0.0;
    double t_iso_db = 0.0;
};

/// |sqrt(kappa_c) <c>| / eps_a (forward) or |sqrt(kappa_a) <a>| / eps_c
/// (backward), with eps = sqrt(P / hbar omega_d) and the magnon drive taken
/// from params.p_m. Throws UndefinedError for power <= 0.
double transmission(const SystemParams& params, Direction direction, double power,
                    MeanFieldMethod method = MeanFieldMethod::ClosedForm);

/// 20 log10(T12 / T21) in dB. At zero power the probe amplitudes cancel and
/// the ratio of the magnon-driven output fields is used (or, without a magnon
/// drive, the ratio of the probe-linear responses). Returns +inf when only
/// T21 vanishes, -inf when only T12 vanishes and 0 when both do.
double isolation_db(const SystemParams& params, double power,
                    MeanFieldMethod method = MeanFieldMethod::ClosedForm);

/// Both coefficients and the isolation at one power (coefficients NaN at P = 0).
TransmissionPoint transmission_point(const SystemParams& params, double power,
                                     MeanFieldMethod method = MeanFieldMethod::ClosedForm);

} // namespace magsim
