#pragma once

#include "magsim/mean_field.hpp"
#include "magsim/params.hpp"

#include <Eigen/Core>

namespace magsim {

using Matrix8d = Eigen::Matrix<double, 8, 8>;

/// Linearized quadrature dynamics d(sigma)/dt = A sigma + noise with
/// sigma = (X_a, Y_a, X_c, Y_c, X_m, Y_m, X_b, Y_b), X = (o + o^+)/sqrt2,
/// Y = (o - o^+)/(i sqrt2). Vacuum variance is 1/2 in this convention.
struct DriftModel {
    Matrix8d a_matrix = Matrix8d::Zero();
    Matrix8d d_matrix = Matrix8d::Zero(); ///< symmetrized diffusion, diagonal
    double g_mb_used = 0.0;
};

struct StabilityReport {
    bool stable = false;
    double margin = 0.0; ///< -max Re(lambda)
};

/// Drift and diffusion for an effective coupling G_mb and thermal phonon
/// occupancy n_b. The phonon block is [[-k_b, w_b], [-w_b, -k_b]], i.e. a
/// free rotation of (X_b, Y_b) at w_b damped at k_b.
DriftModel drift_matrix(const SystemParams& params, const EffectiveCoupling& coupling, double n_b);

/// Eigenvalue-based classification. Throws NumericalError on non-finite entries.
StabilityReport stability(const DriftModel& model);
StabilityReport stability(const Matrix8d& a_matrix);

} // namespace magsim
