#pragma once

#include "magsim/fluctuation.hpp"

#include <Eigen/Core>

namespace magsim {

/// Steady-state covariance 2 V_ij = <s_i s_j + s_j s_i> of the four-mode
/// Gaussian state.
struct CovarianceMatrix {
    Matrix8d v = Matrix8d::Zero();
    double residual = 0.0;         ///< ||A V + V A^T + D||_max / ||D||_max
    bool ill_conditioned = false;  ///< reciprocal condition estimate below 1e-12
};

/// Solves A V + V A^T = -D through the vectorized Kronecker system
/// (I (x) A + A (x) I) vec(V) = -vec(D), with one step of iterative refinement.
/// Throws StabilityError if A is not Hurwitz.
CovarianceMatrix solve_lyapunov(const DriftModel& model);

/// max |A V + V A^T + D| / max |D|.
double lyapunov_residual(const DriftModel& model, const Matrix8d& v);

struct IntegrationOptions {
    double dt = 0.0;       ///< time step in s; 0 selects 0.05 / max|lambda(A)|
    double tol = 1e-11;    ///< stop when ||dV/dt||_max < tol ||D||_max
    double t_max = 1.0;    ///< s
};

/// Integrates dV/dt = A V + V A^T + D from V(0) = I/2 with classical RK4.
/// Throws ConvergenceError when t_max elapses first or when ||V|| blows up.
CovarianceMatrix integrate_to_steady(const DriftModel& model, IntegrationOptions options = {});

/// Smallest eigenvalue of V + i Omega / 2 (Omega the n-mode symplectic form);
/// non-negative for a physical covariance matrix.
double uncertainty_margin(const Eigen::MatrixXd& v);

} // namespace magsim
