#include "magsim/fluctuation.hpp"

#include "magsim/errors.hpp"

#include <Eigen/Eigenvalues>

#include <limits>

namespace magsim {

DriftModel drift_matrix(const SystemParams& p, const EffectiveCoupling& coupling, double n_b) {
    const double g = coupling.value;
    DriftModel m;
    Matrix8d& a = m.a_matrix;
    // X_a, Y_a
    a(0, 0) = -p.kappa_a; a(0, 1) = p.delta_a; a(0, 3) = p.g_ac;
    a(1, 0) = -p.delta_a; a(1, 1) = -p.kappa_a; a(1, 2) = -p.g_ac;
    // X_c, Y_c
    a(2, 1) = p.g_ac; a(2, 2) = -p.kappa_c; a(2, 3) = p.delta_c; a(2, 5) = p.g_cm;
    a(3, 0) = -p.g_ac; a(3, 2) = -p.delta_c; a(3, 3) = -p.kappa_c; a(3, 4) = -p.g_cm;
    // X_m, Y_m
    a(4, 3) = p.g_cm; a(4, 4) = -p.kappa_m; a(4, 5) = p.delta_m_tilde; a(4, 6) = -g;
    a(5, 2) = -p.g_cm; a(5, 4) = -p.delta_m_tilde; a(5, 5) = -p.kappa_m;
    // X_b, Y_b
    a(6, 6) = -p.kappa_b; a(6, 7) = p.omega_b;
    a(7, 5) = g; a(7, 6) = -p.omega_b; a(7, 7) = -p.kappa_b;

    const double phonon = (2.0 * n_b + 1.0) * p.kappa_b;
    m.d_matrix.diagonal() << p.kappa_a, p.kappa_a, p.kappa_c, p.kappa_c,
                             p.kappa_m, p.kappa_m, phonon, phonon;
    m.g_mb_used = g;
    return m;
}

StabilityReport stability(const Matrix8d& a) {
    if (!a.allFinite()) throw NumericalError("drift matrix has non-finite entries");
    Eigen::EigenSolver<Matrix8d> solver(a, false);
    if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
    const double max_re = solver.eigenvalues().real().maxCoeff();
    return {max_re < 0.0, -max_re};
}

StabilityReport stability(const DriftModel& model) { return stability(model.a_matrix); }

} // namespace magsim
