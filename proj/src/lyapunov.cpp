#include "magsim/lyapunov.hpp"

#include "magsim/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <string>

namespace magsim {

namespace {

constexpr int kDim = 8;
constexpr int kVec = kDim * kDim;
using KronMatrix = Eigen::Matrix<double, kVec, kVec>;
using KronVector = Eigen::Matrix<double, kVec, 1>;

KronMatrix kronecker_sum(const Matrix8d& a) {
    // Column-major vec: vec(A V) = (I (x) A) vec V, vec(V A^T) = (A (x) I) vec V.
    KronMatrix k = KronMatrix::Zero();
    for (int j = 0; j < kDim; ++j) {
        for (int i = 0; i < kDim; ++i) {
            const int row = i + kDim * j;
            for (int m = 0; m < kDim; ++m) {
                k(row, m + kDim * j) += a(i, m);
                k(row, i + kDim * m) += a(j, m);
            }
        }
    }
    return k;
}

Matrix8d lyapunov_rhs(const Matrix8d& a, const Matrix8d& d, const Matrix8d& v) {
    return a * v + v * a.transpose() + d;
}

} // namespace

double lyapunov_residual(const DriftModel& model, const Matrix8d& v) {
    const double d_max = model.d_matrix.cwiseAbs().maxCoeff();
    const double r = lyapunov_rhs(model.a_matrix, model.d_matrix, v).cwiseAbs().maxCoeff();
    return d_max > 0.0 ? r / d_max : r;
}

CovarianceMatrix solve_lyapunov(const DriftModel& model) {
    const StabilityReport report = stability(model);
    if (!report.stable) {
        throw StabilityError("drift matrix is not stable (max Re lambda = " +
                             std::to_string(-report.margin) + "), no steady state");
    }

    const KronMatrix k = kronecker_sum(model.a_matrix);
    const Eigen::PartialPivLU<KronMatrix> lu(k);

    Matrix8d minus_d = -model.d_matrix;
    const Eigen::Map<const KronVector> rhs(minus_d.data());
    KronVector x = lu.solve(rhs);
    const KronVector r = rhs - k * x;
    x += lu.solve(r);

    CovarianceMatrix cm;
    cm.v = Eigen::Map<const Matrix8d>(x.data());
    cm.v = 0.5 * (cm.v + cm.v.transpose()).eval();
    cm.residual = lyapunov_residual(model, cm.v);
    cm.ill_conditioned = lu.rcond() < 1e-12;
    return cm;
}

CovarianceMatrix integrate_to_steady(const DriftModel& model, IntegrationOptions options) {
    const Matrix8d& a = model.a_matrix;
    const Matrix8d& d = model.d_matrix;
    if (!a.allFinite() || !d.allFinite()) throw NumericalError("non-finite drift or diffusion");

    double dt = options.dt;
    if (!(dt > 0.0)) {
        Eigen::EigenSolver<Matrix8d> solver(a, false);
        const double spectral = solver.eigenvalues().cwiseAbs().maxCoeff();
        if (!(spectral > 0.0)) throw NumericalError("drift matrix has no dynamics");
        dt = 0.05 / spectral;
    }

    const double d_max = d.cwiseAbs().maxCoeff();
    const double threshold = options.tol * (d_max > 0.0 ? d_max : 1.0);
    const double blowup = 1e15;

    Matrix8d v = 0.5 * Matrix8d::Identity();
    double t = 0.0;
    double rate = 0.0;
    while (t < options.t_max) {
        const Matrix8d k1 = lyapunov_rhs(a, d, v);
        rate = k1.cwiseAbs().maxCoeff();
        if (rate < threshold) {
            CovarianceMatrix cm;
            cm.v = 0.5 * (v + v.transpose());
            cm.residual = lyapunov_residual(model, cm.v);
            return cm;
        }
        const Matrix8d k2 = lyapunov_rhs(a, d, v + 0.5 * dt * k1);
        const Matrix8d k3 = lyapunov_rhs(a, d, v + 0.5 * dt * k2);
        const Matrix8d k4 = lyapunov_rhs(a, d, v + dt * k3);
        v += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += dt;

        const double size = v.cwiseAbs().maxCoeff();
        if (!std::isfinite(size) || size > blowup) {
            throw ConvergenceError("covariance diverges during time integration", rate);
        }
    }
    throw ConvergenceError("time integration reached t_max before steady state", rate);
}

double uncertainty_margin(const Eigen::MatrixXd& v) {
    const Eigen::Index n = v.rows();
    if (n != v.cols() || n % 2 != 0) throw NumericalError("covariance must be square of even size");
    Eigen::MatrixXcd h = v.cast<std::complex<double>>();
    for (Eigen::Index k = 0; k < n; k += 2) {
        h(k, k + 1) += std::complex<double>(0.0, 0.5);
        h(k + 1, k) -= std::complex<double>(0.0, 0.5);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

} // namespace magsim
