#include "magsim/entanglement.hpp"

#include "magsim/decibel.hpp"
#include "magsim/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace magsim {

namespace {

int mode_index(Mode m) { return static_cast<int>(m); }

Eigen::Matrix4d two_mode_symplectic_form() {
    Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

void require_positive_definite(const Eigen::Matrix4d& v4) {
    if (!v4.allFinite()) throw NumericalError("two-mode covariance has non-finite entries");
    Eigen::LLT<Eigen::Matrix4d> llt(v4);
    if (llt.info() != Eigen::Success) {
        throw NumericalError("two-mode covariance is not positive definite");
    }
}

} // namespace

std::string_view mode_label(Mode mode) {
    switch (mode) {
    case Mode::CavityA: return "a";
    case Mode::CavityC: return "c";
    case Mode::Magnon: return "m";
    case Mode::Phonon: return "b";
    }
    return "?";
}

ModePair::ModePair(Mode first, Mode second) : first_(first), second_(second) {
    if (first == second) throw ConfigError("mode pair needs two distinct modes");
}

std::string ModePair::label() const {
    return std::string(mode_label(first_)) + std::string(mode_label(second_));
}

const std::array<ModePair, 4>& reported_pairs() {
    static const std::array<ModePair, 4> pairs = {
        ModePair(Mode::CavityA, Mode::CavityC),
        ModePair(Mode::CavityC, Mode::Magnon),
        ModePair(Mode::Magnon, Mode::Phonon),
        ModePair(Mode::CavityA, Mode::Phonon),
    };
    return pairs;
}

Eigen::Matrix4d reduce_cm(const Matrix8d& v, ModePair pair) {
    const int idx[4] = {2 * mode_index(pair.first()), 2 * mode_index(pair.first()) + 1,
                        2 * mode_index(pair.second()), 2 * mode_index(pair.second()) + 1};
    Eigen::Matrix4d r;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) r(i, j) = v(idx[i], idx[j]);
    }
    return r;
}

Eigen::Matrix4d partial_transpose(const Eigen::Matrix4d& v4, TransposedMode side) {
    Eigen::Vector4d flip = Eigen::Vector4d::Ones();
    flip(side == TransposedMode::First ? 1 : 3) = -1.0;
    return flip.asDiagonal() * v4 * flip.asDiagonal();
}

double nu_minus_spectral(const Eigen::Matrix4d& v4, TransposedMode side) {
    const Eigen::Matrix4d m = two_mode_symplectic_form() * partial_transpose(v4, side);
    Eigen::EigenSolver<Eigen::Matrix4d> solver(m, false);
    if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue solver failed");
    return solver.eigenvalues().imag().cwiseAbs().minCoeff();
}

double nu_minus_invariants(const Eigen::Matrix4d& v4) {
    // Extended precision: det V is O(1) while strongly squeezed states have
    // entries of order 1e3, so the double-precision determinant loses ~8 digits.
    using Matrix4l = Eigen::Matrix<long double, 4, 4>;
    const Matrix4l v = v4.cast<long double>();
    const long double det_a = v.topLeftCorner<2, 2>().determinant();
    const long double det_b = v.bottomRightCorner<2, 2>().determinant();
    const long double det_c = v.topRightCorner<2, 2>().determinant();
    const long double det_v = v.partialPivLu().determinant();
    const long double sigma = det_a + det_b - 2.0L * det_c;
    const long double disc = std::max(0.0L, sigma * sigma - 4.0L * det_v);
    const long double denom = sigma + std::sqrt(disc);
    if (!(denom > 0.0L)) throw NumericalError("degenerate two-mode covariance");
    return static_cast<double>(std::sqrt(2.0L * det_v / denom));
}

double min_symplectic_eigenvalue_pt(const Eigen::Matrix4d& v4, TransposedMode side) {
    require_positive_definite(v4);
    const double spectral = nu_minus_spectral(v4, side);
    const double invariant = nu_minus_invariants(v4);
    if (std::abs(spectral - invariant) > 1e-10 * std::max(1.0, invariant)) {
        throw NumericalError("symplectic eigenvalue routes disagree");
    }
    return invariant;
}

double log_negativity(double nu_minus, LogNegConvention convention) {
    if (!(nu_minus > 0.0)) throw NumericalError("symplectic eigenvalue must be positive");
    const double e = convention == LogNegConvention::Normalized ? -std::log(2.0 * nu_minus)
                                                                : -2.0 * std::log(nu_minus);
    return std::max(0.0, e);
}

double entanglement_isolation(double e12, double e21) { return ratio_db(e12, e21); }

EntanglementReport entanglement(const CovarianceMatrix& cm, ModePair pair, Direction direction,
                                LogNegConvention convention) {
    const double nu = min_symplectic_eigenvalue_pt(reduce_cm(cm, pair));
    return {pair, nu, log_negativity(nu, convention), direction};
}

} // namespace magsim
