#include "magsim/entanglement.hpp"
#include "magsim/errors.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>

using namespace magsim;
using Eigen::Matrix4d;

namespace {

Matrix4d tmsv(double r) {
    const double ch = std::cosh(2.0 * r) / 2.0;
    const double sh = std::sinh(2.0 * r) / 2.0;
    Matrix4d v = Matrix4d::Zero();
    v.diagonal().setConstant(ch);
    v(0, 2) = v(2, 0) = sh;
    v(1, 3) = v(3, 1) = -sh;
    return v;
}

Matrix4d rotation(double t1, double t2) {
    Matrix4d r = Matrix4d::Zero();
    r.block<2, 2>(0, 0) << std::cos(t1), -std::sin(t1), std::sin(t1), std::cos(t1);
    r.block<2, 2>(2, 2) << std::cos(t2), -std::sin(t2), std::sin(t2), std::cos(t2);
    return r;
}

Matrix4d squeezer(double r1, double r2) {
    Matrix4d s = Matrix4d::Zero();
    s.diagonal() << std::exp(r1), std::exp(-r1), std::exp(r2), std::exp(-r2);
    return s;
}

Matrix4d beam_splitter(double t) {
    const double c = std::cos(t);
    const double s = std::sin(t);
    Matrix4d b;
    b << c, 0, s, 0,
         0, c, 0, s,
         -s, 0, c, 0,
         0, -s, 0, c;
    return b;
}

Matrix4d two_mode_squeezer(double r) {
    const double c = std::cosh(r);
    const double s = std::sinh(r);
    Matrix4d t;
    t << c, 0, s, 0,
         0, c, 0, -s,
         s, 0, c, 0,
         0, -s, 0, c;
    return t;
}

// Random bona fide two-mode covariance: S diag(n1, n1, n2, n2) S^T with n_i >= 1/2.
Matrix4d random_cm(test::Rng& rng) {
    const double pi = M_PI;
    Matrix4d s = rotation(rng.uniform(0, 2 * pi), rng.uniform(0, 2 * pi)) *
                 squeezer(rng.uniform(-1, 1), rng.uniform(-1, 1)) * beam_splitter(rng.uniform(0, pi)) *
                 two_mode_squeezer(rng.uniform(0, 1.5)) *
                 rotation(rng.uniform(0, 2 * pi), rng.uniform(0, 2 * pi));
    Matrix4d thermal = Matrix4d::Zero();
    const double n1 = 0.5 + std::abs(rng.normal()) * (rng.uniform(0, 1) < 0.3 ? 0.0 : 2.0);
    const double n2 = 0.5 + std::abs(rng.normal()) * 2.0;
    thermal.diagonal() << n1, n1, n2, n2;
    return s * thermal * s.transpose();
}

Eigen::Matrix4d omega4() {
    Matrix4d o = Matrix4d::Zero();
    o(0, 1) = o(2, 3) = 1.0;
    o(1, 0) = o(3, 2) = -1.0;
    return o;
}

} // namespace

TEST_CASE("vacuum carries no entanglement") {
    const Matrix4d v = 0.5 * Matrix4d::Identity();
    const double nu = min_symplectic_eigenvalue_pt(v);
    CHECK(nu == 0.5);
    CHECK(log_negativity(nu) == 0.0);
}

TEST_CASE("two-mode squeezed vacuum") {
    const Matrix4d v = tmsv(1.0);
    const double nu = min_symplectic_eigenvalue_pt(v);
    CHECK(std::abs(nu - std::exp(-2.0) / 2.0) < 1e-10);
    CHECK(std::abs(log_negativity(nu) - 2.0) < 1e-10);
    CHECK(std::abs(nu_minus_spectral(v) - std::exp(-2.0) / 2.0) < 1e-10);
    CHECK(log_negativity(nu, LogNegConvention::Printed) == Catch::Approx(-2.0 * std::log(nu)));
}

TEST_CASE("printed convention is nonzero on the vacuum") {
    CHECK(log_negativity(0.5, LogNegConvention::Printed) == Catch::Approx(2.0 * std::log(2.0)));
}

TEST_CASE("eigenvalue and invariant routes agree on random states") {
    test::Rng rng(51);
    for (int trial = 0; trial < 1000; ++trial) {
        const Matrix4d v = random_cm(rng);
        const double a = nu_minus_spectral(v);
        const double b = nu_minus_invariants(v);
        CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, b));
    }
}

TEST_CASE("transposing either mode gives the same eigenvalue") {
    test::Rng rng(52);
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix4d v = random_cm(rng);
        CHECK(std::abs(nu_minus_spectral(v, TransposedMode::First) -
                       nu_minus_spectral(v, TransposedMode::Second)) < 1e-10);
    }
}

TEST_CASE("local rotations leave the entanglement unchanged") {
    test::Rng rng(53);
    for (int trial = 0; trial < 200; ++trial) {
        const Matrix4d v = random_cm(rng);
        const Matrix4d r = rotation(rng.uniform(0, 2 * M_PI), rng.uniform(0, 2 * M_PI));
        const double nu = min_symplectic_eigenvalue_pt(v);
        CHECK(std::abs(min_symplectic_eigenvalue_pt(r * v * r.transpose()) - nu) < 1e-10 * std::max(1.0, nu));
    }
}

TEST_CASE("PPT criterion is consistent with the construction") {
    // Product states (no two-mode squeezing, no beam splitter) are separable;
    // every random state is bona fide.
    test::Rng rng(54);
    for (int trial = 0; trial < 300; ++trial) {
        const Matrix4d s = rotation(rng.uniform(0, 6.3), rng.uniform(0, 6.3)) *
                           squeezer(rng.uniform(-1, 1), rng.uniform(-1, 1));
        Matrix4d thermal = Matrix4d::Zero();
        thermal.diagonal() << 0.5 + rng.uniform(0, 2), 0.0, 0.5 + rng.uniform(0, 2), 0.0;
        thermal(1, 1) = thermal(0, 0);
        thermal(3, 3) = thermal(2, 2);
        const Matrix4d product = s * thermal * s.transpose();
        CHECK(log_negativity(min_symplectic_eigenvalue_pt(product)) < 1e-10);

        const Matrix4d v = random_cm(rng);
        const Eigen::Matrix4cd h = v.cast<std::complex<double>>() +
                                   std::complex<double>(0.0, 0.5) * omega4().cast<std::complex<double>>();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h, Eigen::EigenvaluesOnly);
        CHECK(es.eigenvalues().minCoeff() > -1e-9);
    }
}

TEST_CASE("mode pairs") {
    const auto& pairs = reported_pairs();
    CHECK(pairs[0].label() == "ac");
    CHECK(pairs[1].label() == "cm");
    CHECK(pairs[2].label() == "mb");
    CHECK(pairs[3].label() == "ab");
    CHECK_THROWS_AS(ModePair(Mode::Magnon, Mode::Magnon), ConfigError);
}

TEST_CASE("reduced covariance picks the pair's quadratures") {
    Matrix8d v;
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) v(i, j) = 10 * i + j;
    }
    const Matrix4d r = reduce_cm(v, ModePair(Mode::CavityA, Mode::Phonon));
    CHECK(r(0, 0) == 0.0);
    CHECK(r(1, 3) == 17.0);
    CHECK(r(2, 2) == 66.0);
    CHECK(r(3, 0) == 70.0);
}

TEST_CASE("non-physical input is rejected") {
    Matrix4d v = 0.5 * Matrix4d::Identity();
    v(0, 0) = -1.0;
    CHECK_THROWS_AS(min_symplectic_eigenvalue_pt(v), NumericalError);
    CHECK_THROWS_AS(log_negativity(0.0), NumericalError);
}

TEST_CASE("entanglement isolation sentinel") {
    CHECK(entanglement_isolation(0.1, 0.0) == std::numeric_limits<double>::infinity());
    CHECK(entanglement_isolation(0.0, 0.0) == 0.0);
}
