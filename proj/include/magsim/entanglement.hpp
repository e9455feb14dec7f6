#pragma once

#include "magsim/lyapunov.hpp"
#include "magsim/params.hpp"

#include <Eigen/Core>

#include <array>
#include <string>
#include <string_view>

namespace magsim {

enum class Mode { CavityA, CavityC, Magnon, Phonon };

/// Single-letter label: a, c, m, b.
std::string_view mode_label(Mode mode);

/// Two distinct modes; the reduced covariance keeps (first, second) order.
class ModePair {
public:
    ModePair(Mode first, Mode second);
    Mode first() const { return first_; }
    Mode second() const { return second_; }
    /// "ac", "cm", "mb", "ab", ...
    std::string label() const;
    bool operator==(const ModePair&) const = default;

private:
    Mode first_;
    Mode second_;
};

/// The four pairs reported in every sweep, in column order.
const std::array<ModePair, 4>& reported_pairs();

/// Which mode has its momentum quadrature flipped by the partial transpose.
enum class TransposedMode { First, Second };

/// max[0, -ln(2 nu)] (vacuum variance 1/2) or the literal max[0, -2 ln nu].
enum class LogNegConvention { Normalized, Printed };

/// 4x4 principal submatrix over (X_first, Y_first, X_second, Y_second).
Eigen::Matrix4d reduce_cm(const Matrix8d& v, ModePair pair);
inline Eigen::Matrix4d reduce_cm(const CovarianceMatrix& cm, ModePair pair) {
    return reduce_cm(cm.v, pair);
}

/// P v4 P with P = diag(1, -1, 1, 1) or diag(1, 1, 1, -1).
Eigen::Matrix4d partial_transpose(const Eigen::Matrix4d& v4, TransposedMode side);

/// Smallest |Im lambda| over the spectrum of Omega * (P v4 P).
double nu_minus_spectral(const Eigen::Matrix4d& v4, TransposedMode side = TransposedMode::Second);

/// Invariant form: nu^2 = (S - sqrt(S^2 - 4 det V)) / 2 with
/// S = det A + det B - 2 det C, evaluated as 2 det V / (S + sqrt(S^2 - 4 det V)) in long double.
double nu_minus_invariants(const Eigen::Matrix4d& v4);

/// Smallest symplectic eigenvalue of the partially transposed two-mode
/// covariance. Computes both routes above and throws NumericalError if they
/// disagree by more than 1e-10 (relative above 1). Throws NumericalError on
/// a non-positive-definite input.
double min_symplectic_eigenvalue_pt(const Eigen::Matrix4d& v4,
                                    TransposedMode side = TransposedMode::Second);

double log_negativity(double nu_minus, LogNegConvention convention = LogNegConvention::Normalized);

/// 20 log10(e12 / e21): +inf when only e21 vanishes, 0 when both do.
double entanglement_isolation(double e12, double e21);

struct EntanglementReport {
    ModePair pair;
    double nu_minus = 0.0;
    double e_n = 0.0;
    Direction direction = Direction::MagnonOnly;
};

EntanglementReport entanglement(const CovarianceMatrix& cm, ModePair pair, Direction direction,
                                LogNegConvention convention = LogNegConvention::Normalized);

} // namespace magsim
