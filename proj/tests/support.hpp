#pragma once

#include "magsim/params.hpp"
#include "magsim/scenarios.hpp"

#include <random>

namespace magsim::test {

/// Seeded generator shared by the property tests.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// Base parameters of a preset at probe power `power_w`.
inline SystemParams preset_params(const std::string& name, double power_w = 0.0) {
    SystemParams p = preset(name).base;
    p.p_a = power_w;
    p.p_c = power_w;
    return p;
}

inline double rel_diff(double a, double b) {
    const double s = std::max(std::abs(a), std::abs(b));
    return s > 0.0 ? std::abs(a - b) / s : 0.0;
}

} // namespace magsim::test
