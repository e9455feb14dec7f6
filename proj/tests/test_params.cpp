#include "magsim/constants.hpp"
#include "magsim/errors.hpp"
#include "magsim/params.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace magsim;
using Catch::Matchers::WithinRel;

namespace {

RawParams minimal_raw() {
    RawParams r;
    r.set("omega_b_hz", 10e6);
    r.set("omega_d_hz", 10e9);
    r.set("delta_a_hz", -10e6);
    r.set("delta_c_hz", -10e6);
    r.set("delta_m_tilde_hz", 9e6);
    r.set("g_ac_hz", 3.2e6);
    r.set("g_cm_hz", 3.2e6);
    r.set("g_mb_hz", 0.3);
    r.set("kappa_hz", 1e6);
    r.set("kappa_m_hz", 1e6);
    r.set("kappa_b_hz", 100.0);
    return r;
}

} // namespace

TEST_CASE("ordinary frequencies are converted to rad/s") {
    const SystemParams p = build_params(minimal_raw());
    CHECK_THAT(p.omega_b, WithinRel(constants::two_pi * 10e6, 1e-15));
    CHECK_THAT(p.kappa_a, WithinRel(constants::two_pi * 1e6, 1e-15));
    CHECK_THAT(p.kappa_c, WithinRel(constants::two_pi * 1e6, 1e-15));
    CHECK_THAT(p.delta_a, WithinRel(-constants::two_pi * 10e6, 1e-15));
    CHECK(p.delta_m == p.delta_m_tilde);
}

TEST_CASE("angular flag takes frequencies verbatim") {
    RawParams r = minimal_raw();
    r.angular = true;
    r.set("kappa_b_hz", 628.0);
    const SystemParams p = build_params(r);
    CHECK(p.kappa_b == 628.0);
    CHECK(p.omega_b == 10e6);
}

TEST_CASE("ratios to omega_b") {
    RawParams r = minimal_raw();
    r.set("delta_a_over_omega_b", -1.0);
    r.set("g_ac_over_omega_b", 0.32);
    CHECK_FALSE(r.contains("delta_a_hz"));
    const SystemParams p = build_params(r);
    CHECK_THAT(p.delta_a, WithinRel(-p.omega_b, 1e-15));
    CHECK_THAT(p.g_ac, WithinRel(0.32 * p.omega_b, 1e-15));
}

TEST_CASE("bias field sets the magnon frequency") {
    RawParams r = minimal_raw();
    r.set("b0_oe", 3500.0);
    r.set("delta_m_tilde_hz", 9e6);
    r.set("delta_m_hz", 9.8e9 - 10e9);
    const SystemParams p = build_params(r);
    REQUIRE(p.omega_m);
    CHECK_THAT(*p.omega_m, WithinRel(constants::two_pi * 9.8e9, 1e-12));
}

TEST_CASE("drive frequency is inferred from a mode frequency and its detuning") {
    RawParams r = minimal_raw();
    r.set("omega_a_hz", 10e9);
    std::map<std::string, double> copy = r.entries();
    RawParams without;
    for (const auto& [k, v] : copy) {
        if (k != "omega_d_hz") without.set(k, v);
    }
    const SystemParams p = build_params(without);
    CHECK_THAT(p.omega_d, WithinRel(constants::two_pi * (10e9 + 10e6), 1e-15));
}

TEST_CASE("inconsistent mode, drive and detuning triple is rejected") {
    RawParams r = minimal_raw();
    r.set("omega_a_hz", 10e9);
    r.set("omega_d_hz", 10e9);
    CHECK_THROWS_AS(build_params(r), ConfigError);
    r.set("omega_d_hz", 10e9 + 10e6);
    CHECK_NOTHROW(build_params(r));
}

TEST_CASE("missing and negative fields") {
    RawParams r = minimal_raw();
    RawParams no_gcm;
    for (const auto& [k, v] : r.entries()) {
        if (k != "g_cm_hz") no_gcm.set(k, v);
    }
    CHECK_THROWS_WITH(build_params(no_gcm), Catch::Matchers::ContainsSubstring("g_cm_hz"));
    r.set("kappa_m_hz", -1.0);
    CHECK_THROWS_AS(build_params(r), ConfigError);
}

TEST_CASE("power keys are milliwatts") {
    RawParams r = minimal_raw();
    r.set("p_mw", 200.0);
    r.set("p_m_mw", 94.5);
    const SystemParams p = build_params(r);
    CHECK_THAT(p.p_a, WithinRel(0.2, 1e-15));
    CHECK_THAT(p.p_c, WithinRel(0.2, 1e-15));
    CHECK_THAT(p.p_m, WithinRel(0.0945, 1e-15));
}

TEST_CASE("drive amplitude arithmetic") {
    const double kappa = constants::two_pi * 1e6;
    const double omega_d = constants::two_pi * 10e9;
    const double e = drive_amplitude(1.85e-3, kappa, omega_d);
    // sqrt(kappa * P / (hbar omega_d)) evaluated independently
    const double expected = std::sqrt(kappa * 1.85e-3 / (1.054571817e-34 * omega_d));
    CHECK_THAT(e, WithinRel(expected, 1e-14));
    CHECK_THAT(e, WithinRel(4.2e13, 0.02));
    CHECK(drive_amplitude(0.0, kappa, omega_d) == 0.0);
    CHECK_THROWS_AS(drive_amplitude(1.0, kappa, 0.0), ConfigError);
}

TEST_CASE("thermal occupancy") {
    const double wb = constants::two_pi * 10e6;
    // kT / hbar w - 1/2 for kT >> hbar w
    const auto classical = [wb](double t) { return 1.380649e-23 * t / (1.054571817e-34 * wb) - 0.5; };
    CHECK_THAT(thermal_occupancy(wb, 0.02), WithinRel(classical(0.02), 1e-3));
    CHECK_THAT(thermal_occupancy(wb, 0.02), WithinRel(41.2, 1e-3));
    CHECK_THAT(thermal_occupancy(wb, 0.1), WithinRel(207.9, 1e-3));
    CHECK(thermal_occupancy(wb, 0.0) == 0.0);
}

TEST_CASE("drive direction selects the probed cavity") {
    SystemParams p = build_params(minimal_raw());
    p.p_a = 0.01;
    p.p_c = 0.01;
    p.p_m = 0.0945;
    const DriveConfig f = make_drive(p, Direction::Forward);
    const DriveConfig b = make_drive(p, Direction::Backward);
    const DriveConfig m = make_drive(p, Direction::MagnonOnly);
    CHECK(f.e_a > 0.0);
    CHECK(f.e_c == 0.0);
    CHECK(b.e_a == 0.0);
    CHECK(b.e_c > 0.0);
    CHECK(m.e_a == 0.0);
    CHECK(m.e_c == 0.0);
    CHECK(f.e_m == b.e_m);
    CHECK(f.e_m == m.e_m);
}

TEST_CASE("direction names round trip") {
    for (Direction d : {Direction::Forward, Direction::Backward, Direction::MagnonOnly}) {
        CHECK(parse_direction(direction_suffix(d)) == d);
        CHECK(parse_direction(direction_name(d)) == d);
    }
    CHECK_THROWS_AS(parse_direction("sideways"), ConfigError);
}
