#include "magsim/emit.hpp"
#include "magsim/errors.hpp"
#include "magsim/scenarios.hpp"

#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

using namespace magsim;

namespace {

std::string csv_of(const SweepResult& r) {
    std::ostringstream out;
    emit(r, OutputFormat::Csv, out);
    return out.str();
}

std::vector<double> column(const SweepResult& r, std::size_t dir, std::size_t pair) {
    std::vector<double> out;
    for (const auto& p : r.points) out.push_back(p.records[dir].entanglement[pair].value_or(NAN));
    return out;
}

constexpr std::size_t kMb = 2;
constexpr std::size_t kAb = 3;

} // namespace

TEST_CASE("linear grid") {
    const auto g = linear_grid(0.0, 0.2, 201);
    REQUIRE(g.size() == 201);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == 0.2);
    CHECK(g[100] == Catch::Approx(0.1));
    CHECK(linear_grid(1.0, 2.0, 1) == std::vector<double>{1.0});
}

TEST_CASE("preset parameter sets") {
    const SweepSpec b = preset("fig2b");
    REQUIRE(b.axes.size() == 1);
    CHECK(b.axes[0].parameter == SweepParameter::ProbePower);
    CHECK(b.axes[0].values.front() == 0.0);
    CHECK(b.axes[0].values.back() == 0.2);
    CHECK(b.axes[0].values.size() == 201);
    CHECK(b.base.g_ac == Catch::Approx(0.32 * b.base.omega_b));
    CHECK(b.base.p_m == Catch::Approx(0.0945));
    CHECK(b.base.delta_m_tilde == Catch::Approx(0.9 * b.base.omega_b));
    CHECK(b.base.delta_a == Catch::Approx(-b.base.omega_b));
    CHECK(b.base.omega_b == Catch::Approx(2 * M_PI * 10e6));

    const SweepSpec a = preset("fig2a");
    CHECK(a.base.g_ac == Catch::Approx(a.base.omega_b));

    const SweepSpec f3 = preset("fig3");
    for (Observable o : {Observable::E_ac, Observable::E_cm, Observable::E_mb, Observable::E_ab}) {
        CHECK(f3.outputs.count(o) == 1);
    }
    REQUIRE(f3.fixed_coupling);
    CHECK(*f3.fixed_coupling == Catch::Approx(2 * M_PI * 2.5e6));
    CHECK(f3.base.kappa_b == Catch::Approx(2 * M_PI * 100.0));
    CHECK(f3.base.temperature == 0.02);
    CHECK(f3.axes[0].values.front() == Catch::Approx(-2e7));
    CHECK(f3.axes[1].values.back() == Catch::Approx(2e7));

    const SweepSpec f4 = preset("fig4");
    CHECK(f4.base.g_mb == Catch::Approx(2 * M_PI * 0.3));
    CHECK_FALSE(f4.fixed_coupling);
    CHECK(f4.directions == std::vector<Direction>{Direction::Forward, Direction::Backward});

    const SweepSpec f5 = preset("fig5");
    CHECK(f5.axes[0].parameter == SweepParameter::Temperature);
    CHECK(f5.axes[0].values.back() == 0.3);
    CHECK(f5.base.p_a == Catch::Approx(0.5));

    CHECK_THROWS_AS(preset("fig9"), ConfigError);
}

TEST_CASE("sweep validation") {
    SweepSpec s = preset("fig2b");
    s.axes[0].values = {0.0, 0.1, 0.05};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = preset("fig2b");
    s.directions = {Direction::Forward};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = preset("fig4");
    s.axes.clear();
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = preset("fig4");
    s.outputs.clear();
    CHECK_THROWS_AS(s.validate(), ConfigError);
}

TEST_CASE("impedance-matched preset has zero isolation everywhere") {
    const SweepResult r = run_sweep(preset("fig2a"));
    REQUIRE(r.points.size() == 201);
    for (const auto& p : r.points) {
        REQUIRE(p.t_iso_db);
        CHECK(std::abs(*p.t_iso_db) < 1e-9);
    }
    CHECK(r.points[0].records[0].status == PointStatus::Undefined);
    CHECK_FALSE(r.points[0].records[0].transmission);
}

TEST_CASE("refinement adds the transmission zeros") {
    const SweepSpec spec = preset("fig2b");
    const SweepResult r = run_sweep(spec);
    CHECK(r.points.size() > 201);
    double best = 0.0;
    double min12 = 1.0;
    double min21 = 1.0;
    for (std::size_t i = 1; i < r.points.size(); ++i) {
        CHECK(r.points[i].coords[0] > r.points[i - 1].coords[0]);
        best = std::max(best, std::abs(*r.points[i].t_iso_db));
        min12 = std::min(min12, *r.points[i].records[0].transmission);
        min21 = std::min(min21, *r.points[i].records[1].transmission);
    }
    CHECK(best > 70.0);
    CHECK(min12 < 1e-3);
    CHECK(min21 < 1e-3);
}

TEST_CASE("fig3 entanglement map") {
    const SweepResult r = run_sweep(preset("fig3"));
    REQUIRE(r.points.size() == 101 * 101);
    for (const auto& p : r.points) {
        for (const auto& e : p.records[0].entanglement) {
            if (e) CHECK(*e >= 0.0);
        }
    }
    // Delta_a = Delta_c = -omega_b sits at index 25 of each axis.
    const SweepPoint& centre = r.points[25 * 101 + 25];
    REQUIRE(centre.coords[0] == Catch::Approx(-1e7));
    REQUIRE(centre.coords[1] == Catch::Approx(-1e7));
    for (const auto& e : centre.records[0].entanglement) {
        REQUIRE(e);
        CHECK(*e > 0.0);
    }
}

TEST_CASE("unstable points stay in the result without entanglement values") {
    SweepSpec s = preset("fig3");
    s.axes[0].values = linear_grid(-2e7, 2e7, 21);
    s.axes[1].values = linear_grid(-2e7, 2e7, 21);
    s.fixed_coupling = 2 * M_PI * 20e6;
    const SweepResult r = run_sweep(s);
    CHECK(r.points.size() == 21 * 21);
    int unstable = 0;
    for (const auto& p : r.points) {
        const DirectionRecord& rec = p.records[0];
        if (rec.status == PointStatus::Unstable) {
            ++unstable;
            CHECK_FALSE(rec.stable());
            for (const auto& e : rec.entanglement) CHECK_FALSE(e);
        }
    }
    CHECK(unstable > 0);
}

TEST_CASE("fig4 subsystem entanglement is directional") {
    const SweepResult r = run_sweep(preset("fig4"));
    const auto mb12 = column(r, 0, kMb);
    const auto mb21 = column(r, 1, kMb);
    const auto ab12 = column(r, 0, kAb);
    const auto ab21 = column(r, 1, kAb);
    bool differs = false;
    bool cutoff = false;
    for (std::size_t i = 0; i < r.points.size(); ++i) {
        if (test::rel_diff(mb12[i], mb21[i]) > 0.1) differs = true;
        if (ab21[i] == 0.0 && ab12[i] > 0.0) cutoff = true;
    }
    CHECK(differs);
    CHECK(cutoff);
}

TEST_CASE("fig5 entanglement decays with temperature") {
    const SweepResult r = run_sweep(preset("fig5"));
    for (std::size_t dir = 0; dir < 2; ++dir) {
        for (std::size_t pair : {kMb, kAb}) {
            const auto e = column(r, dir, pair);
            const auto peak = std::max_element(e.begin(), e.end()) - e.begin();
            for (std::size_t i = peak + 1; i < e.size(); ++i) CHECK(e[i] <= e[i - 1]);
        }
        // E_mb survives 100 mK and vanishes within the grid.
        const auto mb = column(r, dir, kMb);
        std::size_t first_zero = mb.size();
        for (std::size_t i = 0; i < mb.size(); ++i) {
            if (mb[i] == 0.0) {
                first_zero = i;
                break;
            }
        }
        REQUIRE(first_zero < mb.size());
        CHECK(r.points[first_zero].coords[0] >= 0.1);
    }
}

TEST_CASE("results do not depend on the worker count") {
    for (const std::string& name : {"fig2b", "fig4", "fig5"}) {
        const SweepSpec s = preset(name);
        CHECK(csv_of(run_sweep(s, 1)) == csv_of(run_sweep(s, 8)));
    }
}

TEST_CASE("self-consistent mean field runs the same pipeline") {
    ScenarioDefinition def = preset_definition("fig4");
    def.axes[0].values = linear_grid(0.0, 0.6, 7);
    Conventions c;
    c.mean_field = MeanFieldMethod::SelfConsistent;
    const SweepResult sc = run_sweep(build_sweep(def, c));
    const SweepResult cf = run_sweep(build_sweep(def));
    for (std::size_t i = 0; i < sc.points.size(); ++i) {
        for (std::size_t d = 0; d < 2; ++d) {
            const DirectionRecord& rec = sc.points[i].records[d];
            REQUIRE(rec.status == PointStatus::Ok);
            // The magnetostrictive shift moves the magnon by a few percent of
            // omega_b, which changes the coupling by a comparable fraction.
            CHECK(test::rel_diff(std::abs(*rec.coupling), std::abs(*cf.points[i].records[d].coupling)) < 0.3);
            CHECK(rec.entanglement[kMb]);
        }
    }
}

TEST_CASE("non-converging points are flagged, not thrown") {
    ScenarioDefinition def = preset_definition("fig4");
    def.axes[0].values = {1.0, 2.0};
    Conventions c;
    c.mean_field = MeanFieldMethod::SelfConsistent;
    const SweepResult r = run_sweep(build_sweep(def, c));
    for (const auto& p : r.points) {
        for (const auto& rec : p.records) {
            if (rec.status != PointStatus::Ok) {
                CHECK(rec.status == PointStatus::NotConverged);
                CHECK_FALSE(rec.message.empty());
                for (const auto& e : rec.entanglement) CHECK_FALSE(e);
            }
        }
    }
}

TEST_CASE("observable and axis names round trip") {
    for (Observable o : {Observable::T12, Observable::Tiso, Observable::E_ab, Observable::E_mb_iso,
                         Observable::Margin}) {
        CHECK(parse_observable(observable_name(o)) == o);
    }
    for (SweepParameter p : {SweepParameter::ProbePower, SweepParameter::Temperature,
                             SweepParameter::DeltaC, SweepParameter::CavityCoupling}) {
        CHECK(parse_axis(axis_column(p)) == p);
    }
    CHECK_THROWS_AS(parse_observable("E_xx"), ConfigError);
}
