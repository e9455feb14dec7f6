#include "magsim/scenarios.hpp"

#include "magsim/constants.hpp"
#include "magsim/errors.hpp"
#include "magsim/lyapunov.hpp"
#include "magsim/transmission.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>

namespace magsim {

namespace {

struct ObservableInfo {
    Observable observable;
    std::string_view name;
};

constexpr ObservableInfo kObservables[] = {
    {Observable::T12, "T12"},           {Observable::T21, "T21"},
    {Observable::Tiso, "Tiso"},         {Observable::E_ac, "E_ac"},
    {Observable::E_cm, "E_cm"},         {Observable::E_mb, "E_mb"},
    {Observable::E_ab, "E_ab"},         {Observable::E_ac_iso, "E_ac_iso"},
    {Observable::E_cm_iso, "E_cm_iso"}, {Observable::E_mb_iso, "E_mb_iso"},
    {Observable::E_ab_iso, "E_ab_iso"}, {Observable::Margin, "margin"},
};

struct AxisInfo {
    SweepParameter parameter;
    std::string_view column;
};

constexpr AxisInfo kAxes[] = {
    {SweepParameter::ProbePower, "P_watts"},
    {SweepParameter::MagnonPower, "P_m_watts"},
    {SweepParameter::Temperature, "T_kelvin"},
    {SweepParameter::DeltaA, "delta_a_hz"},
    {SweepParameter::DeltaC, "delta_c_hz"},
    {SweepParameter::DeltaMTilde, "delta_m_tilde_hz"},
    {SweepParameter::CavityCoupling, "g_ac_hz"},
};

void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t)>& body) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < n; i = next++) body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

RawParams base_raw(double g_ac_over_omega_b) {
    RawParams raw;
    raw.set("omega_a_hz", 10e9);
    raw.set("omega_b_hz", 10e6);
    raw.set("delta_a_over_omega_b", -1.0);
    raw.set("delta_c_over_omega_b", -1.0);
    raw.set("delta_m_tilde_over_omega_b", 0.9);
    raw.set("kappa_hz", 1e6);
    raw.set("kappa_m_hz", 1e6);
    raw.set("kappa_b_hz", 100.0);
    raw.set("g_cm_hz", 3.2e6);
    raw.set("g_ac_over_omega_b", g_ac_over_omega_b);
    raw.set("g_mb_hz", 0.3);
    raw.set("p_m_mw", 94.5);
    raw.set("temperature_k", 0.02);
    return raw;
}

ScenarioDefinition fig2(std::string name, double g_ac_over_omega_b, bool refine) {
    ScenarioDefinition d;
    d.name = std::move(name);
    d.raw = base_raw(g_ac_over_omega_b);
    d.axes = {{SweepParameter::ProbePower, linear_grid(0.0, 0.2, 201)}};
    d.directions = {Direction::Forward, Direction::Backward};
    d.outputs = {Observable::T12, Observable::T21, Observable::Tiso};
    d.refine_transmission_minima = refine;
    return d;
}

ScenarioDefinition fig3() {
    ScenarioDefinition d;
    d.name = "fig3";
    d.raw = base_raw(0.32);
    d.axes = {{SweepParameter::DeltaA, linear_grid(-20e6, 20e6, 101)},
              {SweepParameter::DeltaC, linear_grid(-20e6, 20e6, 101)}};
    d.directions = {Direction::MagnonOnly};
    d.outputs = {Observable::E_ac, Observable::E_cm, Observable::E_mb, Observable::E_ab,
                 Observable::Margin};
    d.fixed_gmb = 2.5e6;
    return d;
}

ScenarioDefinition fig4() {
    ScenarioDefinition d;
    d.name = "fig4";
    d.raw = base_raw(0.32);
    d.axes = {{SweepParameter::ProbePower, linear_grid(0.0, 2.0, 201)}};
    d.directions = {Direction::Forward, Direction::Backward};
    d.outputs = {Observable::E_mb, Observable::E_ab, Observable::E_mb_iso, Observable::E_ab_iso,
                 Observable::Margin};
    return d;
}

ScenarioDefinition fig5() {
    ScenarioDefinition d;
    d.name = "fig5";
    d.raw = base_raw(0.32);
    d.raw.set("p_mw", 500.0);
    d.axes = {{SweepParameter::Temperature, linear_grid(0.0, 0.3, 201)}};
    d.directions = {Direction::Forward, Direction::Backward};
    d.outputs = {Observable::E_mb, Observable::E_ab, Observable::E_mb_iso, Observable::E_ab_iso,
                 Observable::Margin};
    return d;
}

std::size_t grid_size(const std::vector<Axis>& axes) {
    std::size_t n = 1;
    for (const auto& a : axes) n *= a.values.size();
    return n;
}

std::vector<double> grid_coords(const std::vector<Axis>& axes, std::size_t k) {
    std::vector<double> coords(axes.size());
    for (std::size_t i = axes.size(); i-- > 0;) {
        const std::size_t n = axes[i].values.size();
        coords[i] = axes[i].values[k % n];
        k /= n;
    }
    return coords;
}

SystemParams params_at(const SweepSpec& spec, const std::vector<double>& coords) {
    SystemParams p = spec.base;
    for (std::size_t i = 0; i < spec.axes.size(); ++i) apply_axis(p, spec.axes[i].parameter, coords[i]);
    return p;
}

SteadyState mean_field(const SweepSpec& spec, const SystemParams& p, const DriveConfig& drive) {
    return spec.mean_field == MeanFieldMethod::ClosedForm ? steady_state_closed_form(p, drive)
                                                          : steady_state_self_consistent(p, drive);
}

void fail(DirectionRecord& r, PointStatus status, const std::exception& e) {
    if (r.status == PointStatus::Ok) {
        r.status = status;
        r.message = e.what();
    }
}

DirectionRecord evaluate_direction(const SweepSpec& spec, const SystemParams& p, Direction dir) {
    DirectionRecord r;
    r.direction = dir;
    const DriveConfig drive = make_drive(p, dir);

    if (spec.needs_transmission() && dir != Direction::MagnonOnly) {
        const double power = dir == Direction::Forward ? p.p_a : p.p_c;
        try {
            r.transmission = transmission(p, dir, power, spec.mean_field);
        } catch (const UndefinedError& e) {
            fail(r, PointStatus::Undefined, e);
        } catch (const SingularityError& e) {
            fail(r, PointStatus::Singular, e);
        } catch (const ConvergenceError& e) {
            fail(r, PointStatus::NotConverged, e);
        }
    }

    if (!spec.needs_entanglement()) return r;

    std::optional<SteadyState> state;
    try {
        state = mean_field(spec, p, drive);
        r.validation = validate(p, *state, drive);
    } catch (const SingularityError& e) {
        if (!spec.fixed_coupling) fail(r, PointStatus::Singular, e);
    } catch (const ConvergenceError& e) {
        if (!spec.fixed_coupling) fail(r, PointStatus::NotConverged, e);
    }

    EffectiveCoupling coupling{0.0, dir};
    if (spec.fixed_coupling) {
        coupling.value = *spec.fixed_coupling;
    } else if (!state) {
        return r;
    } else if (spec.mean_field == MeanFieldMethod::ClosedForm) {
        coupling = effective_coupling(p, drive);
    } else {
        coupling = effective_coupling(*state, p.g_mb, dir);
    }
    r.coupling = coupling.value;

    try {
        const DriftModel model = drift_matrix(p, coupling, thermal_occupancy(p.omega_b, p.temperature));
        r.stability = stability(model);
        if (!r.stability->stable) {
            r.status = PointStatus::Unstable;
            r.message = "drift matrix not stable";
            return r;
        }
        const CovarianceMatrix cm = solve_lyapunov(model);
        const auto& pairs = reported_pairs();
        for (Observable o : spec.outputs) {
            if (!is_entanglement(o)) continue;
            const std::size_t i = pair_index(o);
            r.entanglement[i] = entanglement(cm, pairs[i], dir, spec.logneg).e_n;
        }
    } catch (const StabilityError& e) {
        r.status = PointStatus::Unstable;
        r.message = e.what();
    } catch (const NumericalError& e) {
        fail(r, PointStatus::NumericalFailure, e);
    }
    return r;
}

// Transmission as a function of a single axis coordinate, for refinement.
double transmission_at(const SweepSpec& spec, Direction dir, double x) {
    const SystemParams p = params_at(spec, {x});
    const double power = dir == Direction::Forward ? p.p_a : p.p_c;
    return transmission(p, dir, power, spec.mean_field);
}

std::vector<double> refined_abscissae(const SweepSpec& spec, const std::vector<SweepPoint>& points) {
    std::vector<double> extra;
    for (std::size_t d = 0; d < spec.directions.size(); ++d) {
        const Direction dir = spec.directions[d];
        if (dir == Direction::MagnonOnly) continue;
        for (std::size_t i = 1; i + 1 < points.size(); ++i) {
            const auto& lo = points[i - 1].records[d].transmission;
            const auto& mid = points[i].records[d].transmission;
            const auto& hi = points[i + 1].records[d].transmission;
            if (!lo || !mid || !hi || !(*mid < *lo && *mid < *hi)) continue;
            const double a = points[i - 1].coords[0];
            const double b = points[i + 1].coords[0];
            std::uintmax_t max_iter = 200;
            try {
                const auto best = boost::math::tools::brent_find_minima(
                    [&](double x) { return transmission_at(spec, dir, x); }, a, b,
                    std::numeric_limits<double>::digits, max_iter);
                if (best.first > a && best.first < b) extra.push_back(best.first);
            } catch (const Error&) {
                // leave the bracket unrefined
            }
        }
    }
    return extra;
}

} // namespace

std::string_view observable_name(Observable o) {
    for (const auto& info : kObservables) {
        if (info.observable == o) return info.name;
    }
    return "?";
}

Observable parse_observable(std::string_view name) {
    for (const auto& info : kObservables) {
        if (info.name == name) return info.observable;
    }
    throw ConfigError("unknown observable: " + std::string(name));
}

bool is_entanglement(Observable o) { return o >= Observable::E_ac && o <= Observable::E_ab; }

bool is_entanglement_isolation(Observable o) {
    return o >= Observable::E_ac_iso && o <= Observable::E_ab_iso;
}

std::size_t pair_index(Observable o) {
    if (is_entanglement(o)) return static_cast<std::size_t>(o) - static_cast<std::size_t>(Observable::E_ac);
    if (is_entanglement_isolation(o)) {
        return static_cast<std::size_t>(o) - static_cast<std::size_t>(Observable::E_ac_iso);
    }
    throw ConfigError("observable has no mode pair: " + std::string(observable_name(o)));
}

std::string_view axis_column(SweepParameter p) {
    for (const auto& info : kAxes) {
        if (info.parameter == p) return info.column;
    }
    return "?";
}

SweepParameter parse_axis(std::string_view name) {
    for (const auto& info : kAxes) {
        if (info.column == name) return info.parameter;
    }
    throw ConfigError("unknown sweep axis: " + std::string(name));
}

void apply_axis(SystemParams& p, SweepParameter parameter, double value) {
    switch (parameter) {
    case SweepParameter::ProbePower:
        p.p_a = value;
        p.p_c = value;
        break;
    case SweepParameter::MagnonPower: p.p_m = value; break;
    case SweepParameter::Temperature: p.temperature = value; break;
    case SweepParameter::DeltaA: p.delta_a = constants::two_pi * value; break;
    case SweepParameter::DeltaC: p.delta_c = constants::two_pi * value; break;
    case SweepParameter::DeltaMTilde: p.delta_m_tilde = constants::two_pi * value; break;
    case SweepParameter::CavityCoupling: p.g_ac = constants::two_pi * value; break;
    }
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (n == 0) return {};
    if (n == 1) return {lo};
    std::vector<double> g(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + static_cast<double>(i) * step;
    g.back() = hi;
    return g;
}

void SweepSpec::validate() const {
    if (axes.empty() || axes.size() > 2) throw ConfigError("a sweep needs one or two axes");
    for (const auto& axis : axes) {
        if (axis.values.empty()) throw ConfigError("empty grid for " + std::string(axis_column(axis.parameter)));
        const bool up = axis.values.size() < 2 || axis.values[1] > axis.values[0];
        for (std::size_t i = 1; i < axis.values.size(); ++i) {
            const bool ok = up ? axis.values[i] > axis.values[i - 1] : axis.values[i] < axis.values[i - 1];
            if (!ok) throw ConfigError("grid for " + std::string(axis_column(axis.parameter)) +
                                       " is not strictly monotone");
        }
    }
    if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
        throw ConfigError("both axes vary the same parameter");
    }
    if (outputs.empty()) throw ConfigError("a sweep needs at least one observable");
    if (directions.empty()) throw ConfigError("a sweep needs at least one direction");

    const auto has = [&](Direction d) {
        return std::find(directions.begin(), directions.end(), d) != directions.end();
    };
    for (Observable o : outputs) {
        const bool both = o == Observable::Tiso || is_entanglement_isolation(o);
        if (both && !(has(Direction::Forward) && has(Direction::Backward))) {
            throw ConfigError(std::string(observable_name(o)) + " needs forward and backward directions");
        }
        if (o == Observable::T12 && !has(Direction::Forward)) throw ConfigError("T12 needs the forward direction");
        if (o == Observable::T21 && !has(Direction::Backward)) throw ConfigError("T21 needs the backward direction");
    }
    if (refine_transmission_minima && axes.size() != 1) {
        throw ConfigError("transmission refinement needs a single axis");
    }
}

bool SweepSpec::needs_entanglement() const {
    return std::any_of(outputs.begin(), outputs.end(), [](Observable o) {
        return is_entanglement(o) || is_entanglement_isolation(o) || o == Observable::Margin;
    });
}

bool SweepSpec::needs_transmission() const {
    return outputs.count(Observable::T12) || outputs.count(Observable::T21) ||
           outputs.count(Observable::Tiso);
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"fig2a", "fig2b", "fig2c", "fig2d",
                                                   "fig3",  "fig4",  "fig5"};
    return names;
}

ScenarioDefinition preset_definition(std::string_view name) {
    if (name == "fig2a") return fig2("fig2a", 1.0, false);
    if (name == "fig2b") return fig2("fig2b", 0.32, true);
    if (name == "fig2c") return fig2("fig2c", 1.0, false);
    if (name == "fig2d") return fig2("fig2d", 0.32, true);
    if (name == "fig3") return fig3();
    if (name == "fig4") return fig4();
    if (name == "fig5") return fig5();
    throw ConfigError("unknown preset: " + std::string(name));
}

SweepSpec build_sweep(const ScenarioDefinition& def, const Conventions& conventions) {
    SweepSpec spec;
    spec.name = def.name;
    spec.base = build_params(def.raw);
    spec.axes = def.axes;
    spec.directions = def.directions;
    spec.outputs = def.outputs;
    spec.mean_field = conventions.mean_field;
    spec.logneg = conventions.logneg;
    if (def.fixed_gmb) {
        spec.fixed_coupling = conventions.gmb_2pi ? constants::two_pi * *def.fixed_gmb : *def.fixed_gmb;
    }
    spec.refine_transmission_minima = def.refine_transmission_minima;
    spec.validate();
    return spec;
}

std::string_view status_name(PointStatus s) {
    switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::Undefined: return "undefined";
    case PointStatus::Singular: return "singular";
    case PointStatus::Unstable: return "unstable";
    case PointStatus::NotConverged: return "nonconverged";
    case PointStatus::NumericalFailure: return "numerical";
    }
    return "?";
}

SweepPoint evaluate_point(const SweepSpec& spec, const std::vector<double>& coords) {
    SweepPoint point;
    point.coords = coords;
    const SystemParams p = params_at(spec, coords);
    for (Direction d : spec.directions) point.records.push_back(evaluate_direction(spec, p, d));

    if (spec.outputs.count(Observable::Tiso)) {
        try {
            point.t_iso_db = isolation_db(p, p.p_a, spec.mean_field);
        } catch (const Error&) {
            // left empty; the per-direction records carry the reason
        }
    }
    return point;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned parallelism) {
    spec.validate();
    SweepResult result;
    result.name = spec.name;
    for (const auto& a : spec.axes) result.axes.push_back(a.parameter);
    result.directions = spec.directions;
    result.outputs = spec.outputs;

    const std::size_t n = grid_size(spec.axes);
    result.points.resize(n);
    parallel_for(n, parallelism, [&](std::size_t k) {
        result.points[k] = evaluate_point(spec, grid_coords(spec.axes, k));
    });

    if (spec.refine_transmission_minima && spec.needs_transmission()) {
        std::vector<double> extra = refined_abscissae(spec, result.points);
        std::sort(extra.begin(), extra.end());
        extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
        std::vector<SweepPoint> added(extra.size());
        parallel_for(extra.size(), parallelism, [&](std::size_t k) {
            added[k] = evaluate_point(spec, {extra[k]});
        });
        for (auto& pt : added) result.points.push_back(std::move(pt));
        const bool ascending = spec.axes[0].values.size() < 2 ||
                               spec.axes[0].values[1] > spec.axes[0].values[0];
        std::stable_sort(result.points.begin(), result.points.end(),
                         [ascending](const SweepPoint& a, const SweepPoint& b) {
                             return ascending ? a.coords[0] < b.coords[0] : a.coords[0] > b.coords[0];
                         });
    }
    return result;
}

} // namespace magsim
