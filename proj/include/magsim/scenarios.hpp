#pragma once

#include "magsim/entanglement.hpp"
#include "magsim/fluctuation.hpp"
#include "magsim/mean_field.hpp"
#include "magsim/params.hpp"
#include "magsim/validation.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace magsim {

/// Observables a sweep can report. Declaration order is column order.
enum class Observable {
    T12, T21, Tiso,
    E_ac, E_cm, E_mb, E_ab,
    E_ac_iso, E_cm_iso, E_mb_iso, E_ab_iso,
    Margin,
};

std::string_view observable_name(Observable o);
Observable parse_observable(std::string_view name);
bool is_entanglement(Observable o);
bool is_entanglement_isolation(Observable o);
/// Index into reported_pairs() for E_xx and E_xx_iso observables.
std::size_t pair_index(Observable o);

/// Quantities a sweep axis can vary. Axis values are in the column unit.
enum class SweepParameter {
    ProbePower,       ///< P_watts, sets P_a = P_c
    MagnonPower,      ///< P_m_watts
    Temperature,      ///< T_kelvin
    DeltaA,           ///< delta_a_hz (ordinary frequency)
    DeltaC,           ///< delta_c_hz
    DeltaMTilde,      ///< delta_m_tilde_hz
    CavityCoupling,   ///< g_ac_hz
};

std::string_view axis_column(SweepParameter p);
SweepParameter parse_axis(std::string_view name);
void apply_axis(SystemParams& params, SweepParameter p, double value);

struct Axis {
    SweepParameter parameter;
    std::vector<double> values;
};

/// n evenly spaced points from lo to hi inclusive.
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

struct Conventions {
    MeanFieldMethod mean_field = MeanFieldMethod::ClosedForm;
    LogNegConvention logneg = LogNegConvention::Normalized;
    /// Reads a fixed coupling value as G_mb / 2pi (true) or as G_mb in rad/s.
    bool gmb_2pi = true;
};

/// A scenario before unit conversion: raw parameters plus grid structure.
struct ScenarioDefinition {
    std::string name;
    RawParams raw;
    std::vector<Axis> axes;
    std::vector<Direction> directions;
    std::set<Observable> outputs;
    /// Hold G_mb fixed at this value instead of deriving it from the drives.
    std::optional<double> fixed_gmb;
    /// 1-D sweeps only: add the minimizers of T12 / T21 between grid points.
    bool refine_transmission_minima = false;
};

struct SweepSpec {
    std::string name;
    SystemParams base;
    std::vector<Axis> axes;
    std::vector<Direction> directions;
    std::set<Observable> outputs;
    MeanFieldMethod mean_field = MeanFieldMethod::ClosedForm;
    LogNegConvention logneg = LogNegConvention::Normalized;
    std::optional<double> fixed_coupling; ///< rad/s
    bool refine_transmission_minima = false;

    /// Throws ConfigError: 1 or 2 axes, strictly monotone grids, non-empty
    /// outputs, and both probe directions for any isolation observable.
    void validate() const;
    bool needs_entanglement() const;
    bool needs_transmission() const;
};

const std::vector<std::string>& preset_names();
/// Throws ConfigError for an unknown name.
ScenarioDefinition preset_definition(std::string_view name);
SweepSpec build_sweep(const ScenarioDefinition& definition, const Conventions& conventions = {});
inline SweepSpec preset(std::string_view name) { return build_sweep(preset_definition(name)); }

enum class PointStatus { Ok, Undefined, Singular, Unstable, NotConverged, NumericalFailure };
std::string_view status_name(PointStatus s);

/// Pipeline output for one grid point and one probe direction.
struct DirectionRecord {
    Direction direction = Direction::MagnonOnly;
    PointStatus status = PointStatus::Ok;
    std::string message;
    std::optional<double> transmission;
    std::optional<double> coupling; ///< G_mb used, rad/s
    std::optional<StabilityReport> stability;
    std::array<std::optional<double>, 4> entanglement; ///< reported_pairs() order
    std::optional<ValidationReport> validation;

    bool stable() const { return stability && stability->stable; }
};

struct SweepPoint {
    std::vector<double> coords;
    std::vector<DirectionRecord> records; ///< spec.directions order
    std::optional<double> t_iso_db;
};

struct SweepResult {
    std::string name;
    std::vector<SweepParameter> axes;
    std::vector<Direction> directions;
    std::set<Observable> outputs;
    std::vector<SweepPoint> points; ///< grid order (first axis outermost)
};

/// Full pipeline at one coordinate tuple. Per-point failures are recorded in
/// the records' status, never thrown.
SweepPoint evaluate_point(const SweepSpec& spec, const std::vector<double>& coords);

/// Evaluates every grid point with `parallelism` workers; output order and
/// content do not depend on the worker count.
SweepResult run_sweep(const SweepSpec& spec, unsigned parallelism = 1);

} // namespace magsim
