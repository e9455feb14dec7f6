#pragma once

#include "magsim/scenarios.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace magsim {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(std::string_view text);
std::string_view format_name(OutputFormat f);

/// A validated run request: a scenario definition (preset plus overrides, or
/// fully custom) together with conventions and output settings.
struct RunConfig {
    std::string scenario;
    ScenarioDefinition definition;
    Conventions conventions;
    std::optional<std::string> output;
    OutputFormat format = OutputFormat::Csv;
    std::optional<unsigned> threads;

    SweepSpec spec() const { return build_sweep(definition, conventions); }
};

/// Parses a flat `key = value` document (TOML subset: numbers, quoted
/// strings, booleans, `#` comments).
///
/// Recognized keys besides the SystemParams keys:
///   scenario                 preset name or "custom"
///   output, format, threads
///   logneg_convention        normalized | printed
///   gmb_2pi_interpretation   bool
///   meanfield_mode           closed_form | self_consistent
///   angular                  bool, *_hz keys given in rad/s
///   axis1, axis2             axis column name, with _min, _max, _points
///   directions, outputs      comma-separated lists
///   fixed_gmb_hz, gmb_source (fixed | derived), refine_minima
///
/// Throws ConfigError with line and column on malformed input, and naming the
/// key on schema violations.
RunConfig parse_config(std::string_view text);

/// Reads and parses a file. A missing or unreadable file is a ConfigError.
RunConfig load_config(const std::string& path);

} // namespace magsim
