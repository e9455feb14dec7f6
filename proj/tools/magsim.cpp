#include "magsim/config.hpp"
#include "magsim/emit.hpp"
#include "magsim/errors.hpp"
#include "magsim/mean_field.hpp"
#include "magsim/validation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace magsim;

unsigned resolve_threads(std::optional<unsigned> flag, std::optional<unsigned> from_config) {
    if (flag) return *flag;
    if (const char* env = std::getenv("MAGSIM_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
        throw ConfigError(std::string("MAGSIM_THREADS must be a positive integer, got '") + env + "'");
    }
    return from_config.value_or(1);
}

void write_result(const SweepResult& result, OutputFormat format, const std::optional<std::string>& path) {
    if (!path) {
        emit(result, format, std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(*path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open output file '" + *path + "'");
    emit(result, format, out);
    out.close();
    if (!out) throw Error("failed writing '" + *path + "'");
}

void print_check(const RunConfig& cfg) {
    const SweepSpec spec = cfg.spec();
    const SystemParams& p = spec.base;
    Table t;
    t.columns = {"direction",     "E_a_rad_s",  "E_c_rad_s",     "E_m_rad_s",
                 "m_occupancy",   "m_occupancy_simplified", "m_occupancy_simplified_ordinary",
                 "occupancy_bound", "occupancy_ok", "kerr_term_rad_s", "drive_sum_rad_s",
                 "kerr_ratio",    "kerr_verdict", "overall"};
    for (Direction d : spec.directions) {
        const DriveConfig drive = make_drive(p, d);
        std::vector<Cell> row{std::string(direction_name(d)), drive.e_a, drive.e_c, drive.e_m};
        try {
            const SteadyState s = spec.mean_field == MeanFieldMethod::ClosedForm
                                      ? steady_state_closed_form(p, drive)
                                      : steady_state_self_consistent(p, drive);
            const ValidationReport v = validate(p, s, drive);
            row.insert(row.end(),
                       {v.m_occupancy, v.m_occupancy_simplified,
                        simplified_magnon_occupancy(p, drive, FrequencyUnits::Ordinary),
                        v.occupancy_bound, std::string(v.occupancy_ok ? "true" : "false"), v.kerr_term,
                        v.drive_sum, v.kerr_ratio, std::string(verdict_name(v.kerr_verdict)),
                        std::string(verdict_name(v.overall()))});
        } catch (const Error& e) {
            row.resize(t.columns.size());
            row.back() = std::string("error: ") + e.what();
        }
        t.rows.push_back(std::move(row));
    }
    emit(t, OutputFormat::Csv, std::cout);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonreciprocal transmission and entanglement in a cavity magnomechanical system"};
    app.require_subcommand(1);

    std::optional<std::string> out_path;
    std::optional<std::string> format_text;
    std::optional<unsigned> threads;
    const auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "Output file (default: standard output)");
        cmd->add_option("--format", format_text, "csv or json");
        cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    };

    std::string preset_name;
    auto* run = app.add_subcommand("run", "Run a named figure scenario");
    run->add_option("preset", preset_name, "Preset name")->required();
    add_output_flags(run);

    std::string config_path;
    auto* sweep = app.add_subcommand("sweep", "Run a sweep described by a config file");
    sweep->add_option("--config", config_path, "Config file")->required();
    add_output_flags(sweep);

    auto* check = app.add_subcommand("check", "Print the physical validation report");
    check->add_option("--config", config_path, "Config file")->required();

    auto* list = app.add_subcommand("list", "List presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "magsim: " << e.what() << '\n';
        return 1;
    }

    try {
        if (*list) {
            for (const auto& name : preset_names()) std::cout << name << '\n';
            return 0;
        }
        if (*check) {
            print_check(load_config(config_path));
            return 0;
        }

        RunConfig cfg;
        if (*run) {
            cfg.scenario = preset_name;
            cfg.definition = preset_definition(preset_name);
        } else {
            cfg = load_config(config_path);
        }
        const OutputFormat format = format_text ? parse_format(*format_text) : cfg.format;
        const auto path = out_path ? out_path : cfg.output;
        const SweepSpec spec = cfg.spec();
        const SweepResult result = run_sweep(spec, resolve_threads(threads, cfg.threads));
        write_result(result, format, path);
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "magsim: config error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "magsim: " << e.what() << '\n';
        return 2;
    }
}
