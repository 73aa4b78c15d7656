#pragma once

// Run configuration: parsing from key=value text or JSON, validation against
// the analytic parameter rules, and canonical emission.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace persist::cli {

enum class Experiment {
    exponents,
    density_table,
    mellin_table,
    simulate_theta,
    hitting_place,
    validate_all,
    quad_check,
};

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);  // throws ConfigError
bool is_stochastic(Experiment e);
const std::vector<std::string>& experiment_names();

enum class Format { csv, json };

struct RunConfig {
    double alpha = 2.0;
    double rho = 0.5;
    Experiment experiment = Experiment::exponents;

    // simulation
    double x0 = 0.0;
    double y0 = -1.0;
    double h = 1e-3;
    double t_max = 1e3;
    double rel_step = 0.01;
    std::uint64_t n = 200000;
    std::optional<std::uint64_t> seed;

    // tables and estimators
    double coord = -1.0;
    std::vector<double> s_grid = {0.25, 0.5, 0.75};
    std::vector<double> z_grid = {0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0};
    std::vector<double> nu_grid = {0.8, 0.9};
    std::vector<double> windows = {100.0, 30.0, 10.0};  // t_lo = t_max / w
    std::uint64_t grid_points = 40;
    std::uint64_t bootstrap = 500;
    std::uint64_t hill_k = 2000;

    // execution
    std::uint64_t threads = 0;  // 0: OpenMP default
    std::string out = "out";
    Format format = Format::csv;

    bool operator==(const RunConfig&) const = default;
};

/// Parses JSON (an object, or a manifest with a "config" member) or
/// key=value lines. Unknown keys and bad values throw ConfigError naming the
/// key. The result is validated.
RunConfig parse_config(const std::string& text);

/// Applies one key=value override on top of `cfg` and revalidates.
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Throws ConfigError if the settings are inconsistent with the experiment.
void validate(const RunConfig& cfg);

nlohmann::ordered_json to_json(const RunConfig& cfg);
/// Canonical key=value text; parse_config(emit(cfg)) == cfg.
std::string emit(const RunConfig& cfg);

/// FNV-1a hash (hex) of the canonical text without execution-only keys
/// (threads, out), so it identifies the results rather than the run.
std::string run_id(const RunConfig& cfg);

}  // namespace persist::cli
