#pragma once

// Experiment execution and output: result tables, CSV/JSON writers and the
// run manifest.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "persist/cli/config.hpp"

namespace persist::cli {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_validation = 1,
    exit_config = 2,
    exit_accuracy = 3,
};

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct RunResult {
    Table table;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    bool validated = false;  // the experiment carries pass/fail checks
    bool passed = true;
};

/// Runs the experiment in memory. `log` receives progress lines.
RunResult execute(const RunConfig& cfg, std::ostream& log);

/// CSV with a leading "# manifest: manifest.json run_id=..." line and
/// 17-significant-digit numbers.
std::string format_csv(const Table& t, const std::string& run_id);
nlohmann::ordered_json format_json(const Table& t, const std::string& run_id);

/// execute() plus results.{csv,json} and manifest.json under cfg.out.
/// Maps failures onto the exit-code contract.
int run(const RunConfig& cfg, std::ostream& log);

}  // namespace persist::cli
