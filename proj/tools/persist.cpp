#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "persist/cli/config.hpp"
#include "persist/cli/experiments.hpp"
#include "persist/error.hpp"

namespace {

struct Flags {
    std::string config;
    std::vector<std::string> sets;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> threads;
};

void add_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--config", f.config, "config file (key=value, JSON, or a manifest.json)");
    cmd->add_option("--set", f.sets, "override, key=value (repeatable)");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--seed", f.seed, "master seed (u64)");
    cmd->add_option("--threads", f.threads, "OpenMP threads (results do not depend on it)");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw persist::ConfigError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

persist::cli::RunConfig build(const Flags& f, const std::optional<std::string>& experiment) {
    using namespace persist::cli;
    RunConfig cfg;
    if (!f.config.empty()) {
        std::string text = read_file(f.config);
        if (experiment) {
            // the subcommand fixes the experiment; the file may omit it
            cfg = parse_config(text.find('{') == std::string::npos
                                   ? "experiment=" + *experiment + "\n" + text
                                   : text);
        } else {
            cfg = parse_config(text);
        }
    } else if (!experiment) {
        throw persist::ConfigError("'run' needs --config");
    }
    if (experiment) cfg.experiment = experiment_from_string(*experiment);
    for (const auto& s : f.sets) apply_override(cfg, s);
    if (!f.out.empty()) cfg.out = f.out;
    if (f.seed) cfg.seed = *f.seed;
    if (f.threads) cfg.threads = *f.threads;
    validate(cfg);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    using namespace persist::cli;
    CLI::App app{"Integrated stable processes: closed forms, quadrature and Monte Carlo checks"};
    app.require_subcommand(1);

    Flags flags;
    std::optional<std::string> chosen;
    auto* run_cmd = app.add_subcommand("run", "run the experiment named in --config");
    add_flags(run_cmd, flags);
    for (const auto& name : experiment_names()) {
        auto* cmd = app.add_subcommand(name, "run experiment " + name);
        add_flags(cmd, flags);
        cmd->callback([&chosen, name] { chosen = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : exit_config;
    }

    RunConfig cfg;
    try {
        cfg = build(flags, chosen);
    } catch (const persist::ConfigError& e) {
        std::cerr << "config error: " << e.what() << std::endl;
        return exit_config;
    }
    return persist::cli::run(cfg, std::cerr);
}
