#include "persist/cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "persist/analytic.hpp"
#include "persist/error.hpp"

namespace persist::cli {

namespace {

using Json = nlohmann::ordered_json;

const std::vector<std::pair<Experiment, std::string>> kExperiments = {
    {Experiment::exponents, "exponents"},
    {Experiment::density_table, "density-table"},
    {Experiment::mellin_table, "mellin-table"},
    {Experiment::simulate_theta, "simulate-theta"},
    {Experiment::hitting_place, "hitting-place"},
    {Experiment::validate_all, "validate-all"},
    {Experiment::quad_check, "quad-check"},
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
        throw ConfigError("key '" + key + "': expected a finite number, got '" + text + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(t.c_str(), &end, 10);
    if (t.empty() || t[0] == '-' || end != t.c_str() + t.size() || errno == ERANGE) {
        throw ConfigError("key '" + key + "': expected an unsigned integer, got '" + text + "'");
    }
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, item));
    if (out.empty()) throw ConfigError("key '" + key + "': expected a comma-separated list of numbers");
    return out;
}

std::string format_list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_double(v[i]);
    }
    return s;
}

struct Field {
    std::string name;
    std::function<void(RunConfig&, const std::string&)> set;
    std::function<std::string(const RunConfig&)> get;
    std::function<Json(const RunConfig&)> json;
    bool execution_only = false;
};

Field real(const std::string& name, double RunConfig::*m) {
    return {name, [=](RunConfig& c, const std::string& v) { c.*m = parse_double(name, v); },
            [=](const RunConfig& c) { return format_double(c.*m); },
            [=](const RunConfig& c) { return Json(c.*m); }};
}

Field count(const std::string& name, std::uint64_t RunConfig::*m, bool execution_only = false) {
    return {name, [=](RunConfig& c, const std::string& v) { c.*m = parse_u64(name, v); },
            [=](const RunConfig& c) { return std::to_string(c.*m); },
            [=](const RunConfig& c) { return Json(c.*m); }, execution_only};
}

Field list(const std::string& name, std::vector<double> RunConfig::*m) {
    return {name, [=](RunConfig& c, const std::string& v) { c.*m = parse_list(name, v); },
            [=](const RunConfig& c) { return format_list(c.*m); },
            [=](const RunConfig& c) { return Json(c.*m); }};
}

const std::vector<Field>& fields() {
    static const std::vector<Field> f = {
        {"experiment",
         [](RunConfig& c, const std::string& v) { c.experiment = experiment_from_string(trim(v)); },
         [](const RunConfig& c) { return to_string(c.experiment); },
         [](const RunConfig& c) { return Json(to_string(c.experiment)); }},
        real("alpha", &RunConfig::alpha),
        real("rho", &RunConfig::rho),
        real("x0", &RunConfig::x0),
        real("y0", &RunConfig::y0),
        real("h", &RunConfig::h),
        real("t_max", &RunConfig::t_max),
        real("rel_step", &RunConfig::rel_step),
        count("n", &RunConfig::n),
        {"seed",
         [](RunConfig& c, const std::string& v) {
             if (trim(v) == "none") c.seed.reset();
             else c.seed = parse_u64("seed", v);
         },
         [](const RunConfig& c) { return c.seed ? std::to_string(*c.seed) : std::string("none"); },
         [](const RunConfig& c) { return c.seed ? Json(*c.seed) : Json(nullptr); }},
        real("coord", &RunConfig::coord),
        list("s_grid", &RunConfig::s_grid),
        list("z_grid", &RunConfig::z_grid),
        list("nu_grid", &RunConfig::nu_grid),
        list("windows", &RunConfig::windows),
        count("grid_points", &RunConfig::grid_points),
        count("bootstrap", &RunConfig::bootstrap),
        count("hill_k", &RunConfig::hill_k),
        {"format",
         [](RunConfig& c, const std::string& v) {
             const auto t = trim(v);
             if (t == "csv") c.format = Format::csv;
             else if (t == "json") c.format = Format::json;
             else throw ConfigError("key 'format': expected csv or json, got '" + v + "'");
         },
         [](const RunConfig& c) { return std::string(c.format == Format::csv ? "csv" : "json"); },
         [](const RunConfig& c) { return Json(c.format == Format::csv ? "csv" : "json"); }},
        count("threads", &RunConfig::threads, true),
        {"out", [](RunConfig& c, const std::string& v) { c.out = trim(v); },
         [](const RunConfig& c) { return c.out; }, [](const RunConfig& c) { return Json(c.out); }, true},
    };
    return f;
}

const Field& field(const std::string& key) {
    for (const auto& f : fields()) {
        if (f.name == key) return f;
    }
    std::string known;
    for (const auto& f : fields()) known += (known.empty() ? "" : ", ") + f.name;
    throw ConfigError("unknown key '" + key + "' (known keys: " + known + ")");
}

std::string json_value_text(const std::string& key, const Json& v) {
    if (v.is_null()) {
        if (key == "seed") return "none";
        throw ConfigError("key '" + key + "': null is not allowed");
    }
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_array()) {
        std::string s;
        for (const auto& x : v) {
            if (!x.is_number()) throw ConfigError("key '" + key + "': list entries must be numbers");
            s += (s.empty() ? "" : ",") + format_double(x.get<double>());
        }
        return s;
    }
    throw ConfigError("key '" + key + "': unsupported JSON value");
}

bool is_json(const std::string& text) {
    const auto t = trim(text);
    return !t.empty() && t.front() == '{';
}

RunConfig parse_json(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON config: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("JSON config must be an object");
    // a run manifest carries its config under "config"
    if (doc.contains("config") && doc.contains("run_id")) doc = doc["config"];
    RunConfig cfg;
    bool has_experiment = false;
    for (const auto& [key, value] : doc.items()) {
        field(key).set(cfg, json_value_text(key, value));
        has_experiment |= key == "experiment";
    }
    if (!has_experiment) throw ConfigError("missing key 'experiment'");
    return cfg;
}

RunConfig parse_lines(const std::string& text) {
    RunConfig cfg;
    bool has_experiment = false;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key=value, got '" + line + "'");
        }
        const auto key = trim(line.substr(0, eq));
        field(key).set(cfg, line.substr(eq + 1));
        has_experiment |= key == "experiment";
    }
    if (!has_experiment) throw ConfigError("missing key 'experiment'");
    return cfg;
}

}  // namespace

std::string to_string(Experiment e) {
    for (const auto& [k, name] : kExperiments) {
        if (k == e) return name;
    }
    return "unknown";
}

Experiment experiment_from_string(const std::string& name) {
    for (const auto& [k, n] : kExperiments) {
        if (n == name) return k;
    }
    throw ConfigError("key 'experiment': unknown experiment '" + name + "'");
}

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [k, n] : kExperiments) v.push_back(n);
        return v;
    }();
    return names;
}

bool is_stochastic(Experiment e) {
    return e == Experiment::simulate_theta || e == Experiment::hitting_place ||
           e == Experiment::validate_all;
}

void validate(const RunConfig& cfg) {
    StableParams p = [&] {
        try {
            return validate_params(cfg.alpha, cfg.rho);
        } catch (const ParameterError& e) {
            throw ConfigError(std::string("keys 'alpha'/'rho': ") + e.what());
        }
    }();
    const auto d = derived_exponents(p);
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    if (is_stochastic(cfg.experiment)) {
        require(cfg.seed.has_value(), "key 'seed' is mandatory for experiment " + to_string(cfg.experiment));
    }
    require(cfg.h > 0.0, "key 'h' must be positive");
    require(cfg.t_max >= cfg.h, "key 't_max' must be at least h");
    require(cfg.rel_step >= 0.0, "key 'rel_step' must be nonnegative");
    require(cfg.n >= 1, "key 'n' must be at least 1");
    require(cfg.grid_points >= 8, "key 'grid_points' must be at least 8");
    require(cfg.bootstrap >= 2, "key 'bootstrap' must be at least 2");
    require(cfg.hill_k >= 10, "key 'hill_k' must be at least 10");
    require(!cfg.out.empty(), "key 'out' must not be empty");

    switch (cfg.experiment) {
        case Experiment::density_table:
            require(cfg.coord < 0.0, "key 'coord' must be negative");
            for (double z : cfg.z_grid) require(z >= 0.0, "key 'z_grid' entries must be nonnegative");
            break;
        case Experiment::mellin_table: {
            require(cfg.coord < 0.0, "key 'coord' must be negative");
            const double pole = 1.0 / (1.0 - d.gamma);
            for (double s : cfg.s_grid) {
                require(std::abs(s) < pole, "key 's_grid': entry " + format_double(s) +
                                                " outside |s| < 1/(1-gamma) = " + format_double(pole));
            }
            break;
        }
        case Experiment::simulate_theta:
            require(!(cfg.x0 == 0.0 && cfg.y0 == 0.0), "keys 'x0'/'y0': start (0,0) is not supported");
            for (double w : cfg.windows) require(w > 1.0, "key 'windows' entries must exceed 1");
            break;
        case Experiment::hitting_place:
            require((cfg.x0 == 0.0) != (cfg.y0 == 0.0),
                    "keys 'x0'/'y0': hitting-place needs a start on exactly one axis");
            require(cfg.x0 < 0.0 || cfg.y0 < 0.0,
                    "keys 'x0'/'y0': hitting-place needs a negative start coordinate");
            require(cfg.hill_k < cfg.n, "key 'hill_k' must be below n");
            for (double s : cfg.s_grid) {
                require(s - 1.0 < d.chi, "key 's_grid': entry " + format_double(s) +
                                             " needs s < 1 + chi = " + format_double(1.0 + d.chi));
                require(std::abs(s) < 1.0 / (1.0 - d.gamma), "key 's_grid': entry outside the Mellin strip");
            }
            break;
        case Experiment::quad_check:
            for (double nu : cfg.nu_grid) {
                require(nu > cfg.alpha / (cfg.alpha + 1.0) && nu < 1.0,
                        "key 'nu_grid': entry " + format_double(nu) + " outside (alpha/(alpha+1), 1)");
            }
            break;
        default: break;
    }
}

RunConfig parse_config(const std::string& text) {
    RunConfig cfg = is_json(text) ? parse_json(text) : parse_lines(text);
    validate(cfg);
    return cfg;
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
    field(trim(assignment.substr(0, eq))).set(cfg, assignment.substr(eq + 1));
}

nlohmann::ordered_json to_json(const RunConfig& cfg) {
    Json j = Json::object();
    for (const auto& f : fields()) j[f.name] = f.json(cfg);
    return j;
}

std::string emit(const RunConfig& cfg) {
    std::string s;
    for (const auto& f : fields()) s += f.name + "=" + f.get(cfg) + "\n";
    return s;
}

std::string run_id(const RunConfig& cfg) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& f : fields()) {
        if (f.execution_only) continue;
        for (unsigned char ch : f.name + "=" + f.get(cfg) + "\n") {
            h ^= ch;
            h *= 0x100000001b3ULL;
        }
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace persist::cli
