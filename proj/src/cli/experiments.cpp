#include "persist/cli/experiments.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "persist/acceptance.hpp"
#include "persist/analytic.hpp"
#include "persist/error.hpp"
#include "persist/quadrature.hpp"
#include "persist/simulate.hpp"
#include "persist/stats.hpp"

namespace persist::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kFresnelTol = 1e-8;
constexpr double kAxisTol = 1e-6;

StableParams params_of(const RunConfig& cfg) { return validate_params(cfg.alpha, cfg.rho); }

PathConfig path_config(const RunConfig& cfg) {
    PathConfig p;
    p.params = params_of(cfg);
    p.x0 = cfg.x0;
    p.y0 = cfg.y0;
    p.h = cfg.h;
    p.t_max = cfg.t_max;
    p.rel_step = cfg.rel_step;
    p.seed = *cfg.seed;
    return p;
}

RunResult exponents(const RunConfig& cfg) {
    const auto p = params_of(cfg);
    const auto d = derived_exponents(p);
    RunResult r;
    r.table.columns = {"alpha", "rho", "beta", "kappa", "gamma", "chi", "theta",
                       "delta", "eta", "sigma", "s_ar", "c_ar", "lower_tail"};
    r.table.rows.push_back({p.alpha(), p.rho(), p.beta(), p.kappa(), d.gamma, d.chi, d.theta, d.delta,
                            d.eta, d.sigma, d.s_ar, d.c_ar, d.lower_tail});
    r.summary["theta"] = d.theta;
    r.summary["chi"] = d.chi;
    return r;
}

RunResult density_table(const RunConfig& cfg) {
    const auto p = params_of(cfg);
    const auto d = derived_exponents(p);
    const HittingPlaceLaw law(p, Axis::vertical, cfg.coord);
    const SizeBiasedPowerCauchy base(d.chi, 1.0 - d.gamma);
    const double scale = std::abs(cfg.coord);
    RunResult r;
    r.table.columns = {"z", "density", "cdf"};
    for (double z : cfg.z_grid) {
        r.table.rows.push_back({z, hitting_place_density_vertical(law, z), base.cdf(z / scale)});
    }
    r.summary["axis"] = "vertical";
    r.summary["coord"] = cfg.coord;
    r.summary["tail_index"] = d.chi;
    r.summary["small_z_exponent"] = 1.0 / (1.0 - d.gamma);
    return r;
}

RunResult mellin_table(const RunConfig& cfg) {
    const auto p = params_of(cfg);
    const HittingPlaceLaw vertical(p, Axis::vertical, cfg.coord);
    const HittingPlaceLaw horizontal(p, Axis::horizontal, cfg.coord);
    RunResult r;
    r.table.columns = {"s", "vertical", "horizontal", "product_form", "product_rhs"};
    std::string form;
    for (double s : cfg.s_grid) {
        const auto id = mellin_product_identity(p, s);
        form = to_string(id.form);
        r.table.rows.push_back({s, hitting_place_mellin(vertical, s), hitting_place_mellin(horizontal, s), form,
                                id.rhs ? *id.rhs : std::numeric_limits<double>::quiet_NaN()});
    }
    r.summary["coord"] = cfg.coord;
    r.summary["product_form"] = form;
    r.summary["note"] = "product_rhs is the horizontal-axis representation at x = -1";
    return r;
}

RunResult simulate_theta(const RunConfig& cfg, std::ostream& log) {
    const auto pc = path_config(cfg);
    log << "simulating " << cfg.n << " paths" << std::endl;
    const auto batch = sample_hitting_batch(pc, cfg.n);
    double widest = 0.0;
    for (double w : cfg.windows) widest = std::max(widest, w);
    const auto grid = log_grid(cfg.t_max / widest, cfg.t_max, cfg.grid_points);
    const auto curve = survival_curve(batch.samples, grid, cfg.t_max);

    RunResult r;
    r.table.columns = {"t", "survival", "at_risk"};
    for (std::size_t j = 0; j < grid.size(); ++j) {
        r.table.rows.push_back({curve.times[j], curve.survival[j], static_cast<std::int64_t>(curve.at_risk[j])});
    }
    const double theta = derived_exponents(pc.params).theta;
    r.summary["theta"] = theta;
    r.summary["paths"] = cfg.n;
    r.summary["censored"] = batch.censored;
    Json fits = Json::array();
    const TailFitOptions opt{cfg.grid_points, cfg.bootstrap, stream_seed(*cfg.seed, 0xB007)};
    for (double w : cfg.windows) {
        try {
            const auto f = fit_tail_exponent(batch.samples, cfg.t_max, {cfg.t_max / w, cfg.t_max}, opt);
            fits.push_back({{"t_lo", f.window.first},
                            {"t_hi", f.window.second},
                            {"theta_hat", f.exponent_hat},
                            {"std_error", f.std_error},
                            {"points", f.n_effective},
                            {"relative_deviation", (f.exponent_hat - theta) / theta}});
        } catch (const ParameterError& e) {
            fits.push_back({{"t_lo", cfg.t_max / w}, {"t_hi", cfg.t_max}, {"error", e.what()}});
        }
    }
    r.summary["fits"] = fits;
    return r;
}

RunResult hitting_place(const RunConfig& cfg, std::ostream& log) {
    const auto pc = path_config(cfg);
    const auto d = derived_exponents(pc.params);
    const bool vertical = cfg.x0 == 0.0;
    const HittingPlaceLaw law(pc.params, vertical ? Axis::vertical : Axis::horizontal,
                              vertical ? cfg.y0 : cfg.x0);
    log << "simulating " << cfg.n << " paths" << std::endl;
    const auto batch = sample_hitting_batch(pc, cfg.n);
    const auto places = batch.hitting_places();
    if (places.size() <= cfg.hill_k) throw AccuracyError("too few uncensored paths for the Hill estimate");

    const auto sweep = mellin_sweep_report(places, law, cfg.s_grid,
                                           {cfg.bootstrap, stream_seed(*cfg.seed, 0xBEEF)});
    RunResult r;
    r.table.columns = {"s", "empirical", "std_error", "analytic", "z", "relative_deviation", "heavy_tail_warning"};
    for (const auto& row : sweep.rows) {
        r.table.rows.push_back({row.s, row.empirical, row.std_error, row.analytic, row.z, row.relative_deviation,
                                static_cast<std::int64_t>(row.heavy_tail_warning)});
    }
    const auto hill = hill_estimator(places, cfg.hill_k);
    r.summary["axis"] = to_string(law.axis());
    r.summary["paths"] = cfg.n;
    r.summary["censored"] = batch.censored;
    if (batch.censored > 0) {
        r.summary["warning"] = "censored paths excluded; the sample is conditioned on t0 <= t_max";
        log << "warning: " << batch.censored << " censored paths; raise t_max (e.g. 1e40)" << std::endl;
    }
    r.summary["max_abs_z"] = sweep.max_abs_z;
    r.summary["hill"] = {{"k", cfg.hill_k}, {"estimate", hill.exponent_hat}, {"std_error", hill.std_error},
                         {"chi", d.chi}};
    if (vertical) {
        const SizeBiasedPowerCauchy base(d.chi, 1.0 - d.gamma);
        const double scale = std::abs(cfg.y0);
        r.summary["ks_distance"] = ks_distance(places, [&](double z) { return base.cdf(z / scale); });
    }
    return r;
}

RunResult quad_check(const RunConfig& cfg, std::ostream& log) {
    RunResult r;
    r.validated = true;
    r.table.columns = {"check", "nu", "argument", "closed_form", "numeric", "relative_error", "tolerance", "pass"};
    double worst_fresnel = 0.0;
    double worst_axis = 0.0;
    for (int k = 1; k <= 9; ++k) {
        const double nu = 0.1 * k;
        for (double u : {-5.0, -1.0, -0.5, 0.5, 1.0, 5.0}) {
            for (auto kind : {TrigKind::cos, TrigKind::sin}) {
                const double cf = fresnel_power_closed_form(nu, u, kind);
                const double num = fresnel_power_integral(nu, u, kind);
                const double rel = std::abs(num - cf) / std::abs(cf);
                const bool ok = rel <= kFresnelTol;
                r.passed &= ok;
                worst_fresnel = std::max(worst_fresnel, rel);
                r.table.rows.push_back({std::string(kind == TrigKind::cos ? "fresnel-cos" : "fresnel-sin"), nu, u,
                                        cf, num, rel, kFresnelTol, static_cast<std::int64_t>(ok)});
            }
        }
    }
    log << "fresnel grid done" << std::endl;
    const auto p = params_of(cfg);
    for (double nu : cfg.nu_grid) {
        for (auto c : {AxisCase::y_pos, AxisCase::y_neg, AxisCase::x_neg}) {
            const double coord = c == AxisCase::y_pos ? 1.0 : -1.0;
            const auto cmp = integrated_mellin_axis(c, coord, nu, p);
            const double rel = cmp.relative_error();
            const bool ok = rel <= kAxisTol;
            r.passed &= ok;
            worst_axis = std::max(worst_axis, rel);
            r.table.rows.push_back({"axis-" + to_string(c), nu, coord, cmp.closed_form, cmp.numeric, rel, kAxisTol,
                                    static_cast<std::int64_t>(ok)});
        }
    }
    r.summary["max_fresnel_relative_error"] = worst_fresnel;
    r.summary["max_axis_relative_error"] = worst_axis;
    return r;
}

RunResult validate_all(const RunConfig& cfg, std::ostream& log, Json& timings) {
    acceptance::Options opt;
    opt.seed = *cfg.seed;
    RunResult r;
    r.validated = true;
    r.table.columns = {"criterion", "name", "pass", "detail"};
    timings = Json::array();
    const auto results = acceptance::run(opt, [&](const acceptance::CriterionResult& c) {
        log << acceptance::format_line(c) << std::endl;
    });
    Json checks = Json::array();
    for (const auto& c : results) {
        r.passed &= c.pass;
        r.table.rows.push_back({static_cast<std::int64_t>(c.id), c.name, static_cast<std::int64_t>(c.pass), c.detail});
        checks.push_back({{"criterion", c.id}, {"name", c.name}, {"pass", c.pass}});
        timings.push_back({{"criterion", c.id}, {"seconds", c.seconds}});
    }
    r.summary["criteria"] = checks;
    return r;
}

std::string csv_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", *d);
        return buf;
    }
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    const auto& s = std::get<std::string>(c);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

Json json_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? Json(*d) : Json(nullptr);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return Json(*i);
    return Json(std::get<std::string>(c));
}

std::string utc_now() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + path.string());
    f << content;
}

}  // namespace

RunResult execute(const RunConfig& cfg, std::ostream& log) {
    Json ignored;
    switch (cfg.experiment) {
        case Experiment::exponents: return exponents(cfg);
        case Experiment::density_table: return density_table(cfg);
        case Experiment::mellin_table: return mellin_table(cfg);
        case Experiment::simulate_theta: return simulate_theta(cfg, log);
        case Experiment::hitting_place: return hitting_place(cfg, log);
        case Experiment::validate_all: return validate_all(cfg, log, ignored);
        case Experiment::quad_check: return quad_check(cfg, log);
    }
    throw ConfigError("unknown experiment");
}

std::string format_csv(const Table& t, const std::string& id) {
    std::string out = "# manifest: manifest.json run_id=" + id + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i]);
        out += "\n";
    }
    return out;
}

nlohmann::ordered_json format_json(const Table& t, const std::string& id) {
    Json j;
    j["manifest"] = "manifest.json";
    j["run_id"] = id;
    j["columns"] = t.columns;
    Json rows = Json::array();
    for (const auto& row : t.rows) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(json_cell(c));
        rows.push_back(r);
    }
    j["rows"] = rows;
    return j;
}

int run(const RunConfig& cfg, std::ostream& log) {
    try {
        validate(cfg);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << std::endl;
        return exit_config;
    }
    if (cfg.threads > 0) omp_set_num_threads(static_cast<int>(cfg.threads));

    const std::string id = run_id(cfg);
    const std::string started = utc_now();
    const auto t0 = std::chrono::steady_clock::now();
    RunResult result;
    Json timings;
    try {
        result = cfg.experiment == Experiment::validate_all ? validate_all(cfg, log, timings) : execute(cfg, log);
    } catch (const AccuracyError& e) {
        log << "accuracy failure: " << e.what() << std::endl;
        return exit_accuracy;
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << std::endl;
        return exit_config;
    } catch (const ParameterError& e) {
        log << "config error: " << e.what() << std::endl;
        return exit_config;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::filesystem::path dir(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        log << "config error: cannot create " << dir << ": " << ec.message() << std::endl;
        return exit_config;
    }
    const std::string results_name = cfg.format == Format::csv ? "results.csv" : "results.json";
    try {
        if (cfg.format == Format::csv) write_file(dir / results_name, format_csv(result.table, id));
        else write_file(dir / results_name, format_json(result.table, id).dump(2) + "\n");

        Json manifest;
        manifest["artifact"] = "persist";
        manifest["version"] = kVersion;
        manifest["run_id"] = id;
        manifest["config"] = to_json(cfg);
        manifest["started_utc"] = started;
        manifest["wall_clock_seconds"] = seconds;
        manifest["threads"] = omp_get_max_threads();
        manifest["outputs"] = {results_name};
        manifest["summary"] = result.summary;
        if (!timings.is_null()) manifest["timings"] = timings;
        if (result.validated) manifest["validation"] = {{"passed", result.passed}};
        write_file(dir / "manifest.json", manifest.dump(2) + "\n");
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << std::endl;
        return exit_config;
    }
    log << "wrote " << (dir / results_name).string() << " and " << (dir / "manifest.json").string() << std::endl;
    if (result.validated && !result.passed) {
        log << "validation failed" << std::endl;
        return exit_validation;
    }
    return exit_ok;
}

}  // namespace persist::cli
