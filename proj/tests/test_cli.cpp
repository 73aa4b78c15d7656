#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "persist/cli/config.hpp"
#include "persist/cli/experiments.hpp"
#include "persist/error.hpp"

using namespace persist;
using namespace persist::cli;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    const auto d = fs::temp_directory_path() / ("persist_test_" + name);
    fs::remove_all(d);
    return d;
}

std::string error_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("config round trip") {
    RunConfig c;
    c.experiment = Experiment::simulate_theta;
    c.alpha = 1.5;
    c.rho = 0.45;
    c.seed = 123;
    c.n = 777;
    c.s_grid = {0.1, 1.0 / 3.0};
    c.format = Format::json;
    c.out = "somewhere";
    CHECK(parse_config(emit(c)) == c);
    CHECK(parse_config(to_json(c).dump()) == c);
}

TEST_CASE("key=value parsing with comments") {
    const auto c = parse_config("# comment\nexperiment = mellin-table\nalpha=1.2  # inline\nrho=0.5\n\n");
    CHECK(c.experiment == Experiment::mellin_table);
    CHECK(c.alpha == 1.2);
}

TEST_CASE("bad configs are rejected with the offending key") {
    CHECK(error_of("experiment=exponents\nbogus=1").find("bogus") != std::string::npos);
    CHECK(error_of("experiment=exponents\nalpha=1.5\nrho=0.9").find("rho") != std::string::npos);
    CHECK(error_of("experiment=simulate-theta").find("seed") != std::string::npos);
    CHECK(error_of("experiment=nope").find("experiment") != std::string::npos);
    CHECK(error_of("alpha=1.5").find("experiment") != std::string::npos);
    CHECK(error_of("experiment=exponents\nn=-3").find("'n'") != std::string::npos);
    CHECK(error_of("experiment=exponents\nh=abc").find("'h'") != std::string::npos);
    CHECK_FALSE(error_of("{\"experiment\": \"exponents\", \"alpha\": 3}").empty());
}

TEST_CASE("overrides") {
    auto c = parse_config("experiment=exponents");
    apply_override(c, "alpha=0.7");
    apply_override(c, "rho=0.2");
    CHECK(c.alpha == 0.7);
    CHECK_THROWS_AS(apply_override(c, "rho"), ConfigError);
}

TEST_CASE("run id ignores execution-only keys") {
    auto a = parse_config("experiment=simulate-theta\nseed=1");
    auto b = a;
    b.threads = 4;
    b.out = "elsewhere";
    CHECK(run_id(a) == run_id(b));
    b.seed = 2;
    CHECK(run_id(a) != run_id(b));
}

TEST_CASE("CSV formatting") {
    Table t;
    t.columns = {"a", "b", "c"};
    t.rows.push_back({0.1, std::int64_t{3}, std::string("x,y")});
    CHECK(format_csv(t, "abc") == "# manifest: manifest.json run_id=abc\na,b,c\n0.10000000000000001,3,\"x,y\"\n");
}

TEST_CASE("simulate-theta is byte-identical across runs and thread counts") {
    auto c = parse_config("experiment=simulate-theta\nseed=99\nn=3000\nt_max=100\nbootstrap=50");
    const auto d1 = scratch("a"), d2 = scratch("b");
    std::ostringstream log;
    c.out = d1.string();
    c.threads = 1;
    REQUIRE(run(c, log) == exit_ok);
    c.out = d2.string();
    c.threads = 2;
    REQUIRE(run(c, log) == exit_ok);
    CHECK(slurp(d1 / "results.csv") == slurp(d2 / "results.csv"));
    CHECK(slurp(d1 / "results.csv").rfind("# manifest: manifest.json run_id=" + run_id(c), 0) == 0);

    // the manifest reproduces the run
    auto again = parse_config(slurp(d1 / "manifest.json"));
    again.out = d1.string();
    again.threads = 1;
    c.out = d1.string();
    c.threads = 1;
    CHECK(again == c);
    fs::remove_all(d1);
    fs::remove_all(d2);
}

TEST_CASE("deterministic experiments write tables") {
    for (const std::string name : {"exponents", "density-table", "mellin-table"}) {
        auto c = parse_config("experiment=" + name + "\nformat=json");
        const auto d = scratch(name);
        c.out = d.string();
        std::ostringstream log;
        REQUIRE(run(c, log) == exit_ok);
        CHECK(fs::exists(d / "results.json"));
        CHECK(slurp(d / "manifest.json").find("\"run_id\"") != std::string::npos);
        fs::remove_all(d);
    }
}

TEST_CASE("invalid config maps to exit code 2") {
    RunConfig c;
    c.experiment = Experiment::hitting_place;
    std::ostringstream log;
    CHECK(run(c, log) == exit_config);
    CHECK(log.str().find("seed") != std::string::npos);
}
