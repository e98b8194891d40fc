#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string>

#include "critnet/figures.hpp"
#include "critnet/io.hpp"
#include "critnet/scenario.hpp"

using namespace critnet;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct TempDir {
    fs::path path;
    TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("scenario parse / serialize round trip") {
    ScenarioConfig config;
    config.mode = "regulate";
    config.variant = Variant::Full;
    config.weights = {9.5, 10.0, 3.25, 6.0};
    config.thresholds = {0.25, 5.0};
    config.regulate_wee = true;
    config.regulate_he = true;
    config.eps_he = 0.0051;
    config.t_end = 12345.0;
    config.seed = 99;
    config.output_prefix = "roundtrip";

    ScenarioConfig back = parse_scenario_text(serialize_scenario(config));
    CHECK(serialize_scenario(back) == serialize_scenario(config));
    CHECK(scenario_hash(back) == scenario_hash(config));

    // The hash separates distinct configs.
    back.t_end += 1.0;
    CHECK(scenario_hash(back) != scenario_hash(config));
}

TEST_CASE("scenario parser diagnostics") {
    SUBCASE("unknown key is fatal and cites the line") {
        try {
            parse_scenario_text("beta = 1\nweights.w_xx = 3\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            std::string msg = e.what();
            CHECK(msg.find("w_xx") != std::string::npos);
            CHECK(msg.find("2") != std::string::npos); // line number
        }
    }

    SUBCASE("duplicate key is fatal") {
        CHECK_THROWS_AS(parse_scenario_text("beta = 1\nbeta = 2\n"), ConfigError);
    }

    SUBCASE("malformed number is fatal") {
        CHECK_THROWS_AS(parse_scenario_text("beta = fast\n"), ConfigError);
    }

    SUBCASE("wrong covariance rule sign is rejected with the constraint named") {
        try {
            parse_scenario_text("mode = regulate\nregulation.eps_ie = 0.02\n");
            FAIL("expected ConfigError");
        } catch (const ConfigError& e) {
            std::string msg = e.what();
            CHECK(msg.find("eps_ie") != std::string::npos);
            CHECK(msg.find("non-positive") != std::string::npos);
        }
    }

    SUBCASE("comments and blank lines are ignored") {
        ScenarioConfig config = parse_scenario_text("# full line comment\n\nbeta = 2 # trailing\n");
        CHECK(config.beta == 2.0);
    }

    SUBCASE("unknown mode is rejected") {
        CHECK_THROWS_AS(parse_scenario_text("mode = dance\n"), ConfigError);
    }
}

TEST_CASE("run_scenario: meanfield artifacts") {
    TempDir dir("critnet_harness_meanfield");
    ScenarioConfig config;
    config.mode = "meanfield";
    config.t_end = 50.0;
    config.sample_every = 0.5;
    config.output_dir = dir.path;
    config.output_prefix = "mf";

    RunResult result = run_scenario(config);
    CHECK(!result.aborted);
    REQUIRE(!result.artifacts.empty());

    bool have_csv = false, have_svg = false, have_manifest = false;
    for (const auto& artifact : result.artifacts) {
        CHECK(fs::exists(artifact));
        CHECK(fs::file_size(artifact) > 0);
        if (artifact.extension() == ".csv") have_csv = true;
        if (artifact.extension() == ".svg") have_svg = true;
        if (artifact.filename().string().find("manifest") != std::string::npos)
            have_manifest = true;
    }
    CHECK(have_csv);
    CHECK(have_svg);
    CHECK(have_manifest);

    // The trace CSV reads back with the documented columns.
    for (const auto& artifact : result.artifacts)
        if (artifact.extension() == ".csv" &&
            artifact.filename().string().find("manifest") == std::string::npos) {
            std::string head = slurp(artifact).substr(0, 64);
            CHECK(head.rfind("t,s,sigma,s_bar,sigma_bar,w_ee,w_ie,h_e,h_i", 0) == 0);
            Trace trace = read_trace_csv(artifact);
            CHECK(trace.samples.size() >= 100);
        }

    // Manifest carries the config hash.
    for (const auto& artifact : result.artifacts)
        if (artifact.filename().string().find("manifest") != std::string::npos) {
            std::string text = slurp(artifact);
            CHECK(text.find("config_hash") != std::string::npos);
            CHECK(text.find(scenario_hash(config)) != std::string::npos);
        }
}

TEST_CASE("run_scenario: glauber reruns are bit-identical") {
    TempDir dir("critnet_harness_glauber");
    ScenarioConfig config;
    config.mode = "simulate";
    config.variant = Variant::Full;
    config.t_end = 5.0;
    config.sample_every = 0.05;
    config.seed = 12;
    config.output_dir = dir.path;
    config.output_prefix = "ga";
    RunResult first = run_scenario(config);
    std::string csv_a;
    for (const auto& artifact : first.artifacts)
        if (artifact.filename().string().find("manifest") == std::string::npos &&
            artifact.extension() == ".csv")
            csv_a = slurp(artifact);

    config.output_prefix = "gb";
    RunResult second = run_scenario(config);
    std::string csv_b;
    for (const auto& artifact : second.artifacts)
        if (artifact.filename().string().find("manifest") == std::string::npos &&
            artifact.extension() == ".csv")
            csv_b = slurp(artifact);

    REQUIRE(!csv_a.empty());
    CHECK(csv_a == csv_b);
    CHECK(csv_a.rfind("t,mean_e,mean_i", 0) == 0);
}

TEST_CASE("run_scenario: aborted run still writes partial artifacts") {
    TempDir dir("critnet_harness_abort");
    ScenarioConfig config;
    config.mode = "meanfield";
    config.init_s = std::nan(""); // sails past range validation, aborts the integrator
    config.t_end = 10.0;
    config.sample_every = 0.1;
    config.output_dir = dir.path;
    config.output_prefix = "bad";

    RunResult result = run_scenario(config);
    CHECK(result.aborted);
    bool have_csv = false;
    for (const auto& artifact : result.artifacts) {
        CHECK(fs::exists(artifact));
        if (artifact.extension() == ".csv") have_csv = true;
    }
    CHECK(have_csv);
}

TEST_CASE("empty-series SVG output is still a valid document") {
    TempDir dir("critnet_harness_svg");
    PlotSpec spec;
    spec.title = "empty";
    fs::path out = dir.path / "empty.svg";
    write_line_plot_svg(out, spec, {});
    std::string text = slurp(out);
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("</svg>") != std::string::npos);
}

TEST_CASE("figure registry") {
    const auto& ids = figure_ids();
    std::vector<std::string> expected{"1",  "2a", "2b", "2c", "3a", "3b", "4a", "4b", "4c",
                                      "5",  "6a", "6b", "6c", "7",  "8a", "8b", "8c"};
    CHECK(ids == expected);
    TempDir dir("critnet_harness_fig");
    CHECK_THROWS_AS((void)reproduce_figure("9z", dir.path), ConfigError);
}

TEST_CASE("fixed-points mode emits a stability table") {
    TempDir dir("critnet_harness_fp");
    ScenarioConfig config;
    config.mode = "fixed-points";
    config.weights = {15.0, 10.0, 8.0, 2.0};
    config.output_dir = dir.path;
    config.output_prefix = "fp";
    RunResult result = run_scenario(config);
    CHECK(!result.aborted);
    bool checked = false;
    for (const auto& artifact : result.artifacts)
        if (artifact.extension() == ".csv" &&
            artifact.filename().string().find("manifest") == std::string::npos) {
            std::string text = slurp(artifact);
            CHECK(text.rfind("s,sigma,stability", 0) == 0);
            // five rows after the header
            CHECK(std::count(text.begin(), text.end(), '\n') == 6);
            checked = true;
        }
    CHECK(checked);
}
