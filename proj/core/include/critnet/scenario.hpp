#ifndef CRITNET_SCENARIO_HPP
#define CRITNET_SCENARIO_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "critnet/analysis.hpp"
#include "critnet/evolution.hpp"

namespace critnet {

// One run of the toolkit, as described by a scenario file. The file format
// is `key = value` lines with dotted keys; unknown keys are fatal.
struct ScenarioConfig {
    std::string mode = "meanfield"; // simulate | meanfield | regulate | fixed-points | scan | profile

    Variant variant = Variant::Reduced;
    double beta = 1.0;
    SynapticWeights weights{12.0, 10.0, 8.0, 2.0};
    FiringThresholds thresholds{1.0, 3.0};

    // regulation.*
    double rho = 0.1;
    bool regulate_wee = false, regulate_wie = false, regulate_he = false, regulate_hi = false;
    double eps_ee = 0.01, theta_ee = 0.01;
    double eps_ie = -0.01, theta_ie = 0.01;
    double eps_he = 0.005, theta_he = 0.5;
    double eps_hi = 0.002, theta_hi = 0.5;

    // run.*
    double dt = 0.01;
    double t_end = 1000.0;
    double sample_every = 1.0;
    double t_transient = 500.0;
    double t_measure = 500.0;

    // init.*
    double init_s = 0.1;
    double init_sigma = 0.0;

    // glauber.*
    int glauber_n = 70;
    std::uint64_t seed = 1;
    std::optional<int> glauber_initial_value;

    // scan.*
    AxisSpec scan_x{"w_ee", 0.0, 20.0, 40};
    AxisSpec scan_y{"w_ie", 0.0, 20.0, 40};
    int scan_threads = 0;
    bool dense_grid = false;

    // profile.*
    double profile_lo = 4.0, profile_hi = 16.0;
    int profile_n = 40;

    // output.*
    std::filesystem::path output_dir = "out";
    std::string output_prefix = "run";

    SystemParams system_params() const;
    RegulationConfig regulation_config() const;

    // Throws ConfigError on invariant violations.
    void validate() const;
};

ScenarioConfig parse_scenario_text(const std::string& text);
ScenarioConfig parse_scenario_file(const std::filesystem::path& path);

// Canonical serialization; parse(serialize(c)) reproduces c.
std::string serialize_scenario(const ScenarioConfig& config);

// FNV-1a hash of the canonical serialization, for run manifests.
std::string scenario_hash(const ScenarioConfig& config);

struct RunResult {
    std::vector<std::filesystem::path> artifacts;
    bool aborted = false; // numerical failure; partial artifacts were written
};

// Dispatches on config.mode, writes artifacts and a manifest under
// config.output_dir.
RunResult run_scenario(const ScenarioConfig& config);

} // namespace critnet

#endif
