// Command-line front end: scenario runs, figure reproduction, plotting.
//
// Exit codes: 0 success, 2 config error, 3 numerical failure,
// 4 check failure (with --check).

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "critnet/figures.hpp"
#include "critnet/io.hpp"
#include "critnet/scenario.hpp"

namespace {

using namespace critnet;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitCheck = 4;

struct CommonOpts {
    std::string config_path;
    std::vector<std::string> overrides; // key=value, applied after the config file
    std::string out_dir;
    std::string prefix;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("-c,--config", opts.config_path, "Scenario config file");
    cmd->add_option("-s,--set", opts.overrides,
                    "Override a config key, e.g. --set weights.w_ee=12 (repeatable; "
                    "flags take precedence over the config file)");
    cmd->add_option("-o,--out", opts.out_dir, "Output directory");
    cmd->add_option("--prefix", opts.prefix, "Artifact filename prefix");
}

ScenarioConfig load_config(const CommonOpts& opts, const std::string& mode) {
    std::string text;
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) throw ConfigError("cannot read config file: " + opts.config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    text += "\nmode = " + mode + "\n";
    for (const auto& kv : opts.overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got: " + kv);
        text += kv.substr(0, eq) + " = " + kv.substr(eq + 1) + "\n";
    }
    if (!opts.out_dir.empty()) text += "output.dir = " + opts.out_dir + "\n";
    if (!opts.prefix.empty()) text += "output.prefix = " + opts.prefix + "\n";

    // Later lines win; re-tokenize keeping the last occurrence of each key.
    std::istringstream lines(text);
    std::map<std::string, std::string> last;
    std::vector<std::string> order;
    std::string line;
    while (std::getline(lines, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        if (!last.count(key)) order.push_back(key);
        last[key] = trim(line.substr(eq + 1));
    }
    std::string merged;
    for (const auto& key : order) merged += key + " = " + last[key] + "\n";
    return parse_scenario_text(merged);
}

int run_mode(const CommonOpts& opts, const std::string& mode) {
    ScenarioConfig config = load_config(opts, mode);
    RunResult result = run_scenario(config);
    for (const auto& path : result.artifacts) std::cout << path.string() << '\n';
    if (result.aborted) {
        std::cerr << "numerical failure: run aborted, partial artifacts written\n";
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-population mean-field network: simulation, bifurcation analysis, "
                 "and covariance-plasticity regulation"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string figure_id;
    bool check = false;

    auto* simulate = app.add_subcommand("simulate", "Finite-N Glauber simulation");
    auto* meanfield = app.add_subcommand("meanfield", "Integrate the mean-field system");
    auto* regulate = app.add_subcommand("regulate", "Integrate with covariance regulation");
    auto* fixed_points = app.add_subcommand("fixed-points", "List fixed points and stability");
    auto* scan = app.add_subcommand("scan", "Region map over a 2-D parameter grid");
    auto* profile = app.add_subcommand("profile", "Covariance profile along a w_ee line");
    for (auto* cmd : {simulate, meanfield, regulate, fixed_points, scan, profile})
        add_common(cmd, opts);

    auto* figure = app.add_subcommand("figure", "Reproduce a built-in figure scenario");
    figure->add_option("id", figure_id, "Figure id (1, 2a..2c, 3a, 3b, 4a..4c, 5, 6a..6c, 7, 8a..8c)")
        ->required();
    figure->add_option("-o,--out", opts.out_dir, "Output directory");
    figure->add_flag("--check", check, "Verify the emitted artifacts; exit 4 on failure");

    std::string plot_kind, plot_in, plot_out;
    auto* plot = app.add_subcommand("plot", "Render a CSV artifact as SVG");
    plot->add_option("--kind", plot_kind, "Artifact kind: trace | glauber | profile")->required();
    plot->add_option("--in", plot_in, "Input CSV")->required();
    plot->add_option("--out-file", plot_out, "Output SVG")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (simulate->parsed()) return run_mode(opts, "simulate");
        if (meanfield->parsed()) return run_mode(opts, "meanfield");
        if (regulate->parsed()) return run_mode(opts, "regulate");
        if (fixed_points->parsed()) return run_mode(opts, "fixed-points");
        if (scan->parsed()) return run_mode(opts, "scan");
        if (profile->parsed()) return run_mode(opts, "profile");

        if (figure->parsed()) {
            std::filesystem::path out_dir = opts.out_dir.empty() ? "out" : opts.out_dir;
            RunResult result = reproduce_figure(figure_id, out_dir);
            bool have_csv = false, have_svg = false;
            for (const auto& path : result.artifacts) {
                std::cout << path.string() << '\n';
                if (path.extension() == ".csv") have_csv = true;
                if (path.extension() == ".svg") have_svg = true;
            }
            if (result.aborted) return kExitNumerical;
            if (check) {
                for (const auto& path : result.artifacts)
                    if (!std::filesystem::exists(path) || std::filesystem::file_size(path) == 0) {
                        std::cerr << "check failed: missing or empty artifact " << path << '\n';
                        return kExitCheck;
                    }
                if (!have_csv || !have_svg) {
                    std::cerr << "check failed: figure must emit at least one CSV and one SVG\n";
                    return kExitCheck;
                }
            }
            return kExitOk;
        }

        if (plot->parsed()) {
            PlotSpec spec;
            spec.x_label = "t";
            if (plot_kind == "trace") {
                Trace trace = read_trace_csv(plot_in);
                Series s{"s", "#1f6fb2", {}}, sigma{"sigma", "#d65f5f", {}};
                for (const auto& x : trace.samples) {
                    s.points.emplace_back(x.t, x.s);
                    sigma.points.emplace_back(x.t, x.sigma);
                }
                spec.title = "Trace";
                spec.y_label = "activity";
                write_line_plot_svg(plot_out, spec, {s, sigma});
            } else if (plot_kind == "glauber") {
                PopulationTrace trace = read_population_trace_csv(plot_in);
                Series e{"mean_e", "#1f6fb2", {}}, i{"mean_i", "#d65f5f", {}};
                for (std::size_t k = 0; k < trace.t.size(); ++k) {
                    e.points.emplace_back(trace.t[k], trace.mean_e[k]);
                    i.points.emplace_back(trace.t[k], trace.mean_i[k]);
                }
                spec.title = "Population means";
                spec.y_label = "mean activity";
                write_line_plot_svg(plot_out, spec, {e, i});
            } else if (plot_kind == "profile") {
                // profile CSV: w_ee,cov_mean
                std::ifstream in(plot_in);
                if (!in) throw ConfigError("cannot read: " + plot_in);
                std::string line;
                std::getline(in, line);
                Series s{"cov_ee mean", "#1f6fb2", {}};
                while (std::getline(in, line)) {
                    auto comma = line.find(',');
                    if (comma == std::string::npos) continue;
                    s.points.emplace_back(std::stod(line.substr(0, comma)),
                                          std::stod(line.substr(comma + 1)));
                }
                spec.title = "Covariance profile";
                spec.x_label = "w_ee";
                spec.y_label = "mean c_ee";
                write_line_plot_svg(plot_out, spec, {s});
            } else {
                throw ConfigError("unsupported plot kind: " + plot_kind);
            }
            std::cout << plot_out << '\n';
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NonFiniteError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return kExitOk;
}
