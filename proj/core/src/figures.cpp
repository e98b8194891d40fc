#include "critnet/figures.hpp"

#include <cmath>
#include <fstream>

#include "critnet/glauber.hpp"
#include "critnet/io.hpp"

namespace critnet {

namespace {

namespace fs = std::filesystem;

const SynapticWeights kFig1Weights{12.0, 10.0, 8.0, 2.0};
const FiringThresholds kFig1Thresholds{1.0, 3.0};

// Section-4 reduced regulation setting: w_ei = 10, w_ii = 6.
constexpr double kRegWEi = 10.0;
constexpr double kRegWIi = 6.0;

// Full-system (w_ee, h_E) setting: w_ei = 10, w_ie = 10, w_ii = 1, h_I = 5.
constexpr double kFullWEi = 10.0;
constexpr double kFullWIe = 10.0;
constexpr double kFullWIi = 1.0;
constexpr double kFullHI = 5.0;

Series nullcline_series_reduced(const SynapticWeights& w, double T, const std::string& which) {
    Series series{which, which == "s-nullcline" ? "#2ca02c" : "#9467bd", {}};
    const int n = 400;
    for (int i = 1; i < n; ++i) {
        double u = -0.5 + i / static_cast<double>(n);
        if (which == "s-nullcline") {
            double sigma = s_nullcline_sigma(u, w, T);
            if (std::abs(sigma) <= 0.75) series.points.emplace_back(u, sigma);
        } else {
            series.points.emplace_back(sigma_nullcline_s(u, w, T), u);
        }
    }
    return series;
}

Series nullcline_series_full(const SystemParams& params, const std::string& which) {
    Series series{which, which == "s-nullcline" ? "#2ca02c" : "#9467bd", {}};
    const int n = 400;
    for (int i = 1; i < n; ++i) {
        double u = i / static_cast<double>(n);
        if (which == "s-nullcline") {
            double sigma = full_s_nullcline_sigma(u, params);
            if (sigma >= -0.25 && sigma <= 1.25) series.points.emplace_back(u, sigma);
        } else {
            series.points.emplace_back(full_sigma_nullcline_s(u, params), u);
        }
    }
    return series;
}

void write_nullclines_csv(const fs::path& path, const Series& snull, const Series& signull) {
    std::ofstream out(path);
    out.precision(12);
    out << "curve,s,sigma\n";
    for (const auto& [s, sigma] : snull.points) out << "s_nullcline," << s << ',' << sigma << '\n';
    for (const auto& [s, sigma] : signull.points)
        out << "sigma_nullcline," << s << ',' << sigma << '\n';
}

// Phase portrait of the plain (unregulated) system: nullclines plus a few
// trajectories.
RunResult phase_portrait_figure(const std::string& id, const fs::path& out_dir,
                                const SystemParams& params,
                                const std::vector<ActivityPoint>& starts, double t_end) {
    RegulationConfig reg;
    reg.variant = params.variant;
    reg.beta = params.beta;
    reg.w_ei = params.weights.w_ei;
    reg.w_ii = params.weights.w_ii;

    std::vector<Series> series;
    if (params.variant == Variant::Reduced) {
        double T = params.temperature();
        series.push_back(nullcline_series_reduced(params.weights, T, "s-nullcline"));
        series.push_back(nullcline_series_reduced(params.weights, T, "sigma-nullcline"));
    } else {
        series.push_back(nullcline_series_full(params, "s-nullcline"));
        series.push_back(nullcline_series_full(params, "sigma-nullcline"));
    }
    write_nullclines_csv(out_dir / ("fig" + id + "_nullclines.csv"), series[0], series[1]);

    RunResult result;
    result.artifacts.push_back(out_dir / ("fig" + id + "_nullclines.csv"));
    static const char* colors[] = {"#1f6fb2", "#d65f5f", "#eec24f", "#8c613c"};
    int k = 0;
    for (const auto& p : starts) {
        ExtendedState init = make_initial_state(p.s, p.sigma, params.weights.w_ee,
                                                params.weights.w_ie, params.thresholds.h_e,
                                                params.thresholds.h_i);
        Trace trace = integrate(reg, init, 0.01, t_end, 0.05);
        auto csv = out_dir / ("fig" + id + "_traj" + std::to_string(k + 1) + ".csv");
        write_trace_csv(csv, trace);
        result.artifacts.push_back(csv);
        Series s{"trajectory " + std::to_string(k + 1), colors[k % 4], {}};
        for (const auto& x : trace.samples) s.points.emplace_back(x.s, x.sigma);
        series.push_back(std::move(s));
        ++k;
    }

    PlotSpec spec;
    spec.title = "Phase portrait, w_ee = " + std::to_string(params.weights.w_ee);
    spec.x_label = "s";
    spec.y_label = "sigma";
    if (params.variant == Variant::Reduced) {
        spec.x_lo = -0.55;
        spec.x_hi = 0.55;
        spec.y_lo = -0.55;
        spec.y_hi = 0.55;
    } else {
        spec.x_lo = -0.05;
        spec.x_hi = 1.05;
        spec.y_lo = -0.05;
        spec.y_hi = 1.05;
    }
    auto svg = out_dir / ("fig" + id + "_phase.svg");
    write_line_plot_svg(svg, spec, series);
    result.artifacts.push_back(svg);
    return result;
}

SystemParams reduced_params(double w_ee, double w_ei, double w_ie, double w_ii) {
    SystemParams p;
    p.weights = {w_ee, w_ei, w_ie, w_ii};
    p.variant = Variant::Reduced;
    return p;
}

// The saddlenode curve S for overlay plots.
Series saddlenode_curve(double w_ei, double w_ii, double wie_lo, double wie_hi) {
    Series s{"S (saddlenode)", "#222222", {}};
    const int n = 60;
    for (int i = 0; i <= n; ++i) {
        double wie = wie_lo + (wie_hi - wie_lo) * i / n;
        try {
            s.points.emplace_back(saddlenode_wee(w_ei, w_ii, wie, 1.0), wie);
        } catch (const NoTangencyError&) {
        }
    }
    return s;
}

RunResult regulated_weight_plane_figure(const std::string& id, const fs::path& out_dir,
                                        const RegulationConfig& reg,
                                        const std::vector<ExtendedState>& starts, double t_end,
                                        double wie_lo, double wie_hi) {
    RunResult result;
    std::vector<Series> series;
    series.push_back(saddlenode_curve(reg.w_ei, reg.w_ii, wie_lo, wie_hi));
    static const char* colors[] = {"#1f6fb2", "#d65f5f", "#eec24f", "#8c613c", "#6acc65"};
    int k = 0;
    for (const auto& init : starts) {
        Trace trace = integrate(reg, init, 0.01, t_end, 1.0);
        auto csv = out_dir / ("fig" + id + "_traj" + std::to_string(k + 1) + ".csv");
        write_trace_csv(csv, trace);
        result.artifacts.push_back(csv);
        Series s{"from (" + std::to_string(init.w_ee) + ", " + std::to_string(init.w_ie) + ")",
                 colors[k % 5],
                 {}};
        for (const auto& x : trace.samples) s.points.emplace_back(x.w_ee, x.w_ie);
        series.push_back(std::move(s));
        ++k;
    }
    PlotSpec spec;
    spec.title = "Regulated weight-plane trajectories";
    spec.x_label = "w_ee";
    spec.y_label = "w_ie";
    auto svg = out_dir / ("fig" + id + "_weights.svg");
    write_line_plot_svg(svg, spec, series);
    result.artifacts.push_back(svg);
    return result;
}

// Terminal time-averaged parameter state of a regulated run.
ExtendedState terminal_mean_state(const Trace& trace, double window) {
    ExtendedState mean{};
    long count = 0;
    double t_from = trace.samples.back().t - window;
    for (const auto& x : trace.samples) {
        if (x.t < t_from) continue;
        mean.s += x.s;
        mean.sigma += x.sigma;
        mean.w_ee += x.w_ee;
        mean.w_ie += x.w_ie;
        mean.h_e += x.h_e;
        mean.h_i += x.h_i;
        ++count;
    }
    mean.s /= count;
    mean.sigma /= count;
    mean.w_ee /= count;
    mean.w_ie /= count;
    mean.h_e /= count;
    mean.h_i /= count;
    mean.t = trace.samples.back().t;
    return mean;
}

RegulationConfig reduced_regulation_base() {
    RegulationConfig reg;
    reg.variant = Variant::Reduced;
    reg.w_ei = kRegWEi;
    reg.w_ii = kRegWIi;
    reg.rho = 0.1;
    reg.eps_ee = 0.01;
    reg.theta_ee = 0.01;
    reg.eps_ie = -0.01;
    reg.theta_ie = 0.01;
    return reg;
}

RegulationConfig full_wee_he_regulation() {
    RegulationConfig reg;
    reg.variant = Variant::Full;
    reg.w_ei = kFullWEi;
    reg.w_ii = kFullWIi;
    reg.rho = 0.2;
    reg.regulate_wee = true;
    reg.regulate_he = true;
    reg.eps_ee = 0.01;
    reg.theta_ee = 0.01;
    reg.eps_he = 0.001;
    reg.theta_he = 0.5;
    return reg;
}

RunResult time_series_figure(const std::string& id, const fs::path& out_dir,
                             const RegulationConfig& reg, const ExtendedState& init, double t_end,
                             double window) {
    Trace trace = integrate(reg, init, 0.01, t_end, 0.25);
    RunResult result;
    auto csv = out_dir / ("fig" + id + "_trace.csv");

    // Keep only the displayed tail in the CSV to bound artifact size.
    Trace tail;
    tail.dt = trace.dt;
    tail.config = trace.config;
    double t_from = trace.samples.back().t - window;
    for (const auto& x : trace.samples)
        if (x.t >= t_from) tail.samples.push_back(x);
    write_trace_csv(csv, tail);
    result.artifacts.push_back(csv);
    result.aborted = trace.aborted;

    PlotSpec spec;
    spec.title = "Activity after convergence";
    spec.x_label = "t";
    spec.y_label = "s, sigma";
    Series s{"s", "#1f6fb2", {}}, sigma{"sigma", "#d65f5f", {}};
    for (const auto& x : tail.samples) {
        s.points.emplace_back(x.t, x.s);
        sigma.points.emplace_back(x.t, x.sigma);
    }
    auto svg = out_dir / ("fig" + id + "_trace.svg");
    write_line_plot_svg(svg, spec, {s, sigma});
    result.artifacts.push_back(svg);
    return result;
}

RunResult reproduce_figure_impl(const std::string& id, const fs::path& out_dir);

} // namespace

RegulationConfig standard_regulation() {
    RegulationConfig reg;
    reg.variant = Variant::Full;
    reg.w_ei = 10.0;
    reg.w_ii = 6.0;
    reg.rho = 0.05;
    reg.regulate_wee = true;
    reg.regulate_wie = true;
    reg.regulate_he = true;
    reg.regulate_hi = true;
    reg.eps_ee = 0.01;
    reg.theta_ee = 0.01;
    reg.eps_ie = -0.005;
    reg.theta_ie = 0.01;
    reg.eps_he = 0.005;
    reg.theta_he = 0.5;
    reg.eps_hi = 0.002;
    reg.theta_hi = 0.5;
    return reg;
}

ExtendedState chaotic_initial_state() {
    // Pinned start that reaches the chaotic attractor of the
    // eps_i = eps_e = .005 setting (verified over 2e5 time units).
    return make_initial_state(0.6, 0.4, 12.0, 8.0, 1.0, 3.0);
}

const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"1",  "2a", "2b", "2c", "3a", "3b",
                                                 "4a", "4b", "4c", "5",  "6a", "6b",
                                                 "6c", "7",  "8a", "8b", "8c"};
    return ids;
}

RunResult reproduce_figure(const std::string& id, const fs::path& out_dir) {
    RunResult result = reproduce_figure_impl(id, out_dir);

    // Scenario-backed figures already wrote a manifest via run_scenario;
    // give the bespoke ones one too so every figure has the same sidecar.
    bool has_manifest = false;
    for (const auto& artifact : result.artifacts)
        if (artifact.filename().string().find("manifest") != std::string::npos)
            has_manifest = true;
    if (!has_manifest) {
        auto manifest = out_dir / ("fig" + id + "_manifest.txt");
        std::vector<std::pair<std::string, std::string>> entries = {
            {"figure", id},
            {"aborted", result.aborted ? "true" : "false"},
        };
        for (const auto& artifact : result.artifacts)
            entries.emplace_back("artifact", artifact.filename().string());
        write_manifest(manifest, entries);
        result.artifacts.push_back(manifest);
    }
    return result;
}

namespace {

RunResult reproduce_figure_impl(const std::string& id, const fs::path& out_dir) {
    fs::create_directories(out_dir);

    if (id == "1") {
        ScenarioConfig c;
        c.mode = "simulate";
        c.variant = Variant::Full;
        c.weights = kFig1Weights;
        c.thresholds = kFig1Thresholds;
        c.glauber_n = 70;
        c.seed = 20260823;
        c.t_end = 60.0;
        c.sample_every = 0.05;
        c.output_dir = out_dir;
        c.output_prefix = "fig1";
        return run_scenario(c);
    }

    const std::vector<ActivityPoint> reduced_starts = {
        {0.4, -0.2}, {-0.4, 0.2}, {0.05, 0.02}, {-0.3, -0.45}};
    if (id == "2a")
        return phase_portrait_figure(id, out_dir, reduced_params(12.0, 10.0, 8.0, 2.0),
                                     reduced_starts, 200.0);
    if (id == "2b") {
        double sn = saddlenode_wee(10.0, 2.0, 8.0, 1.0);
        return phase_portrait_figure(id, out_dir, reduced_params(sn, 10.0, 8.0, 2.0),
                                     reduced_starts, 200.0);
    }
    if (id == "2c")
        return phase_portrait_figure(id, out_dir, reduced_params(15.0, 10.0, 8.0, 2.0),
                                     reduced_starts, 200.0);

    if (id == "3a") {
        ScenarioConfig c;
        c.mode = "scan";
        c.variant = Variant::Reduced;
        c.weights = {0.0, 10.0, 0.0, 2.0};
        c.scan_x = {"w_ee", 0.0, 20.0, 40};
        c.scan_y = {"w_ie", 0.0, 20.0, 40};
        c.t_transient = 300.0;
        c.t_measure = 300.0;
        c.output_dir = out_dir;
        c.output_prefix = "fig3a";
        return run_scenario(c);
    }

    if (id == "3b") {
        RunResult result;
        std::vector<Series> all;
        static const char* colors[] = {"#1f6fb2", "#d65f5f", "#eec24f", "#8c613c"};
        int k = 0;
        for (double wie : {4.0, 8.0, 12.0, 16.0}) {
            std::vector<double> wee;
            for (int i = 0; i <= 48; ++i) wee.push_back(4.0 + 12.0 * i / 48.0);
            auto profile = covariance_profile(wee, {0.0, 10.0, wie, 2.0}, 1.0);
            auto csv = out_dir / ("fig3b_wie" + std::to_string(static_cast<int>(wie)) + ".csv");
            write_profile_csv(csv, profile);
            result.artifacts.push_back(csv);
            Series s{"w_ie = " + std::to_string(static_cast<int>(wie)), colors[k++ % 4], {}};
            for (const auto& p : profile) s.points.emplace_back(p.w_ee, p.cov_mean);
            all.push_back(std::move(s));
        }
        PlotSpec spec;
        spec.title = "Average covariance along lines of constant w_ie";
        spec.x_label = "w_ee";
        spec.y_label = "mean c_ee";
        auto svg = out_dir / "fig3b_profiles.svg";
        write_line_plot_svg(svg, spec, all);
        result.artifacts.push_back(svg);
        return result;
    }

    if (id == "4a") {
        RegulationConfig reg = reduced_regulation_base();
        reg.regulate_wee = true;
        std::vector<ExtendedState> starts = {
            make_initial_state(0.1, 0.05, 10.5, 8.5),
            make_initial_state(0.45, 0.45, 15.5, 8.5),
            make_initial_state(0.1, 0.05, 10.8, 10.0),
            make_initial_state(0.45, 0.45, 17.0, 10.0),
        };
        return regulated_weight_plane_figure(id, out_dir, reg, starts, 30000.0, 7.5, 11.0);
    }

    if (id == "4b") {
        RegulationConfig reg = reduced_regulation_base();
        reg.regulate_wie = true;
        std::vector<ExtendedState> starts = {
            make_initial_state(0.45, 0.45, 13.0, 5.0),
            make_initial_state(0.1, 0.05, 13.0, 10.0),
        };
        return regulated_weight_plane_figure(id, out_dir, reg, starts, 30000.0, 4.0, 11.0);
    }

    if (id == "4c" || id == "5") {
        RegulationConfig reg = reduced_regulation_base();
        reg.regulate_wee = true;
        reg.regulate_wie = true;
        if (id == "4c") {
            std::vector<ExtendedState> starts = {
                make_initial_state(0.1, 0.05, 12.0, 9.0),
                make_initial_state(0.45, 0.45, 15.0, 10.0),
                make_initial_state(0.1, 0.05, 12.5, 10.0),
            };
            return regulated_weight_plane_figure(id, out_dir, reg, starts, 30000.0, 7.5, 11.0);
        }
        // Figure 5: nullclines at the converged point G.
        Trace trace = integrate(reg, make_initial_state(0.1, 0.05, 12.0, 9.0), 0.01, 30000.0, 1.0);
        ExtendedState g = terminal_mean_state(trace, 500.0);
        SynapticWeights w{g.w_ee, reg.w_ei, g.w_ie, reg.w_ii};
        Series snull = nullcline_series_reduced(w, 1.0, "s-nullcline");
        Series signull = nullcline_series_reduced(w, 1.0, "sigma-nullcline");
        auto csv = out_dir / "fig5_nullclines.csv";
        write_nullclines_csv(csv, snull, signull);
        PlotSpec spec;
        spec.title = "Nullclines at point G";
        spec.x_label = "s";
        spec.y_label = "sigma";
        spec.x_lo = -0.55;
        spec.x_hi = 0.55;
        spec.y_lo = -0.55;
        spec.y_hi = 0.55;
        auto svg = out_dir / "fig5_nullclines.svg";
        write_line_plot_svg(svg, spec, {snull, signull});
        return {{csv, svg}, false};
    }

    if (id == "6a") {
        ScenarioConfig c;
        c.mode = "scan";
        c.variant = Variant::Full;
        c.weights = {0.0, kFullWEi, kFullWIe, kFullWIi};
        c.thresholds = {0.0, kFullHI};
        c.scan_x = {"w_ee", 0.0, 20.0, 40};
        c.scan_y = {"h_e", 0.0, 10.0, 40};
        c.t_transient = 300.0;
        c.t_measure = 300.0;
        c.output_dir = out_dir;
        c.output_prefix = "fig6a";
        return run_scenario(c);
    }

    if (id == "6b" || id == "6c") {
        RegulationConfig reg = full_wee_he_regulation();
        std::vector<ExtendedState> starts = {
            make_initial_state(0.6, 0.4, 8.0, kFullWIe, 2.0, kFullHI),
            make_initial_state(0.9, 0.9, 16.0, kFullWIe, 5.0, kFullHI),
            make_initial_state(0.1, 0.1, 14.0, kFullWIe, 1.0, kFullHI),
        };
        if (id == "6b") {
            RunResult result;
            std::vector<Series> series;
            static const char* colors[] = {"#1f6fb2", "#d65f5f", "#eec24f"};
            int k = 0;
            for (const auto& init : starts) {
                Trace trace = integrate(reg, init, 0.01, 40000.0, 2.0);
                auto csv = out_dir / ("fig6b_traj" + std::to_string(k + 1) + ".csv");
                write_trace_csv(csv, trace);
                result.artifacts.push_back(csv);
                Series s{"start " + std::to_string(k + 1), colors[k % 3], {}};
                for (const auto& x : trace.samples) s.points.emplace_back(x.w_ee, x.h_e);
                series.push_back(std::move(s));
                ++k;
            }
            PlotSpec spec;
            spec.title = "(w_ee, h_E) regulation toward point F";
            spec.x_label = "w_ee";
            spec.y_label = "h_E";
            auto svg = out_dir / "fig6b_plane.svg";
            write_line_plot_svg(svg, spec, series);
            result.artifacts.push_back(svg);
            return result;
        }
        // Figure 6c: nullclines at F.
        Trace trace = integrate(reg, starts[0], 0.01, 40000.0, 2.0);
        ExtendedState f = terminal_mean_state(trace, 500.0);
        SystemParams p;
        p.variant = Variant::Full;
        p.weights = {f.w_ee, kFullWEi, kFullWIe, kFullWIi};
        p.thresholds = {f.h_e, kFullHI};
        Series snull = nullcline_series_full(p, "s-nullcline");
        Series signull = nullcline_series_full(p, "sigma-nullcline");
        auto csv = out_dir / "fig6c_nullclines.csv";
        write_nullclines_csv(csv, snull, signull);
        PlotSpec spec;
        spec.title = "Nullclines at point F";
        spec.x_label = "s";
        spec.y_label = "sigma";
        spec.x_lo = -0.05;
        spec.x_hi = 1.05;
        spec.y_lo = -0.05;
        spec.y_hi = 1.05;
        auto svg = out_dir / "fig6c_nullclines.svg";
        write_line_plot_svg(svg, spec, {snull, signull});
        return {{csv, svg}, false};
    }

    if (id == "7") {
        RegulationConfig reg = standard_regulation();
        ExtendedState init = make_initial_state(0.6, 0.4, 12.0, 8.0, 1.0, 3.0);
        Trace trace = integrate(reg, init, 0.01, 100000.0, 5.0);
        auto csv = out_dir / "fig7_trace.csv";
        write_trace_csv(csv, trace);
        Series ww{"(w_ee, w_ie)", "#1f6fb2", {}};
        for (const auto& x : trace.samples) ww.points.emplace_back(x.w_ee, x.w_ie);
        PlotSpec spec;
        spec.title = "Standard four-parameter regulation";
        spec.x_label = "w_ee";
        spec.y_label = "w_ie";
        auto svg = out_dir / "fig7_weights.svg";
        write_line_plot_svg(svg, spec, {ww});
        return {{csv, svg}, trace.aborted};
    }

    if (id == "8a")
        return time_series_figure(id, out_dir, standard_regulation(),
                                  make_initial_state(0.6, 0.4, 12.0, 8.0, 1.0, 3.0), 200000.0,
                                  4000.0);
    if (id == "8b") {
        RegulationConfig reg = standard_regulation();
        reg.eps_he = 0.0051;
        reg.eps_hi = 0.0046;
        reg.theta_ee = 0.011;
        return time_series_figure(id, out_dir, reg,
                                  make_initial_state(0.6, 0.4, 12.0, 8.0, 1.0, 3.0), 200000.0,
                                  8000.0);
    }
    if (id == "8c") {
        RegulationConfig reg = standard_regulation();
        reg.eps_he = 0.005;
        reg.eps_hi = 0.005;
        return time_series_figure(id, out_dir, reg, chaotic_initial_state(), 200000.0, 20000.0);
    }

    throw ConfigError("unknown figure id `" + id + "`");
}

} // namespace

} // namespace critnet
