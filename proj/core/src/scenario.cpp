#include "critnet/scenario.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "critnet/glauber.hpp"
#include "critnet/io.hpp"

namespace critnet {

namespace {

struct RawEntry {
    std::string value;
    int line = 0;
};

using RawConfig = std::map<std::string, RawEntry>;

RawConfig tokenize(const std::string& text) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected `key = value`");
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t\r");
            auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty key or value");
        if (raw.count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key `" + key + "`");
        raw[key] = {value, lineno};
    }
    return raw;
}

class Reader {
  public:
    explicit Reader(const RawConfig& raw) : raw_(raw) {}

    bool has(const std::string& key) {
        used_.insert(key);
        return raw_.count(key) > 0;
    }
    std::string str(const std::string& key, const std::string& fallback) {
        used_.insert(key);
        auto it = raw_.find(key);
        return it == raw_.end() ? fallback : it->second.value;
    }
    double num(const std::string& key, double fallback) {
        used_.insert(key);
        auto it = raw_.find(key);
        if (it == raw_.end()) return fallback;
        try {
            std::size_t pos = 0;
            double v = std::stod(it->second.value, &pos);
            if (pos != it->second.value.size()) throw std::invalid_argument("trailing text");
            return v;
        } catch (const std::exception&) {
            throw ConfigError("line " + std::to_string(it->second.line) + ": key `" + key +
                              "`: not a number: " + it->second.value);
        }
    }
    long integer(const std::string& key, long fallback) {
        double v = num(key, static_cast<double>(fallback));
        long n = static_cast<long>(v);
        if (static_cast<double>(n) != v) {
            auto it = raw_.find(key);
            throw ConfigError("line " + std::to_string(it->second.line) + ": key `" + key +
                              "`: expected an integer");
        }
        return n;
    }
    bool boolean(const std::string& key, bool fallback) {
        used_.insert(key);
        auto it = raw_.find(key);
        if (it == raw_.end()) return fallback;
        if (it->second.value == "true") return true;
        if (it->second.value == "false") return false;
        throw ConfigError("line " + std::to_string(it->second.line) + ": key `" + key +
                          "`: expected true or false");
    }
    void reject_unknown() const {
        for (const auto& [key, entry] : raw_)
            if (!used_.count(key))
                throw ConfigError("line " + std::to_string(entry.line) + ": unknown key `" + key +
                                  "`");
    }

  private:
    const RawConfig& raw_;
    std::set<std::string> used_;
};

const std::set<std::string> kModes = {"simulate", "meanfield",    "regulate",
                                      "scan",     "fixed-points", "profile"};

} // namespace

SystemParams ScenarioConfig::system_params() const {
    SystemParams p;
    p.weights = weights;
    p.thresholds = thresholds;
    p.beta = beta;
    p.variant = variant;
    return p;
}

RegulationConfig ScenarioConfig::regulation_config() const {
    RegulationConfig c;
    c.variant = variant;
    c.beta = beta;
    c.w_ei = weights.w_ei;
    c.w_ii = weights.w_ii;
    c.rho = rho;
    c.regulate_wee = regulate_wee;
    c.regulate_wie = regulate_wie;
    c.regulate_he = regulate_he;
    c.regulate_hi = regulate_hi;
    c.eps_ee = eps_ee;
    c.theta_ee = theta_ee;
    c.eps_ie = eps_ie;
    c.theta_ie = theta_ie;
    c.eps_he = eps_he;
    c.theta_he = theta_he;
    c.eps_hi = eps_hi;
    c.theta_hi = theta_hi;
    return c;
}

void ScenarioConfig::validate() const {
    if (!kModes.count(mode)) throw ConfigError("unknown mode `" + mode + "`");
    if (weights.w_ee < 0.0 || weights.w_ei < 0.0 || weights.w_ie < 0.0 || weights.w_ii < 0.0)
        throw ConfigError("synaptic weights must be non-negative");
    if (beta < 0.0) throw ConfigError("beta must be non-negative");
    if (dt <= 0.0) throw ConfigError("run.dt must be positive");
    if (t_end <= 0.0) throw ConfigError("run.t_end must be positive");
    if (sample_every <= 0.0) throw ConfigError("run.sample_every must be positive");
    if (glauber_n < 1) throw ConfigError("glauber.n must be at least 1");
    if (mode == "scan") {
        if (scan_x.n < 10 || scan_y.n < 10) throw ConfigError("scan grid must be at least 10x10");
        if (scan_x.param == scan_y.param)
            throw ConfigError("scan axes must name distinct parameters");
    }
    if (variant == Variant::Reduced) {
        if (std::abs(init_s) > 0.5 || std::abs(init_sigma) > 0.5)
            throw ConfigError("reduced-variant initial activity must lie in [-0.5, 0.5]");
    } else {
        if (init_s < 0.0 || init_s > 1.0 || init_sigma < 0.0 || init_sigma > 1.0)
            throw ConfigError("full-variant initial activity must lie in [0, 1]");
    }
    regulation_config().validate();
}

ScenarioConfig parse_scenario_text(const std::string& text) {
    RawConfig raw = tokenize(text);
    Reader r(raw);
    ScenarioConfig c;
    c.mode = r.str("mode", c.mode);

    std::string variant = r.str("variant", "reduced");
    if (variant == "reduced")
        c.variant = Variant::Reduced;
    else if (variant == "full")
        c.variant = Variant::Full;
    else
        throw ConfigError("variant must be `full` or `reduced`, got `" + variant + "`");

    c.beta = r.num("beta", c.beta);
    c.weights.w_ee = r.num("weights.w_ee", c.weights.w_ee);
    c.weights.w_ei = r.num("weights.w_ei", c.weights.w_ei);
    c.weights.w_ie = r.num("weights.w_ie", c.weights.w_ie);
    c.weights.w_ii = r.num("weights.w_ii", c.weights.w_ii);
    c.thresholds.h_e = r.num("thresholds.h_e", c.thresholds.h_e);
    c.thresholds.h_i = r.num("thresholds.h_i", c.thresholds.h_i);

    c.rho = r.num("regulation.rho", c.rho);
    c.regulate_wee = r.boolean("regulation.regulate_wee", c.regulate_wee);
    c.regulate_wie = r.boolean("regulation.regulate_wie", c.regulate_wie);
    c.regulate_he = r.boolean("regulation.regulate_he", c.regulate_he);
    c.regulate_hi = r.boolean("regulation.regulate_hi", c.regulate_hi);
    c.eps_ee = r.num("regulation.eps_ee", c.eps_ee);
    c.theta_ee = r.num("regulation.theta_ee", c.theta_ee);
    c.eps_ie = r.num("regulation.eps_ie", c.eps_ie);
    c.theta_ie = r.num("regulation.theta_ie", c.theta_ie);
    c.eps_he = r.num("regulation.eps_he", c.eps_he);
    c.theta_he = r.num("regulation.theta_he", c.theta_he);
    c.eps_hi = r.num("regulation.eps_hi", c.eps_hi);
    c.theta_hi = r.num("regulation.theta_hi", c.theta_hi);

    c.dt = r.num("run.dt", c.dt);
    c.t_end = r.num("run.t_end", c.t_end);
    c.sample_every = r.num("run.sample_every", c.sample_every);
    c.t_transient = r.num("run.t_transient", c.t_transient);
    c.t_measure = r.num("run.t_measure", c.t_measure);

    c.init_s = r.num("init.s", c.init_s);
    c.init_sigma = r.num("init.sigma", c.init_sigma);

    c.glauber_n = static_cast<int>(r.integer("glauber.n", c.glauber_n));
    c.seed = static_cast<std::uint64_t>(r.integer("glauber.seed", static_cast<long>(c.seed)));
    if (r.has("glauber.initial_value"))
        c.glauber_initial_value = static_cast<int>(r.integer("glauber.initial_value", 0));

    c.scan_x.param = r.str("scan.x_param", c.scan_x.param);
    c.scan_x.lo = r.num("scan.x_lo", c.scan_x.lo);
    c.scan_x.hi = r.num("scan.x_hi", c.scan_x.hi);
    c.scan_x.n = static_cast<int>(r.integer("scan.x_n", c.scan_x.n));
    c.scan_y.param = r.str("scan.y_param", c.scan_y.param);
    c.scan_y.lo = r.num("scan.y_lo", c.scan_y.lo);
    c.scan_y.hi = r.num("scan.y_hi", c.scan_y.hi);
    c.scan_y.n = static_cast<int>(r.integer("scan.y_n", c.scan_y.n));
    c.scan_threads = static_cast<int>(r.integer("scan.threads", c.scan_threads));
    c.dense_grid = r.boolean("scan.dense_grid", c.dense_grid);

    c.profile_lo = r.num("profile.w_ee_lo", c.profile_lo);
    c.profile_hi = r.num("profile.w_ee_hi", c.profile_hi);
    c.profile_n = static_cast<int>(r.integer("profile.n", c.profile_n));

    c.output_dir = r.str("output.dir", c.output_dir.string());
    c.output_prefix = r.str("output.prefix", c.output_prefix);

    r.reject_unknown();
    c.validate();
    return c;
}

ScenarioConfig parse_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario_text(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

std::string serialize_scenario(const ScenarioConfig& c) {
    std::ostringstream out;
    out.precision(17);
    out << "mode = " << c.mode << '\n';
    out << "variant = " << (c.variant == Variant::Reduced ? "reduced" : "full") << '\n';
    out << "beta = " << c.beta << '\n';
    out << "weights.w_ee = " << c.weights.w_ee << '\n';
    out << "weights.w_ei = " << c.weights.w_ei << '\n';
    out << "weights.w_ie = " << c.weights.w_ie << '\n';
    out << "weights.w_ii = " << c.weights.w_ii << '\n';
    out << "thresholds.h_e = " << c.thresholds.h_e << '\n';
    out << "thresholds.h_i = " << c.thresholds.h_i << '\n';
    out << "regulation.rho = " << c.rho << '\n';
    out << "regulation.regulate_wee = " << (c.regulate_wee ? "true" : "false") << '\n';
    out << "regulation.regulate_wie = " << (c.regulate_wie ? "true" : "false") << '\n';
    out << "regulation.regulate_he = " << (c.regulate_he ? "true" : "false") << '\n';
    out << "regulation.regulate_hi = " << (c.regulate_hi ? "true" : "false") << '\n';
    out << "regulation.eps_ee = " << c.eps_ee << '\n';
    out << "regulation.theta_ee = " << c.theta_ee << '\n';
    out << "regulation.eps_ie = " << c.eps_ie << '\n';
    out << "regulation.theta_ie = " << c.theta_ie << '\n';
    out << "regulation.eps_he = " << c.eps_he << '\n';
    out << "regulation.theta_he = " << c.theta_he << '\n';
    out << "regulation.eps_hi = " << c.eps_hi << '\n';
    out << "regulation.theta_hi = " << c.theta_hi << '\n';
    out << "run.dt = " << c.dt << '\n';
    out << "run.t_end = " << c.t_end << '\n';
    out << "run.sample_every = " << c.sample_every << '\n';
    out << "run.t_transient = " << c.t_transient << '\n';
    out << "run.t_measure = " << c.t_measure << '\n';
    out << "init.s = " << c.init_s << '\n';
    out << "init.sigma = " << c.init_sigma << '\n';
    out << "glauber.n = " << c.glauber_n << '\n';
    out << "glauber.seed = " << c.seed << '\n';
    if (c.glauber_initial_value)
        out << "glauber.initial_value = " << *c.glauber_initial_value << '\n';
    out << "scan.x_param = " << c.scan_x.param << '\n';
    out << "scan.x_lo = " << c.scan_x.lo << '\n';
    out << "scan.x_hi = " << c.scan_x.hi << '\n';
    out << "scan.x_n = " << c.scan_x.n << '\n';
    out << "scan.y_param = " << c.scan_y.param << '\n';
    out << "scan.y_lo = " << c.scan_y.lo << '\n';
    out << "scan.y_hi = " << c.scan_y.hi << '\n';
    out << "scan.y_n = " << c.scan_y.n << '\n';
    out << "scan.threads = " << c.scan_threads << '\n';
    out << "scan.dense_grid = " << (c.dense_grid ? "true" : "false") << '\n';
    out << "profile.w_ee_lo = " << c.profile_lo << '\n';
    out << "profile.w_ee_hi = " << c.profile_hi << '\n';
    out << "profile.n = " << c.profile_n << '\n';
    out << "output.dir = " << c.output_dir.string() << '\n';
    out << "output.prefix = " << c.output_prefix << '\n';
    return out.str();
}

std::string scenario_hash(const ScenarioConfig& config) {
    std::string text = serialize_scenario(config);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

namespace {

void write_run_manifest(const ScenarioConfig& c, const std::filesystem::path& path,
                        bool aborted) {
    write_manifest(path, {
                             {"tool_version", "0.1.0"},
                             {"config_hash", scenario_hash(c)},
                             {"mode", c.mode},
                             {"seed", std::to_string(c.seed)},
                             {"dt", std::to_string(c.dt)},
                             {"aborted", aborted ? "true" : "false"},
                         });
}

std::vector<Series> trace_time_series(const Trace& trace) {
    Series s{"s", "#1f6fb2", {}}, sigma{"sigma", "#d65f5f", {}};
    for (const auto& x : trace.samples) {
        s.points.emplace_back(x.t, x.s);
        sigma.points.emplace_back(x.t, x.sigma);
    }
    return {s, sigma};
}

} // namespace

RunResult run_scenario(const ScenarioConfig& config) {
    config.validate();
    std::filesystem::create_directories(config.output_dir);
    auto out = [&](const std::string& name) { return config.output_dir / name; };
    const std::string prefix = config.output_prefix;
    RunResult result;

    if (config.mode == "simulate") {
        GlauberConfig g;
        g.n = config.glauber_n;
        g.params = config.system_params();
        g.params.variant = Variant::Full;
        g.seed = config.seed;
        g.t_end = config.t_end;
        g.sample_every = config.sample_every;
        g.initial_value = config.glauber_initial_value;
        PopulationTrace trace = simulate(g);
        auto csv = out(prefix + "_glauber.csv");
        write_population_trace_csv(csv, trace);
        Series e{"mean_e", "#1f6fb2", {}}, i{"mean_i", "#d65f5f", {}};
        for (std::size_t k = 0; k < trace.t.size(); ++k) {
            e.points.emplace_back(trace.t[k], trace.mean_e[k]);
            i.points.emplace_back(trace.t[k], trace.mean_i[k]);
        }
        PlotSpec spec;
        spec.title = "Glauber population means (N=" + std::to_string(g.n) + ")";
        spec.x_label = "t";
        spec.y_label = "mean activity";
        auto svg = out(prefix + "_glauber.svg");
        write_line_plot_svg(svg, spec, {e, i});
        result.artifacts = {csv, svg};
    } else if (config.mode == "meanfield" || config.mode == "regulate") {
        RegulationConfig reg = config.regulation_config();
        if (config.mode == "meanfield")
            reg.regulate_wee = reg.regulate_wie = reg.regulate_he = reg.regulate_hi = false;
        ExtendedState init =
            make_initial_state(config.init_s, config.init_sigma, config.weights.w_ee,
                               config.weights.w_ie, config.thresholds.h_e, config.thresholds.h_i);
        Trace trace = integrate(reg, init, config.dt, config.t_end, config.sample_every);
        result.aborted = trace.aborted;
        auto csv = out(prefix + "_trace.csv");
        write_trace_csv(csv, trace);
        PlotSpec spec;
        spec.title = config.mode == "meanfield" ? "Mean-field activity" : "Regulated run";
        spec.x_label = "t";
        spec.y_label = "activity";
        auto svg = out(prefix + "_trace.svg");
        write_line_plot_svg(svg, spec, trace_time_series(trace));
        result.artifacts = {csv, svg};
        if (config.mode == "regulate") {
            Series ww{"(w_ee, w_ie)", "#1f6fb2", {}};
            for (const auto& x : trace.samples) ww.points.emplace_back(x.w_ee, x.w_ie);
            PlotSpec wspec;
            wspec.title = "Weight-plane trajectory";
            wspec.x_label = "w_ee";
            wspec.y_label = "w_ie";
            auto wsvg = out(prefix + "_weights.svg");
            write_line_plot_svg(wsvg, wspec, {ww});
            result.artifacts.push_back(wsvg);
        }
    } else if (config.mode == "fixed-points") {
        auto fps = find_fixed_points(config.system_params());
        auto csv = out(prefix + "_fixed_points.csv");
        std::ofstream f(csv);
        f.precision(12);
        f << "s,sigma,stability,re_lambda1,im_lambda1\n";
        for (const auto& fp : fps)
            f << fp.location.s << ',' << fp.location.sigma << ','
              << (fp.is_stable() ? "stable" : "unstable") << ',' << fp.stability.lambda1.real()
              << ',' << fp.stability.lambda1.imag() << '\n';
        result.artifacts = {csv};
    } else if (config.mode == "scan") {
        DetectOptions opts;
        opts.t_transient = config.t_transient;
        opts.t_measure = config.t_measure;
        opts.dt = config.dt;
        opts.dense_grid = config.dense_grid;
        BifurcationMap map = scan_region_map(config.scan_x, config.scan_y,
                                             config.system_params(), opts, config.scan_threads);
        auto csv = out(prefix + "_map.csv");
        write_region_map_csv(csv, map);
        auto svg = out(prefix + "_map.svg");
        write_region_map_svg(svg, map, "Region map (" + map.x.param + ", " + map.y.param + ")");
        result.artifacts = {csv, svg};
    } else if (config.mode == "profile") {
        std::vector<double> wee;
        for (int i = 0; i < config.profile_n; ++i)
            wee.push_back(config.profile_lo +
                          (config.profile_hi - config.profile_lo) * i /
                              std::max(1, config.profile_n - 1));
        ProfileOptions opts;
        opts.rho = config.rho;
        opts.t_transient = config.t_transient;
        opts.t_measure = config.t_measure;
        opts.dt = config.dt;
        auto profile = covariance_profile(wee, config.weights, config.beta, opts);
        auto csv = out(prefix + "_profile.csv");
        write_profile_csv(csv, profile);
        Series s{"cov_ee mean", "#1f6fb2", {}};
        for (const auto& p : profile) s.points.emplace_back(p.w_ee, p.cov_mean);
        PlotSpec spec;
        spec.title = "Covariance profile (w_ie = " + std::to_string(config.weights.w_ie) + ")";
        spec.x_label = "w_ee";
        spec.y_label = "mean c_ee";
        auto svg = out(prefix + "_profile.svg");
        write_line_plot_svg(svg, spec, {s});
        result.artifacts = {csv, svg};
    }

    auto manifest = out(prefix + "_manifest.txt");
    write_run_manifest(config, manifest, result.aborted);
    result.artifacts.push_back(manifest);
    return result;
}

} // namespace critnet
