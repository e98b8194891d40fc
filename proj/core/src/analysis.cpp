#include "critnet/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace critnet {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kMergeTol = 1e-6;

Velocity variant_rhs(ActivityPoint p, const SystemParams& params) {
    if (params.variant == Variant::Reduced)
        return reduced_rhs(p, params.weights, params.beta);
    return full_rhs(p, params);
}

// One RK4 step of the plain 2-D activity system.
ActivityPoint step2d(ActivityPoint p, const SystemParams& params, double dt) {
    Velocity k1 = variant_rhs(p, params);
    Velocity k2 = variant_rhs({p.s + 0.5 * dt * k1.ds, p.sigma + 0.5 * dt * k1.dsigma}, params);
    Velocity k3 = variant_rhs({p.s + 0.5 * dt * k2.ds, p.sigma + 0.5 * dt * k2.dsigma}, params);
    Velocity k4 = variant_rhs({p.s + dt * k3.ds, p.sigma + dt * k3.dsigma}, params);
    return {p.s + dt / 6.0 * (k1.ds + 2.0 * k2.ds + 2.0 * k3.ds + k4.ds),
            p.sigma + dt / 6.0 * (k1.dsigma + 2.0 * k2.dsigma + 2.0 * k3.dsigma + k4.dsigma)};
}

double rhs_norm(ActivityPoint p, const SystemParams& params) {
    Velocity v = variant_rhs(p, params);
    return std::max(std::abs(v.ds), std::abs(v.dsigma));
}

// Newton polish of a nullcline-intersection candidate.
std::optional<ActivityPoint> newton_polish(ActivityPoint p, const SystemParams& params) {
    for (int it = 0; it < 50; ++it) {
        Velocity v = variant_rhs(p, params);
        if (std::abs(v.ds) < 1e-13 && std::abs(v.dsigma) < 1e-13) break;
        JacobianInfo j = jacobian_at(p, params);
        double det = j.det();
        if (std::abs(det) < 1e-14) break;
        p.s -= (j.d * v.ds - j.b * v.dsigma) / det;
        p.sigma -= (-j.c * v.ds + j.a * v.dsigma) / det;
    }
    if (rhs_norm(p, params) < kResidualTol) return p;
    return std::nullopt;
}

// Residual of the sigma equation along the s-nullcline; its zeros are the
// fixed points.
double nullcline_residual(double s, const SystemParams& params) {
    if (params.variant == Variant::Reduced) {
        double sigma = s_nullcline_sigma(s, params.weights, params.temperature());
        return reduced_rhs({s, sigma}, params.weights, params.beta).dsigma;
    }
    double sigma = full_s_nullcline_sigma(s, params);
    return full_rhs({s, sigma}, params).dsigma;
}

ActivityPoint point_on_s_nullcline(double s, const SystemParams& params) {
    if (params.variant == Variant::Reduced)
        return {s, s_nullcline_sigma(s, params.weights, params.temperature())};
    return {s, full_s_nullcline_sigma(s, params)};
}

struct Box {
    double lo, hi;
};

Box activity_box(Variant variant) {
    return variant == Variant::Reduced ? Box{-0.5, 0.5} : Box{0.0, 1.0};
}

// Terminal behavior of a single trajectory.
struct TerminalBehavior {
    enum Kind { Point, Cycle, Unknown } kind = Unknown;
    ActivityPoint point;
    CycleInfo cycle;
};

TerminalBehavior classify_trajectory(ActivityPoint p0, const SystemParams& params,
                                     const DetectOptions& opts) {
    ActivityPoint p = p0;
    const long transient_steps = static_cast<long>(std::ceil(opts.t_transient / opts.dt));
    const long check_window = 2000;
    ActivityPoint prev = p;
    for (long i = 0; i < transient_steps; ++i) {
        p = step2d(p, params, opts.dt);
        if (i % check_window == check_window - 1) {
            // Early exit once the trajectory has frozen onto a point.
            if (std::abs(p.s - prev.s) < 1e-14 && std::abs(p.sigma - prev.sigma) < 1e-14) break;
            prev = p;
        }
    }

    const long measure_steps = static_cast<long>(std::ceil(opts.t_measure / opts.dt));
    std::vector<double> ts, ss, sigmas;
    ts.reserve(static_cast<std::size_t>(measure_steps) + 1);
    ss.reserve(ts.capacity());
    sigmas.reserve(ts.capacity());
    double s_min = p.s, s_max = p.s, g_min = p.sigma, g_max = p.sigma;
    for (long i = 0; i <= measure_steps; ++i) {
        ts.push_back(i * opts.dt);
        ss.push_back(p.s);
        sigmas.push_back(p.sigma);
        s_min = std::min(s_min, p.s);
        s_max = std::max(s_max, p.s);
        g_min = std::min(g_min, p.sigma);
        g_max = std::max(g_max, p.sigma);
        p = step2d(p, params, opts.dt);
    }

    TerminalBehavior out;
    double diameter = std::max(s_max - s_min, g_max - g_min);
    if (diameter < opts.point_diameter) {
        out.kind = TerminalBehavior::Point;
        out.point = {0.5 * (s_min + s_max), 0.5 * (g_min + g_max)};
        return out;
    }
    if (s_max - s_min > opts.cycle_amplitude) {
        auto period = estimate_period(ts, ss);
        if (period) {
            out.kind = TerminalBehavior::Cycle;
            out.cycle.period = period->period;
            out.cycle.amplitude_s = s_max - s_min;
            out.cycle.amplitude_sigma = g_max - g_min;
            out.cycle.center = {0.5 * (s_min + s_max), 0.5 * (g_min + g_max)};
            std::size_t stride = std::max<std::size_t>(1, ss.size() / 512);
            for (std::size_t i = 0; i < ss.size(); i += stride)
                out.cycle.samples.push_back({ss[i], sigmas[i]});
            return out;
        }
    }
    return out;
}

std::vector<ActivityPoint> initial_conditions(Variant variant, const DetectOptions& opts) {
    Box box = activity_box(variant);
    double span = box.hi - box.lo;
    int g = opts.dense_grid ? 15 : opts.grid;
    std::vector<ActivityPoint> inits;
    // A small asymmetric offset keeps grid points off the unstable equilibria
    // and off the symmetry axes of the reduced system.
    for (int i = 0; i < g; ++i) {
        for (int j = 0; j < g; ++j) {
            double fs = std::fmod((i + 0.5) / g + 0.0137, 1.0);
            double fg = std::fmod((j + 0.5) / g + 0.0071, 1.0);
            fs = std::clamp(fs, 0.02, 0.98);
            fg = std::clamp(fg, 0.02, 0.98);
            inits.push_back({box.lo + fs * span, box.lo + fg * span});
        }
    }
    double m = 0.02 * span;
    inits.push_back({box.lo + m, box.lo + m});
    inits.push_back({box.hi - m, box.hi - m});
    inits.push_back({box.lo + m, box.hi - m});
    inits.push_back({box.hi - m, box.lo + m});
    return inits;
}

// Cheap per-cell classification for parameter scans. Fixed-point analysis
// settles most cells outright: no stable point means the attractor is a
// cycle (the flow is bounded), and stable points without a repelling core
// cannot coexist with one. Only cells with both get a probe trajectory.
RegionLabel classify_cell(const SystemParams& params, const DetectOptions& opts) {
    std::vector<FixedPoint> fps;
    try {
        fps = find_fixed_points(params);
    } catch (const std::exception&) {
        return RegionLabel::Unclassified;
    }
    if (fps.empty()) return RegionLabel::Unclassified;

    std::vector<const FixedPoint*> stable;
    const FixedPoint* core = nullptr; // unstable with positive determinant
    bool has_saddle = false;
    for (const auto& fp : fps) {
        if (fp.is_stable())
            stable.push_back(&fp);
        else if (fp.stability.det() > 0.0 && !core)
            core = &fp;
        else if (fp.stability.det() < 0.0)
            has_saddle = true;
    }

    auto o_label = [&](const ActivityPoint& p) {
        if (params.variant == Variant::Reduced) return RegionLabel::O;
        if (p.s > 0.8) return RegionLabel::O_h;
        if (p.s < 0.2) return RegionLabel::O_l;
        return RegionLabel::O_m;
    };
    auto by_count = [&]() {
        if (stable.size() == 1) return o_label(stable[0]->location);
        if (stable.size() == 2) return RegionLabel::T;
        return RegionLabel::Unclassified;
    };

    // A saddle always separates basins of other invariant sets; if nothing
    // else was found, the root search missed something.
    if (stable.empty()) return has_saddle ? RegionLabel::Unclassified : RegionLabel::P;
    if (!core) return by_count();

    // A trajectory leaving the repelling core lands either on a coexisting
    // cycle or on one of the stable points.
    ActivityPoint p0{core->location.s + 1.3e-3, core->location.sigma + 0.7e-3};
    TerminalBehavior tb = classify_trajectory(p0, params, opts);
    if (tb.kind == TerminalBehavior::Cycle) return RegionLabel::ThreeAttractorStrip;
    if (tb.kind == TerminalBehavior::Unknown) return RegionLabel::Unclassified;
    return by_count();
}

void apply_axis_param(SystemParams& params, const std::string& name, double value) {
    if (name == "w_ee")
        params.weights.w_ee = value;
    else if (name == "w_ie")
        params.weights.w_ie = value;
    else if (name == "h_e")
        params.thresholds.h_e = value;
    else
        throw ConfigError("unknown scan parameter: " + name);
}

// Slope of the sigma-nullcline viewed as sigma(s), at the sigma where the
// curve passes through abscissa s.
double sigma_nullcline_slope_inv(double sigma, double w_ii, double w_ie, double T) {
    double ds_dsigma = (w_ii + 2.0 * T / (1.0 - 4.0 * sigma * sigma)) / w_ie;
    return 1.0 / ds_dsigma;
}

} // namespace

std::vector<FixedPoint> find_fixed_points(const SystemParams& params) {
    std::vector<FixedPoint> out;
    auto add = [&](ActivityPoint p) {
        for (const auto& fp : out)
            if (std::abs(fp.location.s - p.s) < kMergeTol &&
                std::abs(fp.location.sigma - p.sigma) < kMergeTol)
                return;
        out.push_back({p, jacobian_at(p, params)});
    };

    Box box = activity_box(params.variant);
    if (params.beta == 0.0) {
        // Pure decay toward the box center.
        double c = 0.5 * (box.lo + box.hi);
        add({c, c});
        return out;
    }

    // Strongly saturated equilibria can sit within 1e-9 of the box edge
    // (their distance shrinks like exp(-2 beta g)), so the scan margin must
    // be far tighter than that while staying clear of the atanh domain guard.
    const double margin = 1e-10;
    const int n_scan = 8000;
    double lo = box.lo + margin, hi = box.hi - margin;
    double prev_s = lo;
    double prev_f = nullcline_residual(prev_s, params);
    std::vector<double> seeds;
    for (int i = 1; i <= n_scan; ++i) {
        double s = lo + (hi - lo) * i / n_scan;
        double f = nullcline_residual(s, params);
        if (std::isfinite(prev_f) && std::isfinite(f) && prev_f * f <= 0.0) {
            double a = prev_s, b = s, fa = prev_f;
            for (int it = 0; it < 80; ++it) {
                double mid = 0.5 * (a + b);
                double fm = nullcline_residual(mid, params);
                if (fa * fm <= 0.0)
                    b = mid;
                else {
                    a = mid;
                    fa = fm;
                }
            }
            seeds.push_back(0.5 * (a + b));
        }
        prev_s = s;
        prev_f = f;
    }
    // The symmetric fixed point can be a tangential zero the sign scan misses.
    seeds.push_back(params.variant == Variant::Reduced ? 0.0 : 0.5);

    for (double s : seeds) {
        ActivityPoint candidate;
        try {
            candidate = point_on_s_nullcline(s, params);
        } catch (const DomainError&) {
            continue;
        }
        if (auto polished = newton_polish(candidate, params)) add(*polished);
    }
    std::sort(out.begin(), out.end(),
              [](const FixedPoint& a, const FixedPoint& b) { return a.location.s < b.location.s; });
    return out;
}

AttractorReport detect_attractors(const SystemParams& params, const DetectOptions& opts) {
    AttractorReport report;
    const double merge_tol = 1e-3;
    for (const auto& init : initial_conditions(params.variant, opts)) {
        TerminalBehavior tb = classify_trajectory(init, params, opts);
        if (tb.kind == TerminalBehavior::Point) {
            bool known = false;
            for (const auto& p : report.points)
                if (std::abs(p.s - tb.point.s) < merge_tol &&
                    std::abs(p.sigma - tb.point.sigma) < merge_tol) {
                    known = true;
                    break;
                }
            if (!known) report.points.push_back(tb.point);
        } else if (tb.kind == TerminalBehavior::Cycle) {
            if (!report.cycle) report.cycle = tb.cycle;
        } else {
            ++report.unclassified_inits;
        }
    }

    bool has_cycle = report.cycle.has_value();
    std::size_t n_pts = report.points.size();
    if (has_cycle && n_pts >= 1)
        report.kind = AttractorKind::ThreeCoexisting;
    else if (has_cycle)
        report.kind = AttractorKind::LimitCycle;
    else if (n_pts == 1)
        report.kind = AttractorKind::SinglePoint;
    else if (n_pts == 2)
        report.kind = AttractorKind::TwoPoints;
    else
        report.kind = AttractorKind::Unclassified;
    return report;
}

double saddlenode_wee(double w_ei, double w_ii, double w_ie, double temperature) {
    if (w_ei <= 0.0 || w_ie <= 0.0)
        throw DegenerateError("saddlenode_wee requires positive w_ei and w_ie");
    const double T = temperature;
    SynapticWeights w{0.0, w_ei, w_ie, w_ii};

    // At a tangency point s*, both the nullcline gap and its s-derivative
    // vanish; each condition determines w_ee as a function of s:
    //   value:  w_ee = (w_ei g(s) + T atanh 2s) / s
    //   slope:  w_ee = w_ei g'(s) + 2T / (1 - 4 s^2)
    // where g is the sigma-nullcline viewed as sigma(s).
    auto wee_from_value = [&](double s) {
        double g = sigma_nullcline_inverse(s, w, T);
        return (w_ei * g + T * std::atanh(2.0 * s)) / s;
    };
    auto wee_from_slope = [&](double s) {
        double g = sigma_nullcline_inverse(s, w, T);
        return w_ei * sigma_nullcline_slope_inv(g, w_ii, w_ie, T) +
               2.0 * T / (1.0 - 4.0 * s * s);
    };
    auto gap = [&](double s) { return wee_from_value(s) - wee_from_slope(s); };

    // The gap vanishes trivially as s -> 0 (degenerate tangency at the
    // origin); scan away from it for the corner contact.
    const double s_lo = 0.03, s_hi = 0.49999;
    const int n_scan = 3000;
    double hopf = hopf_threshold_wee(w_ii, T);
    double best = -1.0;
    double prev_s = s_lo, prev_f = gap(prev_s);
    for (int i = 1; i <= n_scan; ++i) {
        double s = s_lo + (s_hi - s_lo) * i / n_scan;
        double f = gap(s);
        if (prev_f * f <= 0.0 && std::isfinite(prev_f) && std::isfinite(f)) {
            double a = prev_s, b = s, fa = prev_f;
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (a + b);
                double fm = gap(mid);
                if (fa * fm <= 0.0)
                    b = mid;
                else {
                    a = mid;
                    fa = fm;
                }
            }
            double s_star = 0.5 * (a + b);
            double wee = wee_from_value(s_star);
            if (wee > hopf && wee <= 100.0 && (best < 0.0 || wee < best)) best = wee;
        }
        prev_s = s;
        prev_f = f;
    }
    if (best < 0.0)
        throw NoTangencyError("no nullcline tangency with w_ee in (hopf threshold, 100]");
    return best;
}

double pitchfork_boundary_wee(double w_ei, double w_ii, double w_ie, double temperature) {
    double T = temperature;
    double wee = 2.0 * T + w_ei * w_ie / (2.0 * T + w_ii);
    if (wee <= 0.0) throw NotApplicableError("origin determinant has no zero for w_ee > 0");
    // At the determinant zero the eigenvalues are 0 and the trace. When the
    // zero falls above the Hopf threshold, the origin is already unstable
    // (positive trace) before the determinant crossing, so the crossing is
    // not the boundary between one and two attractors.
    if (wee >= hopf_threshold_wee(w_ii, T))
        throw NotApplicableError(
            "origin loses stability through the trace first; no pitchfork boundary");
    return wee;
}

std::string region_label_name(RegionLabel label) {
    switch (label) {
        case RegionLabel::O: return "O";
        case RegionLabel::O_h: return "O_h";
        case RegionLabel::O_m: return "O_m";
        case RegionLabel::O_l: return "O_l";
        case RegionLabel::P: return "P";
        case RegionLabel::T: return "T";
        case RegionLabel::ThreeAttractorStrip: return "three_attractor";
        default: return "unclassified";
    }
}

double BifurcationMap::unclassified_fraction() const {
    if (cells.empty()) return 0.0;
    auto n = std::count(cells.begin(), cells.end(), RegionLabel::Unclassified);
    return static_cast<double>(n) / cells.size();
}

BifurcationMap scan_region_map(const AxisSpec& x_axis, const AxisSpec& y_axis,
                               const SystemParams& fixed_params, const DetectOptions& opts,
                               int n_threads) {
    if (x_axis.n < 1 || y_axis.n < 1) throw ConfigError("scan grid must be at least 1x1");
    BifurcationMap map;
    map.x = x_axis;
    map.y = y_axis;
    map.base = fixed_params;
    map.cells.assign(static_cast<std::size_t>(x_axis.n) * y_axis.n, RegionLabel::Unclassified);

    if (n_threads <= 0) n_threads = static_cast<int>(std::thread::hardware_concurrency());
    n_threads = std::max(1, n_threads);

    std::atomic<int> next{0};
    const int total = x_axis.n * y_axis.n;
    auto worker = [&] {
        for (;;) {
            int cell = next.fetch_add(1);
            if (cell >= total) return;
            int ix = cell % x_axis.n;
            int iy = cell / x_axis.n;
            SystemParams p = fixed_params;
            apply_axis_param(p, x_axis.param, x_axis.value_at(ix));
            apply_axis_param(p, y_axis.param, y_axis.value_at(iy));
            map.cells[static_cast<std::size_t>(cell)] = classify_cell(p, opts);
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return map;
}

std::vector<ProfilePoint> covariance_profile(const std::vector<double>& wee_values,
                                             const SynapticWeights& base, double beta,
                                             const ProfileOptions& opts) {
    RegulationConfig config;
    config.variant = Variant::Reduced;
    config.beta = beta;
    config.w_ei = base.w_ei;
    config.w_ii = base.w_ii;
    config.rho = opts.rho;

    std::vector<ProfilePoint> profile;
    profile.reserve(wee_values.size());
    for (double wee : wee_values) {
        ExtendedState init = make_initial_state(0.1, 0.05, wee, base.w_ie);
        Trace trace = integrate(config, init, opts.dt, opts.t_transient + opts.t_measure, 0.05);
        double sum = 0.0;
        long count = 0;
        for (const auto& x : trace.samples) {
            if (x.t < opts.t_transient) continue;
            sum += cov_ee(x);
            ++count;
        }
        profile.push_back({wee, count > 0 ? sum / count : 0.0});
    }
    return profile;
}

double nullcline_overlap_metric(const SynapticWeights& w, double temperature) {
    const int n = 161;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = -0.4 + 0.8 * i / (n - 1);
        double a = s_nullcline_sigma(s, w, temperature);
        double b = sigma_nullcline_inverse(s, w, temperature);
        worst = std::max(worst, std::abs(a - b));
    }
    return worst;
}

std::optional<PeriodEstimate> estimate_period(const std::vector<double>& t,
                                              const std::vector<double>& x) {
    if (x.size() < 4) return std::nullopt;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());

    std::vector<double> crossings;
    for (std::size_t i = 1; i < x.size(); ++i) {
        if (x[i - 1] < mean && x[i] >= mean) {
            double f = (mean - x[i - 1]) / (x[i] - x[i - 1]);
            crossings.push_back(t[i - 1] + f * (t[i] - t[i - 1]));
        }
    }
    if (crossings.size() < 3) return std::nullopt;

    std::vector<double> intervals;
    for (std::size_t i = 1; i < crossings.size(); ++i)
        intervals.push_back(crossings[i] - crossings[i - 1]);
    double m = 0.0;
    for (double v : intervals) m += v;
    m /= static_cast<double>(intervals.size());
    double var = 0.0;
    for (double v : intervals) var += (v - m) * (v - m);
    var /= static_cast<double>(intervals.size());

    PeriodEstimate est;
    est.period = m;
    est.cv = m > 0.0 ? std::sqrt(var) / m : 0.0;
    est.n_cycles = static_cast<int>(intervals.size());
    return est;
}

std::vector<double> phase_transition_times(const std::vector<double>& t,
                                           const std::vector<double>& x, double low,
                                           double high, double min_dwell) {
    // Sustained high/low episodes; an onset whose label differs from the
    // previous sustained episode counts as a phase transition.
    std::vector<double> events;
    int current = 0; // +1 high, -1 low, 0 mid
    double entered = 0.0;
    int last_sustained = 0;
    bool counted = false;
    for (std::size_t i = 0; i < x.size(); ++i) {
        int band = x[i] > high ? 1 : (x[i] < low ? -1 : 0);
        if (band != current) {
            current = band;
            entered = t[i];
            counted = false;
        }
        if (current != 0 && !counted && t[i] - entered >= min_dwell) {
            if (current != last_sustained) events.push_back(entered);
            last_sustained = current;
            counted = true;
        }
    }
    return events;
}

double lyapunov_estimate(const RegulationConfig& config, const ExtendedState& init, double dt,
                         double t_transient, double t_measure, double renorm_every) {
    config.validate();
    auto rhs = [&config](const StateVec& v) { return regulated_rhs(from_vec(v, 0.0), config); };

    StateVec y = to_vec(init);
    const long transient_steps = static_cast<long>(std::ceil(t_transient / dt));
    for (long i = 0; i < transient_steps; ++i) y = rk4_step(rhs, y, dt);

    const double d0 = 1e-8;
    StateVec z = y;
    z[0] += d0;

    const long renorm_steps = std::max(1L, static_cast<long>(std::llround(renorm_every / dt)));
    const long measure_steps = static_cast<long>(std::ceil(t_measure / dt));
    double log_sum = 0.0;
    for (long i = 0; i < measure_steps; ++i) {
        y = rk4_step(rhs, y, dt);
        z = rk4_step(rhs, z, dt);
        if ((i + 1) % renorm_steps == 0) {
            double d2 = 0.0;
            for (std::size_t k = 0; k < y.size(); ++k) d2 += (z[k] - y[k]) * (z[k] - y[k]);
            double d = std::sqrt(d2);
            if (d <= 0.0) d = 1e-300;
            log_sum += std::log(d / d0);
            for (std::size_t k = 0; k < y.size(); ++k)
                z[k] = y[k] + (z[k] - y[k]) * (d0 / d);
        }
    }
    return log_sum / (measure_steps * dt);
}

} // namespace critnet
