// Acceptance suite: one self-contained check per shipping criterion.
//
// Usage: acceptance [criterion ...]
// With no arguments all 13 criteria run. Prints one PASS/FAIL line per
// criterion; the exit status is the number of failures.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "critnet/analysis.hpp"
#include "critnet/dynamics.hpp"
#include "critnet/evolution.hpp"
#include "critnet/figures.hpp"
#include "critnet/glauber.hpp"

using namespace critnet;

namespace {

struct Check {
    bool ok = true;
    std::ostringstream why;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (!ok) why << "; ";
            why << what;
            ok = false;
        }
    }
};

SystemParams reduced(double w_ee, double w_ei, double w_ie, double w_ii) {
    SystemParams p;
    p.weights = {w_ee, w_ei, w_ie, w_ii};
    p.variant = Variant::Reduced;
    return p;
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(6);
    out << v;
    return out.str();
}

double tail_mean(const std::vector<double>& v, std::size_t from) {
    return std::accumulate(v.begin() + from, v.end(), 0.0) / (v.size() - from);
}

// ---------------------------------------------------------------------------

// 1. Hopf boundary: analytic threshold exact; attractor flips across it.
Check criterion_1() {
    Check c;
    c.require(hopf_threshold_wee(2.0, 1.0) == 6.0,
              "hopf_threshold_wee(2,1) != 6, got " + fmt(hopf_threshold_wee(2.0, 1.0)));

    auto below = detect_attractors(reduced(5.8, 10.0, 8.0, 2.0));
    c.require(below.kind == AttractorKind::SinglePoint, "w_ee=5.8 is not a single point");
    if (below.kind == AttractorKind::SinglePoint) {
        c.require(std::abs(below.points[0].s) < 1e-3 && std::abs(below.points[0].sigma) < 1e-3,
                  "w_ee=5.8 attractor is off-origin");
    }
    auto above = detect_attractors(reduced(6.2, 10.0, 8.0, 2.0));
    c.require(above.kind == AttractorKind::LimitCycle, "w_ee=6.2 is not a limit cycle");
    return c;
}

// 2. Saddlenode value, tangency residual, attractor flip.
Check criterion_2() {
    Check c;
    double w_hat = saddlenode_wee(10.0, 2.0, 8.0, 1.0);
    c.require(std::abs(w_hat - 14.22) <= 0.05, "saddlenode_wee = " + fmt(w_hat));

    // Tangency residual: the minimal vertical distance between the two
    // nullclines away from the origin must vanish at w_hat.
    SynapticWeights w{w_hat, 10.0, 8.0, 2.0};
    auto gap = [&](double s) {
        return s_nullcline_sigma(s, w, 1.0) - sigma_nullcline_inverse(s, w, 1.0);
    };
    double best_s = 0.0, best = 1e300;
    for (int i = 0; i <= 4000; ++i) {
        double s = 0.05 + (0.4999 - 0.05) * i / 4000.0;
        double g = std::abs(gap(s));
        if (g < best) {
            best = g;
            best_s = s;
        }
    }
    // golden-section refinement of |gap| around the scan minimum
    {
        double a = best_s - 2e-4, b = best_s + 2e-4;
        const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
        double f1 = std::abs(gap(x1)), f2 = std::abs(gap(x2));
        for (int it = 0; it < 200; ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - phi * (b - a);
                f1 = std::abs(gap(x1));
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + phi * (b - a);
                f2 = std::abs(gap(x2));
            }
        }
        best = std::min(f1, f2);
    }
    c.require(best < 1e-8, "tangency residual " + fmt(best));

    auto before = detect_attractors(reduced(w_hat - 0.1, 10.0, 8.0, 2.0));
    auto after = detect_attractors(reduced(w_hat + 0.1, 10.0, 8.0, 2.0));
    c.require(before.kind == AttractorKind::LimitCycle,
              "w_hat - 0.1 should still carry the cycle");
    c.require(after.kind == AttractorKind::TwoPoints,
              "w_hat + 0.1 should be bistable");
    return c;
}

// 3. Fixed-point counts and stability split.
Check criterion_3() {
    Check c;
    auto one = find_fixed_points(reduced(12.0, 10.0, 8.0, 2.0));
    c.require(one.size() == 1, "w_ee=12: expected 1 fixed point, got " + fmt(one.size()));

    auto five = find_fixed_points(reduced(15.0, 10.0, 8.0, 2.0));
    c.require(five.size() == 5, "w_ee=15: expected 5 fixed points, got " + fmt(five.size()));
    int stable = 0;
    for (const auto& fp : five) stable += fp.is_stable() ? 1 : 0;
    c.require(stable == 2, "w_ee=15: expected 2 stable, got " + fmt(stable));
    return c;
}

// 4. Region map over (w_ee, w_ie).
Check criterion_4() {
    Check c;
    AxisSpec x{"w_ee", 0.0, 20.0, 40};
    AxisSpec y{"w_ie", 0.0, 20.0, 40};
    SystemParams base = reduced(0.0, 10.0, 0.0, 2.0);
    BifurcationMap map = scan_region_map(x, y, base);

    c.require(map.unclassified_fraction() <= 0.05,
              "unclassified fraction " + fmt(map.unclassified_fraction()));

    bool saw_o = false, saw_p = false, saw_t = false;
    auto is_o = [](RegionLabel l) {
        return l == RegionLabel::O || l == RegionLabel::O_h || l == RegionLabel::O_m ||
               l == RegionLabel::O_l;
    };
    for (auto l : map.cells) {
        if (is_o(l)) saw_o = true;
        if (l == RegionLabel::P) saw_p = true;
        if (l == RegionLabel::T) saw_t = true;
    }
    c.require(saw_o && saw_p && saw_t, "missing a region label");

    // Per row: P is a contiguous band between O (left) and T (right), and
    // wherever w_ie >= 5 the O/P boundary sits at w_ee = 6 +- 0.5.
    for (int iy = 0; iy < y.n; ++iy) {
        int first_p = -1, last_p = -1;
        for (int ix = 0; ix < x.n; ++ix) {
            if (map.at(ix, iy) == RegionLabel::P) {
                if (first_p < 0) first_p = ix;
                last_p = ix;
            }
        }
        if (first_p < 0) continue;
        for (int ix = 0; ix < x.n; ++ix) {
            RegionLabel l = map.at(ix, iy);
            if (is_o(l) && ix > last_p)
                c.require(false, "row w_ie=" + fmt(y.value_at(iy)) + ": O right of P");
            if (l == RegionLabel::T && ix < first_p)
                c.require(false, "row w_ie=" + fmt(y.value_at(iy)) + ": T left of P");
            if (ix > first_p && ix < last_p && (is_o(l) || l == RegionLabel::T))
                c.require(false, "row w_ie=" + fmt(y.value_at(iy)) + ": P band broken");
        }
        if (y.value_at(iy) >= 5.0) {
            double boundary = 0.5 * (x.value_at(first_p) + x.value_at(first_p - 1));
            c.require(std::abs(boundary - 6.0) <= 0.5, "row w_ie=" + fmt(y.value_at(iy)) +
                                                           ": O/P boundary at " + fmt(boundary));
        }
    }
    return c;
}

// 5. Three-attractor strip.
Check criterion_5() {
    Check c;
    DetectOptions opts;
    opts.dense_grid = true;
    auto inside = detect_attractors(reduced(9.01, 10.0, 2.75, 2.0), opts);
    c.require(inside.kind == AttractorKind::ThreeCoexisting,
              "w_ee=9.01 should show a cycle plus two points");
    auto low = detect_attractors(reduced(8.9, 10.0, 2.75, 2.0), opts);
    auto high = detect_attractors(reduced(9.1, 10.0, 2.75, 2.0), opts);
    c.require(low.kind != AttractorKind::ThreeCoexisting, "w_ee=8.9 still shows coexistence");
    c.require(high.kind != AttractorKind::ThreeCoexisting, "w_ee=9.1 still shows coexistence");
    return c;
}

// 6. Covariance profile along w_ie = 8.
Check criterion_6() {
    Check c;
    double w_sn = saddlenode_wee(10.0, 2.0, 8.0, 1.0);
    std::vector<double> wee = {5.5, 6.5, 8.0, 10.5, w_sn + 0.2};
    auto profile = covariance_profile(wee, {0.0, 10.0, 8.0, 2.0}, 1.0);
    c.require(profile[0].cov_mean < 1e-4, "c(5.5) = " + fmt(profile[0].cov_mean));
    c.require(profile[1].cov_mean > 1e-4, "c(6.5) not positive");
    c.require(profile[1].cov_mean < profile[2].cov_mean &&
                  profile[2].cov_mean < profile[3].cov_mean,
              "profile does not rise through the cycle region");
    c.require(profile[4].cov_mean < 1e-4,
              "c(w_sn + 0.2) = " + fmt(profile[4].cov_mean));
    return c;
}

// 7. Single-weight regulation onto the saddlenode line.
Check criterion_7() {
    Check c;
    const double w_ie = 9.0;
    double target = saddlenode_wee(10.0, 6.0, w_ie, 1.0);

    RegulationConfig reg;
    reg.variant = Variant::Reduced;
    reg.w_ei = 10.0;
    reg.w_ii = 6.0;
    reg.rho = 0.1;
    reg.regulate_wee = true;
    reg.eps_ee = 0.01;
    reg.theta_ee = 0.01;

    struct Start {
        ExtendedState init;
        double t_end;
        const char* name;
    };
    std::vector<Start> starts = {
        {make_initial_state(0.1, 0.05, 10.8, w_ie), 30000.0, "cycle side"},
        {make_initial_state(0.45, 0.45, target + 3.0, w_ie), 60000.0, "bistable side"},
    };
    for (const auto& start : starts) {
        Trace trace = integrate(reg, start.init, 0.01, start.t_end, 0.5);
        c.require(!trace.aborted, std::string(start.name) + ": aborted");
        if (trace.aborted) continue;
        std::size_t from = trace.samples.size() * 3 / 4;
        double cmean = 0.0;
        bool inside = true;
        for (std::size_t i = from; i < trace.samples.size(); ++i) {
            const auto& s = trace.samples[i];
            if (std::abs(s.w_ee - target) > 0.2) inside = false;
            cmean += cov_ee(s);
        }
        cmean /= trace.samples.size() - from;
        c.require(inside, std::string(start.name) + ": w_ee leaves target +- 0.2 (target " +
                              fmt(target) + ", final " + fmt(trace.samples.back().w_ee) + ")");
        c.require(cmean >= reg.theta_ee / 2.0 && cmean <= 2.0 * reg.theta_ee,
                  std::string(start.name) + ": mean c_ee " + fmt(cmean));
    }
    return c;
}

// 8. Two-weight regulation drifting along the saddlenode curve to G.
Check criterion_8() {
    Check c;
    RegulationConfig reg;
    reg.variant = Variant::Reduced;
    reg.w_ei = 10.0;
    reg.w_ii = 6.0;
    reg.rho = 0.1;
    reg.regulate_wee = true;
    reg.regulate_wie = true;
    reg.eps_ee = 0.01;
    reg.theta_ee = 0.01;
    reg.eps_ie = -0.01;
    reg.theta_ie = 0.01;

    Trace trace = integrate(reg, make_initial_state(0.1, 0.05, 12.0, 9.0), 0.01, 30000.0, 1.0);
    c.require(!trace.aborted, "run aborted");
    if (trace.aborted) return c;

    // Stage 1 (fast): the weights cover most of their total path and land on
    // the saddlenode curve within the first tenth of the run. Stage 2 (slow):
    // pinned to the curve, with only residual drift along it.
    auto dist_to_curve = [&](const ExtendedState& s) {
        try {
            return std::abs(s.w_ee - saddlenode_wee(reg.w_ei, reg.w_ii, s.w_ie, 1.0));
        } catch (const NoTangencyError&) {
            return 1e300;
        }
    };
    std::size_t n = trace.samples.size();
    double fast_move = std::hypot(trace.samples[n / 10].w_ee - trace.samples[0].w_ee,
                                  trace.samples[n / 10].w_ie - trace.samples[0].w_ie);
    double slow_move = std::hypot(trace.samples.back().w_ee - trace.samples[n / 2].w_ee,
                                  trace.samples.back().w_ie - trace.samples[n / 2].w_ie);
    c.require(fast_move > 0.3, "no fast stage (weights moved " + fmt(fast_move) + ")");
    c.require(slow_move < 0.2 * fast_move,
              "no timescale separation (fast " + fmt(fast_move) + ", late " + fmt(slow_move) + ")");
    double pinned_max = 0.0;
    for (std::size_t i = n / 5; i < n; i += n / 30)
        pinned_max = std::max(pinned_max, dist_to_curve(trace.samples[i]));
    c.require(pinned_max < 0.3, "distance to the saddlenode curve reaches " + fmt(pinned_max));

    // Terminal overlap: time-averaged parameters over the last stretch.
    double w_ee = 0.0, w_ie = 0.0;
    std::size_t from = n * 9 / 10;
    for (std::size_t i = from; i < n; ++i) {
        w_ee += trace.samples[i].w_ee;
        w_ie += trace.samples[i].w_ie;
    }
    w_ee /= n - from;
    w_ie /= n - from;
    double overlap = nullcline_overlap_metric({w_ee, reg.w_ei, w_ie, reg.w_ii}, 1.0);
    c.require(overlap < 0.02, "terminal nullcline overlap " + fmt(overlap));
    return c;
}

// 9. Full-system (w_ee, h_E) regulation converging to the doubly critical
// point F from three different starts.
Check criterion_9() {
    Check c;
    RegulationConfig reg;
    reg.variant = Variant::Full;
    reg.w_ei = 10.0;
    reg.w_ii = 1.0;
    reg.rho = 0.2;
    reg.regulate_wee = true;
    reg.regulate_he = true;
    reg.eps_ee = 0.01;
    reg.theta_ee = 0.01;
    reg.eps_he = 0.001;
    reg.theta_he = 0.5;

    const double w_ie = 10.0, h_i = 5.0;
    std::vector<ExtendedState> starts = {
        make_initial_state(0.6, 0.4, 8.0, w_ie, 2.0, h_i),
        make_initial_state(0.9, 0.9, 16.0, w_ie, 5.0, h_i),
        make_initial_state(0.1, 0.1, 14.0, w_ie, 1.0, h_i),
    };
    std::vector<std::pair<double, double>> terminal;
    for (const auto& init : starts) {
        Trace trace = integrate(reg, init, 0.01, 40000.0, 2.0);
        c.require(!trace.aborted, "a run aborted");
        if (trace.aborted) return c;
        std::size_t n = trace.samples.size();
        double w_ee = 0.0, h_e = 0.0, s = 0.0;
        std::size_t from = n * 9 / 10;
        for (std::size_t i = from; i < n; ++i) {
            w_ee += trace.samples[i].w_ee;
            h_e += trace.samples[i].h_e;
            s += trace.samples[i].s;
        }
        w_ee /= n - from;
        h_e /= n - from;
        s /= n - from;
        terminal.emplace_back(w_ee, h_e);
        c.require(std::abs(s - 0.5) <= 0.05, "terminal mean s = " + fmt(s));
    }
    double diameter = 0.0;
    for (std::size_t i = 0; i < terminal.size(); ++i)
        for (std::size_t j = i + 1; j < terminal.size(); ++j)
            diameter = std::max(diameter, std::hypot(terminal[i].first - terminal[j].first,
                                                     terminal[i].second - terminal[j].second));
    c.require(diameter < 0.3, "terminal (w_ee, h_E) diameter " + fmt(diameter));
    return c;
}

// 10. Standard four-parameter run: simple slow periodic attractor.
Check criterion_10() {
    Check c;
    RegulationConfig reg = standard_regulation();
    ExtendedState init = make_initial_state(0.6, 0.4, 12.0, 8.0, 1.0, 3.0);
    Trace trace = integrate(reg, init, 0.01, 200000.0, 2.0);
    c.require(!trace.aborted, "run aborted");
    if (trace.aborted) return c;

    std::size_t n = trace.samples.size();
    std::size_t from = n * 4 / 5; // last 40000 time units
    std::vector<double> t, s, w_ee, w_ie;
    for (std::size_t i = from; i < n; ++i) {
        t.push_back(trace.samples[i].t);
        s.push_back(trace.samples[i].s);
        w_ee.push_back(trace.samples[i].w_ee);
        w_ie.push_back(trace.samples[i].w_ie);
    }

    auto period = estimate_period(t, s);
    c.require(period.has_value(), "no periodicity detected in s(t)");
    if (period) {
        c.require(period->cv < 0.01, "period cv " + fmt(period->cv));
        c.require(period->n_cycles >= 3, "too few cycles in the window");
    }

    // Near-square wave: the mean absolute excursion is close to the peak
    // excursion (sine gives ~0.64, a square wave gives 1).
    double mid = tail_mean(s, 0);
    double mean_exc = 0.0, peak_exc = 0.0;
    for (double v : s) {
        mean_exc += std::abs(v - mid);
        peak_exc = std::max(peak_exc, std::abs(v - mid));
    }
    mean_exc /= s.size();
    c.require(peak_exc > 0.2, "s(t) barely moves (peak excursion " + fmt(peak_exc) + ")");
    c.require(mean_exc / peak_exc > 0.6,
              "s(t) is not square-like (shape ratio " + fmt(mean_exc / peak_exc) + ")");

    auto amp = [](const std::vector<double>& v) {
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        return *hi - *lo;
    };
    c.require(amp(w_ee) < 0.5, "w_ee amplitude " + fmt(amp(w_ee)));
    c.require(amp(w_ie) < 0.5, "w_ie amplitude " + fmt(amp(w_ie)));
    return c;
}

// 11. Chaotic regime: aperiodic with many irregular phase transitions.
Check criterion_11() {
    Check c;
    RegulationConfig reg = standard_regulation();
    reg.eps_he = 0.005;
    reg.eps_hi = 0.005;
    Trace trace = integrate(reg, chaotic_initial_state(), 0.01, 200000.0, 2.0);
    c.require(!trace.aborted, "run aborted");
    if (trace.aborted) return c;

    std::size_t n = trace.samples.size();
    std::size_t from = n / 5;
    std::vector<double> t, s;
    for (std::size_t i = from; i < n; ++i) {
        t.push_back(trace.samples[i].t);
        s.push_back(trace.samples[i].s);
    }

    auto period = estimate_period(t, s);
    bool aperiodic = !period.has_value() || period->cv > 0.05;
    c.require(aperiodic,
              period ? "looks periodic (cv " + fmt(period->cv) + ")" : "periodicity check failed");

    auto events = phase_transition_times(t, s, 0.2, 0.8, 100.0);
    c.require(events.size() > 10,
              "only " + fmt(static_cast<double>(events.size())) + " phase transitions");

    // Diagnostic only: the leading Lyapunov estimate should come out positive.
    double lam = lyapunov_estimate(reg, chaotic_initial_state(), 0.01, 40000.0, 40000.0);
    std::cerr << "  [diagnostic] lyapunov estimate = " << lam << "\n";
    return c;
}

// 12. Finite-N Glauber vs mean field.
Check criterion_12() {
    Check c;
    GlauberConfig g;
    g.n = 70;
    g.params.variant = Variant::Full;
    g.params.weights = {12.0, 10.0, 8.0, 2.0};
    g.params.thresholds = {1.0, 3.0};
    g.seed = 20260823;
    g.t_end = 60.0;
    g.sample_every = 0.05;
    auto small = simulate(g);

    double mean = tail_mean(small.mean_e, 0);
    double var = 0.0;
    for (double v : small.mean_e) var += (v - mean) * (v - mean);
    var /= small.mean_e.size();
    c.require(var > 0.05, "N=70 variance " + fmt(var));

    int crossings = 0;
    for (std::size_t i = 1; i < small.mean_e.size(); ++i)
        if ((small.mean_e[i - 1] < 0.5) != (small.mean_e[i] < 0.5)) ++crossings;
    c.require(crossings >= 10, "N=70 crossings " + fmt(crossings));

    // Large N against the mean-field period.
    g.n = 2000;
    g.t_end = 120.0;
    auto big = simulate(g);
    std::size_t skip = big.t.size() / 4;
    std::vector<double> tb(big.t.begin() + skip, big.t.end());
    std::vector<double> eb(big.mean_e.begin() + skip, big.mean_e.end());
    auto stoch_period = estimate_period(tb, eb);
    c.require(stoch_period.has_value(), "no period in the N=2000 run");

    RegulationConfig mf;
    mf.variant = Variant::Full;
    mf.w_ei = 10.0;
    mf.w_ii = 2.0;
    Trace trace = integrate(mf, make_initial_state(0.6, 0.4, 12.0, 8.0, 1.0, 3.0), 0.01, 120.0, 0.05);
    std::vector<double> tm, sm;
    for (const auto& x : trace.samples)
        if (x.t > 30.0) {
            tm.push_back(x.t);
            sm.push_back(x.s);
        }
    auto mf_period = estimate_period(tm, sm);
    c.require(mf_period.has_value(), "no period in the mean-field run");
    if (stoch_period && mf_period) {
        double rel = std::abs(stoch_period->period - mf_period->period) / mf_period->period;
        c.require(rel <= 0.2, "period mismatch " + fmt(rel) + " (stochastic " +
                                  fmt(stoch_period->period) + ", mean field " +
                                  fmt(mf_period->period) + ")");
    }
    return c;
}

// 13. Core property suite, independent of any figure scenario.
Check criterion_13() {
    Check c;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coord(-0.45, 0.45);
    std::uniform_real_distribution<double> weight(0.5, 15.0);

    for (int i = 0; i < 200; ++i) {
        SynapticWeights w{weight(rng), weight(rng), weight(rng), weight(rng)};
        ActivityPoint p{coord(rng), coord(rng)};

        // Odd symmetry of the reduced field.
        Velocity v = reduced_rhs(p, w, 1.0);
        Velocity vm = reduced_rhs({-p.s, -p.sigma}, w, 1.0);
        c.require(std::abs(v.ds + vm.ds) < 1e-12 && std::abs(v.dsigma + vm.dsigma) < 1e-12,
                  "odd symmetry broken");

        // Change of variables: full field with symmetric thresholds equals
        // the reduced field shifted by (1/2, 1/2).
        SystemParams full;
        full.variant = Variant::Full;
        full.weights = w;
        full.thresholds = symmetric_thresholds(w);
        Velocity vf = full_rhs({p.s + 0.5, p.sigma + 0.5}, full);
        c.require(std::abs(vf.ds - v.ds) < 1e-12 && std::abs(vf.dsigma - v.dsigma) < 1e-12,
                  "change-of-variables identity broken");

        if (i < 20) {
            // Finite-difference Jacobian agreement.
            SystemParams red;
            red.variant = Variant::Reduced;
            red.weights = w;
            JacobianInfo j = jacobian_at(p, red);
            const double h = 1e-6;
            auto f = [&](double s, double sigma) { return reduced_rhs({s, sigma}, w, 1.0); };
            double a = (f(p.s + h, p.sigma).ds - f(p.s - h, p.sigma).ds) / (2 * h);
            double b = (f(p.s, p.sigma + h).ds - f(p.s, p.sigma - h).ds) / (2 * h);
            double cc = (f(p.s + h, p.sigma).dsigma - f(p.s - h, p.sigma).dsigma) / (2 * h);
            double d = (f(p.s, p.sigma + h).dsigma - f(p.s, p.sigma - h).dsigma) / (2 * h);
            double err = std::max({std::abs(a - j.a), std::abs(b - j.b), std::abs(cc - j.c),
                                   std::abs(d - j.d)});
            c.require(err < 1e-6, "finite-difference Jacobian error " + fmt(err));
        }
    }

    // Moving-average closed form.
    {
        auto rhs = [](const std::array<double, 1>& y) {
            return std::array<double, 1>{moving_average_rhs(1.0, y[0], 0.1)};
        };
        std::array<double, 1> y{0.0};
        for (int i = 0; i < 10000; ++i) y = rk4_step(rhs, y, 0.001);
        c.require(std::abs(y[0] - (1.0 - std::exp(-1.0))) < 1e-6, "moving-average closed form");
    }

    // RK4 global order: halving dt cuts the error by ~16.
    {
        auto rhs = [](const std::array<double, 1>& y) { return std::array<double, 1>{-y[0]}; };
        auto run = [&](double dt) {
            std::array<double, 1> y{1.0};
            int n = static_cast<int>(std::lround(1.0 / dt));
            for (int i = 0; i < n; ++i) y = rk4_step(rhs, y, dt);
            return std::abs(y[0] - std::exp(-1.0));
        };
        double ratio = run(0.1) / run(0.05);
        c.require(ratio > 12.0 && ratio < 20.0, "RK4 order ratio " + fmt(ratio));
    }
    return c;
}

const std::map<int, std::pair<std::string, std::function<Check()>>> kCriteria = {
    {1, {"Hopf boundary, analytic vs scanned", criterion_1}},
    {2, {"saddlenode value, residual, attractor flip", criterion_2}},
    {3, {"fixed-point counts and stability split", criterion_3}},
    {4, {"region map over (w_ee, w_ie)", criterion_4}},
    {5, {"three-attractor strip", criterion_5}},
    {6, {"covariance profile along w_ie = 8", criterion_6}},
    {7, {"single-weight regulation onto the saddlenode line", criterion_7}},
    {8, {"two-weight regulation to the overlap point G", criterion_8}},
    {9, {"full-system regulation to the doubly critical point F", criterion_9}},
    {10, {"standard four-parameter run, simple periodic attractor", criterion_10}},
    {11, {"chaotic regime, aperiodicity and phase transitions", criterion_11}},
    {12, {"stochastic / mean-field agreement", criterion_12}},
    {13, {"core property suite", criterion_13}},
};

} // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (const auto& [id, entry] : kCriteria) which.push_back(id);

    int failures = 0;
    for (int id : which) {
        auto it = kCriteria.find(id);
        if (it == kCriteria.end()) {
            std::cerr << "unknown criterion " << id << "\n";
            return 64;
        }
        Check result;
        try {
            result = it->second.second();
        } catch (const std::exception& e) {
            result.ok = false;
            result.why << "exception: " << e.what();
        }
        std::cout << "criterion " << id << " (" << it->second.first << "): "
                  << (result.ok ? "PASS" : "FAIL") << (result.ok ? "" : " -- " + result.why.str())
                  << std::endl;
        if (!result.ok) ++failures;
    }
    return failures;
}
