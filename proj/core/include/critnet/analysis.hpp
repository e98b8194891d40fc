#ifndef CRITNET_ANALYSIS_HPP
#define CRITNET_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "critnet/dynamics.hpp"
#include "critnet/evolution.hpp"

namespace critnet {

struct FixedPoint {
    ActivityPoint location;
    JacobianInfo stability;

    bool is_stable() const {
        return stability.stability == StabilityClass::StableNode ||
               stability.stability == StabilityClass::StableSpiral;
    }
};

enum class AttractorKind { SinglePoint, TwoPoints, ThreeCoexisting, LimitCycle, Unclassified };

struct CycleInfo {
    double period = 0.0;
    double amplitude_s = 0.0; // max - min of s over one measurement window
    double amplitude_sigma = 0.0;
    ActivityPoint center;
    std::vector<ActivityPoint> samples; // thinned cycle samples for plotting
};

struct AttractorReport {
    AttractorKind kind = AttractorKind::Unclassified;
    std::vector<ActivityPoint> points; // distinct point attractors
    std::optional<CycleInfo> cycle;
    int unclassified_inits = 0;
};

struct DetectOptions {
    double t_transient = 500.0;
    double t_measure = 500.0;
    double dt = 0.01;
    int grid = 5;            // grid x grid initial conditions, plus near-corner points
    bool dense_grid = false; // 15 x 15; needed to resolve narrow coexistence basins
    double point_diameter = 1e-5;
    double cycle_amplitude = 1e-3;
};

// All nullcline intersections of the active variant: dense 1-D scan along the
// s-nullcline, bisection, then Newton polish. Each returned point satisfies
// |RHS| < 1e-9 componentwise.
std::vector<FixedPoint> find_fixed_points(const SystemParams& params);

// Classifies the asymptotic behavior by integrating from a grid of initial
// conditions and merging the terminal behaviors.
AttractorReport detect_attractors(const SystemParams& params, const DetectOptions& opts = {});

// w_ee at which the reduced system's nullclines become tangent (saddlenode
// curve S). Throws NoTangencyError when no tangency exists with
// w_ee in (hopf threshold, 100].
double saddlenode_wee(double w_ei, double w_ii, double w_ie, double temperature);

// w_ee at which the origin linearization of the reduced system is singular
// (pitchfork O/T boundary). Closed form; throws NotApplicableError when the
// determinant zero lies above the Hopf threshold, i.e. the origin is already
// unstable there and the crossing is not an attractor boundary.
double pitchfork_boundary_wee(double w_ei, double w_ii, double w_ie, double temperature);

enum class RegionLabel { O, O_h, O_m, O_l, P, T, ThreeAttractorStrip, Unclassified };

std::string region_label_name(RegionLabel label);

struct AxisSpec {
    std::string param; // one of "w_ee", "w_ie", "h_e"
    double lo = 0.0, hi = 1.0;
    int n = 10;

    double value_at(int i) const { return lo + (hi - lo) * (i + 0.5) / n; }
};

struct BifurcationMap {
    AxisSpec x, y;
    SystemParams base;
    std::vector<RegionLabel> cells; // row-major, y outer

    RegionLabel at(int ix, int iy) const { return cells[static_cast<std::size_t>(iy) * x.n + ix]; }
    double unclassified_fraction() const;
};

// Region map over a 2-D parameter grid. Cells are classified independently
// (fixed-point analysis, plus a probe trajectory where a cycle could coexist
// with stable points) and may run on several threads (0 = hardware
// concurrency).
BifurcationMap scan_region_map(const AxisSpec& x_axis, const AxisSpec& y_axis,
                               const SystemParams& fixed_params,
                               const DetectOptions& opts = {}, int n_threads = 0);

struct ProfilePoint {
    double w_ee = 0.0;
    double cov_mean = 0.0; // time average of c_ee after the transient
};

struct ProfileOptions {
    double rho = 0.1;
    double t_transient = 500.0;
    double t_measure = 1000.0;
    double dt = 0.01;
};

// Time-averaged E-to-E covariance along a line of constant w_ie in the
// reduced system.
std::vector<ProfilePoint> covariance_profile(const std::vector<double>& wee_values,
                                             const SynapticWeights& base, double beta,
                                             const ProfileOptions& opts = {});

// Max vertical distance between the two reduced-system nullclines over
// s in [-0.4, 0.4]. Near zero at the doubly degenerate point G.
double nullcline_overlap_metric(const SynapticWeights& w, double temperature);

// -- time-series diagnostics ------------------------------------------------

struct PeriodEstimate {
    double period = 0.0;
    double cv = 0.0; // coefficient of variation of inter-crossing intervals
    int n_cycles = 0;
};

// Period from upward crossings of the series mean. Empty when fewer than
// three crossings are found.
std::optional<PeriodEstimate> estimate_period(const std::vector<double>& t,
                                              const std::vector<double>& x);

// Times at which the series enters a sustained high or low episode; used to
// count the irregular phase transitions of the chaotic regime.
std::vector<double> phase_transition_times(const std::vector<double>& t,
                                           const std::vector<double>& x, double low,
                                           double high, double min_dwell);

// Largest-Lyapunov-exponent estimate for the regulated system (Benettin
// two-trajectory renormalization). Diagnostic only.
double lyapunov_estimate(const RegulationConfig& config, const ExtendedState& init, double dt,
                         double t_transient, double t_measure, double renorm_every = 1.0);

} // namespace critnet

#endif
