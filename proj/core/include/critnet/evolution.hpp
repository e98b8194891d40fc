#ifndef CRITNET_EVOLUTION_HPP
#define CRITNET_EVOLUTION_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "critnet/dynamics.hpp"
#include "critnet/errors.hpp"

namespace critnet {

// Parameters of the covariance-plasticity regulation loops. Weights w_ei and
// w_ii are never plastic; they live here together with beta. The plastic
// parameters (w_ee, w_ie, h_e, h_i) live in ExtendedState.
struct RegulationConfig {
    Variant variant = Variant::Reduced;
    double beta = 1.0;
    double w_ei = 10.0;
    double w_ii = 2.0;
    double rho = 0.1; // inverse width of the moving-average kernel

    bool regulate_wee = false;
    bool regulate_wie = false;
    bool regulate_he = false;
    bool regulate_hi = false;

    double eps_ee = 0.01, theta_ee = 0.01;
    double eps_ie = -0.01, theta_ie = 0.01;
    double eps_he = 0.005, theta_he = 0.5;
    double eps_hi = 0.002, theta_hi = 0.5;

    // Throws ConfigError on sign violations or threshold rules in the
    // reduced variant.
    void validate() const;
};

// State vector of the coupled activity + plasticity system.
struct ExtendedState {
    double s = 0.0, sigma = 0.0;
    double s_bar = 0.0, sigma_bar = 0.0;
    double w_ee = 0.0, w_ie = 0.0;
    double h_e = 0.0, h_i = 0.0; // carried but inert in the reduced variant
    double t = 0.0;
};

// Convenience: extended state with averages initialized to the activity
// (zero initial covariance transient).
ExtendedState make_initial_state(double s, double sigma, double w_ee, double w_ie,
                                 double h_e = 0.0, double h_i = 0.0);

struct Trace {
    std::vector<ExtendedState> samples;
    bool aborted = false; // NaN/inf hit; samples hold the partial trace
    long clamp_events = 0;
    double dt = 0.0;
    RegulationConfig config;
};

// d r_bar / dt for the exponential moving average.
inline double moving_average_rhs(double r, double r_bar, double rho) {
    return rho * (r - r_bar);
}

// Instantaneous E-to-E covariance (the variance of s).
inline double cov_ee(const ExtendedState& x) {
    double d = x.s - x.s_bar;
    return d * d;
}

// Instantaneous E-to-I covariance.
inline double cov_ie(const ExtendedState& x) {
    return (x.s - x.s_bar) * (x.sigma - x.sigma_bar);
}

using StateVec = std::array<double, 8>;

StateVec to_vec(const ExtendedState& x);
ExtendedState from_vec(const StateVec& v, double t);

// Derivative of the full extended state under the enabled regulation rules.
StateVec regulated_rhs(const ExtendedState& x, const RegulationConfig& config);

// Classical fixed-step 4th-order Runge-Kutta update. Throws NonFiniteError
// if the result contains NaN or infinity.
template <std::size_t N, class F>
std::array<double, N> rk4_step(F&& rhs, const std::array<double, N>& y, double dt) {
    std::array<double, N> k1 = rhs(y), y2, y3, y4;
    for (std::size_t i = 0; i < N; ++i) y2[i] = y[i] + 0.5 * dt * k1[i];
    std::array<double, N> k2 = rhs(y2);
    for (std::size_t i = 0; i < N; ++i) y3[i] = y[i] + 0.5 * dt * k2[i];
    std::array<double, N> k3 = rhs(y3);
    for (std::size_t i = 0; i < N; ++i) y4[i] = y[i] + dt * k3[i];
    std::array<double, N> k4 = rhs(y4);
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) {
        out[i] = y[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        if (!std::isfinite(out[i])) throw NonFiniteError("rk4_step: non-finite state component");
    }
    return out;
}

// RK4 integration of the regulated system. Plastic weights are clamped at
// zero after each step (clamp events counted); a non-finite state aborts
// the run and returns the partial trace.
Trace integrate(const RegulationConfig& config, const ExtendedState& init, double dt,
                double t_end, double sample_every);

} // namespace critnet

#endif
