#include "critnet/evolution.hpp"

#include <cmath>

namespace critnet {

void RegulationConfig::validate() const {
    if (rho <= 0.0) throw ConfigError("rho must be positive");
    if (beta < 0.0) throw ConfigError("beta must be non-negative");
    if (w_ei < 0.0 || w_ii < 0.0) throw ConfigError("w_ei and w_ii must be non-negative");
    if (eps_ee < 0.0) throw ConfigError("eps_ee must be non-negative");
    if (theta_ee <= 0.0) throw ConfigError("theta_ee must be positive");
    if (eps_ie > 0.0) throw ConfigError("eps_ie must be non-positive (inhibitory-target rule)");
    if (theta_ie <= 0.0) throw ConfigError("theta_ie must be positive");
    if ((regulate_he || regulate_hi) && variant != Variant::Full)
        throw ConfigError("threshold regulation requires the full variant");
    if (eps_he < 0.0) throw ConfigError("eps_he must be non-negative");
    if (theta_he <= 0.0 || theta_he >= 1.0) throw ConfigError("theta_he must lie in (0,1)");
    if (eps_hi < 0.0) throw ConfigError("eps_hi must be non-negative");
    if (theta_hi <= 0.0 || theta_hi >= 1.0) throw ConfigError("theta_hi must lie in (0,1)");
}

ExtendedState make_initial_state(double s, double sigma, double w_ee, double w_ie,
                                 double h_e, double h_i) {
    ExtendedState x;
    x.s = s;
    x.sigma = sigma;
    x.s_bar = s;
    x.sigma_bar = sigma;
    x.w_ee = w_ee;
    x.w_ie = w_ie;
    x.h_e = h_e;
    x.h_i = h_i;
    return x;
}

StateVec to_vec(const ExtendedState& x) {
    return {x.s, x.sigma, x.s_bar, x.sigma_bar, x.w_ee, x.w_ie, x.h_e, x.h_i};
}

ExtendedState from_vec(const StateVec& v, double t) {
    ExtendedState x;
    x.s = v[0];
    x.sigma = v[1];
    x.s_bar = v[2];
    x.sigma_bar = v[3];
    x.w_ee = v[4];
    x.w_ie = v[5];
    x.h_e = v[6];
    x.h_i = v[7];
    x.t = t;
    return x;
}

StateVec regulated_rhs(const ExtendedState& x, const RegulationConfig& config) {
    SynapticWeights w{x.w_ee, config.w_ei, x.w_ie, config.w_ii};
    Velocity v;
    if (config.variant == Variant::Reduced) {
        v = reduced_rhs({x.s, x.sigma}, w, config.beta);
    } else {
        SystemParams p;
        p.weights = w;
        p.thresholds = {x.h_e, x.h_i};
        p.beta = config.beta;
        p.variant = Variant::Full;
        v = full_rhs({x.s, x.sigma}, p);
    }

    StateVec dx{};
    dx[0] = v.ds;
    dx[1] = v.dsigma;
    dx[2] = moving_average_rhs(x.s, x.s_bar, config.rho);
    dx[3] = moving_average_rhs(x.sigma, x.sigma_bar, config.rho);
    // Regulation uses the instantaneous covariances, not their averages.
    if (config.regulate_wee) dx[4] = config.eps_ee * (cov_ee(x) - config.theta_ee);
    if (config.regulate_wie) dx[5] = config.eps_ie * (cov_ie(x) - config.theta_ie);
    if (config.regulate_he) dx[6] = config.eps_he * (x.s_bar - config.theta_he);
    if (config.regulate_hi) dx[7] = config.eps_hi * (x.sigma_bar - config.theta_hi);
    return dx;
}

Trace integrate(const RegulationConfig& config, const ExtendedState& init, double dt,
                double t_end, double sample_every) {
    if (dt <= 0.0) throw ConfigError("dt must be positive");
    if (sample_every <= 0.0) throw ConfigError("sample_every must be positive");
    config.validate();

    Trace trace;
    trace.dt = dt;
    trace.config = config;

    auto rhs = [&config](const StateVec& v) {
        return regulated_rhs(from_vec(v, 0.0), config);
    };

    const long n_steps = static_cast<long>(std::ceil(t_end / dt));
    const long sample_stride = std::max(1L, static_cast<long>(std::llround(sample_every / dt)));
    trace.samples.reserve(static_cast<std::size_t>(n_steps / sample_stride) + 2);

    StateVec y = to_vec(init);
    double t = init.t;
    trace.samples.push_back(from_vec(y, t));
    for (long step = 1; step <= n_steps; ++step) {
        try {
            y = rk4_step(rhs, y, dt);
        } catch (const NonFiniteError&) {
            trace.aborted = true;
            return trace;
        }
        if (y[4] < 0.0) {
            y[4] = 0.0;
            ++trace.clamp_events;
        }
        if (y[5] < 0.0) {
            y[5] = 0.0;
            ++trace.clamp_events;
        }
        t = init.t + step * dt;
        if (step % sample_stride == 0 || step == n_steps)
            trace.samples.push_back(from_vec(y, t));
    }
    return trace;
}

} // namespace critnet
