#ifndef CRITNET_DYNAMICS_HPP
#define CRITNET_DYNAMICS_HPP

#include <complex>

#include "critnet/errors.hpp"

namespace critnet {

// Mean synaptic strengths. w_ei and w_ii are stored as the positive
// magnitudes that enter the vector fields with a minus sign.
struct SynapticWeights {
    double w_ee = 0.0;
    double w_ei = 0.0;
    double w_ie = 0.0;
    double w_ii = 0.0;
};

struct FiringThresholds {
    double h_e = 0.0;
    double h_i = 0.0;
};

enum class Variant { Full, Reduced };

struct SystemParams {
    SynapticWeights weights;
    FiringThresholds thresholds; // ignored by the reduced variant
    double beta = 1.0;           // inverse temperature
    Variant variant = Variant::Reduced;

    double temperature() const {
        if (beta <= 0.0)
            throw DegenerateError("temperature undefined for beta <= 0");
        return 1.0 / beta;
    }
};

// Population-mean activities: [0,1]^2 in the full variant,
// [-.5,.5]^2 in the reduced variant.
struct ActivityPoint {
    double s = 0.0;
    double sigma = 0.0;
};

struct Velocity {
    double ds = 0.0;
    double dsigma = 0.0;
};

enum class StabilityClass {
    StableNode,
    StableSpiral,
    UnstableNode,
    UnstableSpiral,
    Saddle,
    Marginal,
};

struct JacobianInfo {
    // Entries [ds'/ds, ds'/dsigma; dsigma'/ds, dsigma'/dsigma].
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    std::complex<double> lambda1, lambda2;
    StabilityClass stability = StabilityClass::Marginal;

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }
};

// Full two-population mean-field vector field on [0,1]^2.
Velocity full_rhs(ActivityPoint p, const SystemParams& params);

// Reduced (threshold-eliminated, origin-symmetric) vector field on [-.5,.5]^2.
Velocity reduced_rhs(ActivityPoint p, const SynapticWeights& w, double beta);

// Thresholds that place the full system's fixed point at (.5,.5).
FiringThresholds symmetric_thresholds(const SynapticWeights& w);

// s-nullcline of the reduced system: sigma as a function of s, |s| < .5.
double s_nullcline_sigma(double s, const SynapticWeights& w, double temperature);

// sigma-nullcline of the reduced system: s as a function of sigma, |sigma| < .5.
double sigma_nullcline_s(double sigma, const SynapticWeights& w, double temperature);

// Inverse of the sigma-nullcline: the sigma at which the (strictly increasing)
// sigma-nullcline passes through abscissa s. Defined for all real s.
double sigma_nullcline_inverse(double s, const SynapticWeights& w, double temperature);

// Full-variant nullclines on (0,1)^2, same conventions.
double full_s_nullcline_sigma(double s, const SystemParams& params);
double full_sigma_nullcline_s(double sigma, const SystemParams& params);
double full_sigma_nullcline_inverse(double s, const SystemParams& params);

// Analytic Jacobian of the active variant at p, with eigenvalues and
// stability classification (|Re lambda| < 1e-9 classifies as Marginal).
JacobianInfo jacobian_at(ActivityPoint p, const SystemParams& params);

// Hopf critical value for w_ee at the origin of the reduced system.
double hopf_threshold_wee(double w_ii, double temperature);

// True when the origin linearization of the reduced system has a
// complex-conjugate eigenvalue pair: 4 w_ei w_ie > (w_ee + w_ii)^2.
bool origin_eigenvalues_complex(const SynapticWeights& w);

} // namespace critnet

#endif
