#include "critnet/dynamics.hpp"

#include <cmath>

namespace critnet {

namespace {

constexpr double kAtanhMargin = 1e-12;
constexpr double kMarginalRe = 1e-9;

double checked_atanh(double x, const char* what) {
    if (std::abs(x) >= 1.0 - kAtanhMargin)
        throw DomainError(std::string(what) + ": argument at or beyond the atanh singularity");
    return std::atanh(x);
}

// d/dx tanh(x) at the given field value.
double sech2(double x) {
    double t = std::tanh(x);
    return 1.0 - t * t;
}

StabilityClass classify(double tr, double det, double disc) {
    if (disc < 0.0) {
        if (std::abs(tr) < 2.0 * kMarginalRe) return StabilityClass::Marginal;
        return tr < 0.0 ? StabilityClass::StableSpiral : StabilityClass::UnstableSpiral;
    }
    double sq = std::sqrt(disc);
    double l1 = 0.5 * (tr + sq);
    double l2 = 0.5 * (tr - sq);
    if (std::abs(l1) < kMarginalRe || std::abs(l2) < kMarginalRe)
        return StabilityClass::Marginal;
    if (l1 > 0.0 && l2 > 0.0) return StabilityClass::UnstableNode;
    if (l1 < 0.0 && l2 < 0.0) return StabilityClass::StableNode;
    return StabilityClass::Saddle;
}

} // namespace

Velocity full_rhs(ActivityPoint p, const SystemParams& params) {
    const auto& w = params.weights;
    const auto& h = params.thresholds;
    double ge = params.beta * (w.w_ee * p.s - w.w_ei * p.sigma - h.h_e);
    double gi = params.beta * (w.w_ie * p.s - w.w_ii * p.sigma - h.h_i);
    return {0.5 - p.s + 0.5 * std::tanh(ge), 0.5 - p.sigma + 0.5 * std::tanh(gi)};
}

Velocity reduced_rhs(ActivityPoint p, const SynapticWeights& w, double beta) {
    double ge = beta * (w.w_ee * p.s - w.w_ei * p.sigma);
    double gi = beta * (w.w_ie * p.s - w.w_ii * p.sigma);
    return {-p.s + 0.5 * std::tanh(ge), -p.sigma + 0.5 * std::tanh(gi)};
}

FiringThresholds symmetric_thresholds(const SynapticWeights& w) {
    return {0.5 * (w.w_ee - w.w_ei), 0.5 * (w.w_ie - w.w_ii)};
}

double s_nullcline_sigma(double s, const SynapticWeights& w, double temperature) {
    if (w.w_ei == 0.0) throw DegenerateError("s-nullcline undefined for w_ei = 0");
    double a = checked_atanh(2.0 * s, "s_nullcline_sigma");
    return (w.w_ee * s - temperature * a) / w.w_ei;
}

double sigma_nullcline_s(double sigma, const SynapticWeights& w, double temperature) {
    if (w.w_ie == 0.0) throw DegenerateError("sigma-nullcline undefined for w_ie = 0");
    double a = checked_atanh(2.0 * sigma, "sigma_nullcline_s");
    return (w.w_ii * sigma + temperature * a) / w.w_ie;
}

double sigma_nullcline_inverse(double s, const SynapticWeights& w, double temperature) {
    if (w.w_ie == 0.0) throw DegenerateError("sigma-nullcline undefined for w_ie = 0");
    // sigma_nullcline_s is strictly increasing in sigma and spans all of R,
    // so plain bisection on (-.5, .5) suffices.
    double lo = -0.5 + kAtanhMargin, hi = 0.5 - kAtanhMargin;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (sigma_nullcline_s(mid, w, temperature) < s)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double full_s_nullcline_sigma(double s, const SystemParams& params) {
    const auto& w = params.weights;
    if (w.w_ei == 0.0) throw DegenerateError("s-nullcline undefined for w_ei = 0");
    double a = checked_atanh(2.0 * s - 1.0, "full_s_nullcline_sigma");
    return (w.w_ee * s - params.thresholds.h_e - params.temperature() * a) / w.w_ei;
}

double full_sigma_nullcline_s(double sigma, const SystemParams& params) {
    const auto& w = params.weights;
    if (w.w_ie == 0.0) throw DegenerateError("sigma-nullcline undefined for w_ie = 0");
    double a = checked_atanh(2.0 * sigma - 1.0, "full_sigma_nullcline_s");
    return (w.w_ii * sigma + params.thresholds.h_i + params.temperature() * a) / w.w_ie;
}

double full_sigma_nullcline_inverse(double s, const SystemParams& params) {
    const auto& w = params.weights;
    if (w.w_ie == 0.0) throw DegenerateError("sigma-nullcline undefined for w_ie = 0");
    double lo = kAtanhMargin, hi = 1.0 - kAtanhMargin;
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (full_sigma_nullcline_s(mid, params) < s)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

JacobianInfo jacobian_at(ActivityPoint p, const SystemParams& params) {
    const auto& w = params.weights;
    double ge, gi;
    if (params.variant == Variant::Reduced) {
        ge = params.beta * (w.w_ee * p.s - w.w_ei * p.sigma);
        gi = params.beta * (w.w_ie * p.s - w.w_ii * p.sigma);
    } else {
        ge = params.beta * (w.w_ee * p.s - w.w_ei * p.sigma - params.thresholds.h_e);
        gi = params.beta * (w.w_ie * p.s - w.w_ii * p.sigma - params.thresholds.h_i);
    }
    double de = 0.5 * params.beta * sech2(ge);
    double di = 0.5 * params.beta * sech2(gi);

    JacobianInfo j;
    j.a = -1.0 + de * w.w_ee;
    j.b = -de * w.w_ei;
    j.c = di * w.w_ie;
    j.d = -1.0 - di * w.w_ii;

    double tr = j.trace();
    double det = j.det();
    double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) {
        double im = 0.5 * std::sqrt(-disc);
        j.lambda1 = {0.5 * tr, im};
        j.lambda2 = {0.5 * tr, -im};
    } else {
        double sq = std::sqrt(disc);
        j.lambda1 = {0.5 * (tr + sq), 0.0};
        j.lambda2 = {0.5 * (tr - sq), 0.0};
    }
    j.stability = classify(tr, det, disc);
    return j;
}

double hopf_threshold_wee(double w_ii, double temperature) {
    return w_ii + 4.0 * temperature;
}

bool origin_eigenvalues_complex(const SynapticWeights& w) {
    double sum = w.w_ee + w.w_ii;
    return 4.0 * w.w_ei * w.w_ie > sum * sum;
}

} // namespace critnet
