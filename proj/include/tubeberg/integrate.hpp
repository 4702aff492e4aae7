#pragma once

// Closed-form and Monte-Carlo versions of the reproducing integral
//
//   int_{T_B} rho(w)^t / (rho(z,w)^r rho(w,u)^s) dV(w) = C1(n,r,s,t) / rho(z,u)^{r+s-t-n-1},
//   C1 = 2^{n+1} pi^n Gamma(1+t) Gamma(r+s-t-n-1) / (Gamma(r) Gamma(s)),
//
// its absolute-value variant, the projections P_lambda, metric-ball volumes
// and the parameter predicate for the Schur-type integral operators.

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>

#include "tubeberg/errors.hpp"
#include "tubeberg/geometry.hpp"
#include "tubeberg/kernel.hpp"
#include "tubeberg/sampling.hpp"
#include "tubeberg/special.hpp"

namespace tubeberg {

struct RFParams {
    double r = 0.0;
    double s = 0.0;
    double t = 0.0;

    /// r + s - t - n - 1: the exponent of rho(z,u) on the right-hand side.
    double excess(std::size_t n) const { return r + s - t - static_cast<double>(n) - 1.0; }

    void validate(std::size_t n) const {
        if (!(r > 0.0) || !(s > 0.0)) throw DivergentIntegral("RFParams: r and s must be positive");
        if (!(t > -1.0)) throw DivergentIntegral("RFParams: t must be > -1 (integral is infinite)");
        if (!(excess(n) > 0.0)) throw DivergentIntegral("RFParams: r + s - t must exceed n + 1 (integral is infinite)");
    }
};

/// log C1(n, r, s, t).
inline double rf_log_constant(std::size_t n, const RFParams& rf) {
    rf.validate(n);
    const double nn = static_cast<double>(n);
    return (nn + 1.0) * std::numbers::ln2 + nn * std::log(std::numbers::pi) + log_gamma(1.0 + rf.t) +
           log_gamma(rf.excess(n)) - log_gamma(rf.r) - log_gamma(rf.s);
}

inline cplx rf_exact(std::size_t n, const RFParams& rf, const TubePoint& z, const TubePoint& u) {
    detail::require_same_dim(z.dim(), n, "rf_exact");
    detail::require_same_dim(u.dim(), n, "rf_exact");
    return std::exp(rf_log_constant(n, rf) + complex_pow_log(rho_pair(z, u), -rf.excess(n)));
}

/// Monte-Carlo estimate of the left-hand side, sampled against dV_t.
inline IntegralEstimate rf_mc(std::size_t n, const RFParams& rf, const TubePoint& z, const TubePoint& u,
                              const SamplerConfig& cfg) {
    rf.validate(n);
    detail::require_same_dim(z.dim(), n, "rf_mc");
    detail::require_same_dim(u.dim(), n, "rf_mc");
    const KernelParams kp(n, rf.t);
    return integrate(
        [&](const TubePoint& w) {
            return std::exp(complex_pow_log(rho_pair(z, w), -rf.r) + complex_pow_log(rho_pair(w, u), -rf.s));
        },
        kp, cfg);
}

inline void rf_abs_validate(std::size_t n, double s, double t) {
    if (!(t > -1.0)) throw DivergentIntegral("rf_abs: t must be > -1 (integral is infinite)");
    if (!(s - t > static_cast<double>(n) + 1.0)) {
        throw DivergentIntegral("rf_abs: s - t must exceed n + 1 (integral is infinite)");
    }
}

/// Monte-Carlo estimate of int rho(w)^t / |rho(z,w)|^s dV(w).
inline IntegralEstimate rf_abs_mc(std::size_t n, double s, double t, const TubePoint& z, const SamplerConfig& cfg) {
    rf_abs_validate(n, s, t);
    detail::require_same_dim(z.dim(), n, "rf_abs_mc");
    const KernelParams kp(n, t);
    return integrate([&](const TubePoint& w) { return std::pow(std::abs(rho_pair(z, w)), -s); }, kp, cfg);
}

/// c_lambda = Gamma(n+1+lambda) / (2^{n+1} pi^n Gamma(1+lambda)), the kernel constant at weight lambda.
inline double projection_constant(std::size_t n, double lambda) {
    if (!(lambda > -1.0)) throw DomainError("P_lambda: lambda must be > -1");
    return KernelParams(n, lambda).constant();
}

/// Monte-Carlo estimate of P_lambda g(z) = c_lambda int rho(w)^lambda rho(z,w)^{-(n+1+lambda)} g(w) dV(w).
template <class G>
IntegralEstimate project_P_lambda(double lambda, G&& g, const TubePoint& z, const SamplerConfig& cfg) {
    if (!(lambda > -1.0)) throw DomainError("P_lambda: lambda must be > -1");
    const KernelParams kp(z.dim(), lambda);
    const double log_c = kp.log_constant();
    const double order = kp.order();
    return integrate(
        [&](const TubePoint& w) {
            const cplx gw = cplx(g(w));
            if (gw == cplx{0.0, 0.0}) return cplx{0.0, 0.0};
            return std::exp(log_c + complex_pow_log(rho_pair(z, w), -order)) * gw;
        },
        kp, cfg);
}

/// Parameter condition for boundedness of
///   T f(z) = rho(z)^a int rho(w)^b / rho(z,w)^c f(w) dV(w)
/// (and its absolute-value twin) on L^p_alpha:
///   1 <= p < inf:  -p a < alpha + 1 < p (b + 1)  and  c = n + 1 + a + b;
///   p = inf:       a > 0,  b > -1                and  c = n + 1 + a + b.
inline bool schur_admissible(double a, double b, double c, double p, std::size_t n, double alpha) {
    const double nn = static_cast<double>(n);
    const double target = nn + 1.0 + a + b;
    const bool homogeneous = std::abs(c - target) <= 1e-12 * std::max(1.0, std::abs(target));
    if (std::isinf(p) && p > 0.0) return a > 0.0 && b > -1.0 && homogeneous;
    if (!(p >= 1.0)) return false;
    return -p * a < alpha + 1.0 && alpha + 1.0 < p * (b + 1.0) && homogeneous;
}

/// Monte-Carlo estimate of V_alpha(D(z, r)) from the indicator of beta(z, .) < r on the plain sampler.
inline IntegralEstimate volume_ball(const TubePoint& z, double r, const KernelParams& kp, const SamplerConfig& cfg) {
    if (!(r > 0.0)) throw DomainError("volume_ball: radius must be positive");
    detail::require_same_dim(z.dim(), kp.n, "volume_ball");
    return integrate([&](const TubePoint& w) { return bergman_distance(z, w) < r ? 1.0 : 0.0; }, kp, cfg);
}

} // namespace tubeberg
