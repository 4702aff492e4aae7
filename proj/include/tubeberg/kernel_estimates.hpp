#pragma once

// Monte-Carlo quantities attached to the kernel: L^p norms of K_z, the
// pointwise (sub-mean-value) estimate and the decay of normalised kernels
// on a fixed compact set.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tubeberg/errors.hpp"
#include "tubeberg/geometry.hpp"
#include "tubeberg/integrate.hpp"
#include "tubeberg/kernel.hpp"
#include "tubeberg/sampling.hpp"

namespace tubeberg {

struct KernelNormEstimate {
    IntegralEstimate integral; ///< estimate of int |K(z,w)|^p dV_alpha(w)
    double norm = 0.0;         ///< integral^{1/p}
    double norm_error = 0.0;   ///< delta-method standard error of norm
    double ratio = 0.0;        ///< norm / rho(z)^{-(n+alpha+1)/p'}
    double ratio_error = 0.0;
};

namespace detail {

inline KernelNormEstimate finish_norm(const IntegralEstimate& est, const TubePoint& z, const KernelParams& kp,
                                      const PExponent& p) {
    KernelNormEstimate out;
    out.integral = est;
    const double v = est.value.real();
    out.norm = std::pow(v, 1.0 / p.p);
    out.norm_error = out.norm / (p.p * v) * est.std_error.real();
    const double scale = std::pow(z.rho(), kp.order() / p.conjugate());
    out.ratio = out.norm * scale;
    out.ratio_error = out.norm_error * scale;
    return out;
}

inline void kernel_pnorm_guard(const KernelParams& kp, const PExponent& p) {
    // int rho^alpha / |rho(z,w)|^{p(n+alpha+1)} dV is finite iff p(n+alpha+1) - alpha > n + 1.
    rf_abs_validate(kp.n, p.p * kp.order(), kp.alpha);
}

} // namespace detail

/// Monte-Carlo ||K_z||_{p,alpha} on the plain sampler, with its ratio to rho(z)^{-(n+alpha+1)/p'}.
inline KernelNormEstimate kernel_pnorm(const TubePoint& z, const KernelParams& kp, const PExponent& p,
                                       const SamplerConfig& cfg) {
    detail::kernel_pnorm_guard(kp, p);
    const double log_c = kp.log_constant();
    const double e = p.p * kp.order();
    const auto est = integrate(
        [&](const TubePoint& w) { return std::exp(p.p * log_c - e * std::log(std::abs(rho_pair(z, w)))); }, kp, cfg);
    return detail::finish_norm(est, z, kp, p);
}

/// Same quantity, sampled with a sampler centred at z (low variance for z near the boundary).
inline KernelNormEstimate kernel_pnorm_centered(const TubePoint& z, const KernelParams& kp, const PExponent& p,
                                                const SamplerConfig& cfg) {
    detail::kernel_pnorm_guard(kp, p);
    const double log_c = kp.log_constant();
    const double e = p.p * kp.order();
    const auto est = TubeSampler::centered(kp, z).integrate(
        [&](const TubePoint& w) { return std::exp(p.p * log_c - e * std::log(std::abs(rho_pair(z, w)))); }, cfg);
    return detail::finish_norm(est, z, kp, p);
}

/// Explicit constant C(n, alpha, r) in
///   |f(z)|^p <= C rho(z)^{-(n+alpha+1)} int_{D(z,r)} |f|^p dV_alpha   (f holomorphic, p > 0).
///
/// Obtained from the mean value inequality on B(0, R), R = tanh r, after
/// bounding rho(w)^{-alpha} and |rho(w,i)|^{-2(n+1)} on D(i, r).
inline double pointwise_bound_constant(std::size_t n, double alpha, double r) {
    if (!(r > 0.0)) throw DomainError("pointwise_bound_constant: r must be positive");
    if (!(alpha > -1.0)) throw DomainError("pointwise_bound_constant: alpha must be > -1");
    const double R = std::tanh(r);
    const double nn = static_cast<double>(n);
    // rho(w) on D(i, r) lies in [(1-R)/(1+R), 1/(1-R)^2]
    const double rho_factor = alpha >= 0.0 ? std::pow((1.0 + R) / (1.0 - R), alpha) : std::pow(1.0 - R, 2.0 * alpha);
    const double rho_i_factor = std::pow(1.0 + R, 2.0 * (nn + 1.0));
    return rho_factor * rho_i_factor / (std::exp2(nn + 1.0) * detail::ball_volume(n, R));
}

struct PointwiseBound {
    double lhs = 0.0;          ///< |f(z)|^p rho(z)^{n+alpha+1}
    IntegralEstimate integral; ///< int_{D(z,r)} |f|^p dV_alpha
    double ratio = 0.0;        ///< lhs / integral
};

/// Left side and local integral of the pointwise estimate for f at z; the local
/// integral uses a sampler restricted to D(z, r).
template <class F>
PointwiseBound pointwise_ratio(F&& f, const TubePoint& z, double p, double r, const KernelParams& kp,
                               const SamplerConfig& cfg) {
    if (!(p > 0.0)) throw DomainError("pointwise_ratio: p must be positive");
    PointwiseBound out;
    out.lhs = std::pow(std::abs(cplx(f(z))), p) * std::pow(z.rho(), kp.order());
    out.integral = TubeSampler::centered(kp, z, std::tanh(r)).integrate(
        [&](const TubePoint& w) { return std::pow(std::abs(cplx(f(w))), p); }, cfg);
    out.ratio = out.lhs / out.integral.value.real();
    return out;
}

/// Probe points of closure(D(i, r)): images of a deterministic set of ball points
/// (origin, the sphere of radius tanh r along each real axis, and seeded interior points).
inline std::vector<TubePoint> metric_ball_probes(std::size_t n, double r, std::size_t count, std::uint64_t seed) {
    const double R = std::tanh(r);
    std::vector<TubePoint> out;
    out.push_back(TubePoint::base(n));
    for (std::size_t k = 0; k < n; ++k) {
        for (double sgn : {1.0, -1.0}) {
            for (cplx unit : {cplx{1.0, 0.0}, cplx{0.0, 1.0}}) {
                CVector v(n, cplx{0.0, 0.0});
                v[k] = sgn * R * unit;
                out.push_back(cayley(BallPoint(std::move(v))));
            }
        }
    }
    std::mt19937_64 eng(detail::substream_seed(seed, 0));
    while (out.size() < count) out.push_back(cayley(BallPoint(detail::uniform_ball(n, R, eng))));
    return out;
}

/// sup over probes w of |K(z, w)| / ||K_z||_{p,alpha}.
inline double kernel_decay(const TubePoint& z, const KernelParams& kp, const PExponent& p,
                           std::span<const TubePoint> probes, const SamplerConfig& cfg) {
    const double norm = kernel_pnorm_centered(z, kp, p, cfg).norm;
    double sup = 0.0;
    for (const auto& w : probes) sup = std::max(sup, std::abs(bergman_kernel(z, w, kp)));
    return sup / norm;
}

} // namespace tubeberg
