#pragma once

// Weighted Bergman kernel of A^2_alpha(T_B):
//   K_alpha(z, w) = Gamma(n+alpha+1) / (2^{n+1} pi^n Gamma(alpha+1)) * rho(z, w)^{-(n+alpha+1)}
// evaluated in log space on the principal branch.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>

#include "tubeberg/errors.hpp"
#include "tubeberg/geometry.hpp"
#include "tubeberg/special.hpp"

namespace tubeberg {

struct KernelParams {
    std::size_t n = 1;
    double alpha = 0.0;

    KernelParams() = default;
    KernelParams(std::size_t dim, double weight) : n(dim), alpha(weight) { validate(); }

    void validate() const {
        if (n < 1) throw DomainError("KernelParams: n must be >= 1");
        if (!(alpha > -1.0)) throw DomainError("KernelParams: alpha must be > -1, got " + std::to_string(alpha));
    }

    /// n + alpha + 1, the homogeneity exponent of the kernel.
    double order() const noexcept { return static_cast<double>(n) + alpha + 1.0; }

    /// log of Gamma(n+alpha+1) / (2^{n+1} pi^n Gamma(alpha+1)).
    double log_constant() const {
        const double nn = static_cast<double>(n);
        return log_gamma(nn + alpha + 1.0) - (nn + 1.0) * std::numbers::ln2 - nn * std::log(std::numbers::pi) -
               log_gamma(alpha + 1.0);
    }

    double constant() const { return std::exp(log_constant()); }
};

/// Exponent p in (1, inf) with its conjugate p' (1/p + 1/p' = 1).
struct PExponent {
    double p = 2.0;

    PExponent() = default;
    explicit PExponent(double value) : p(value) {
        if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("PExponent: p must lie in (1, inf)");
    }

    double conjugate() const noexcept { return p / (p - 1.0); }
};

inline cplx bergman_kernel(const TubePoint& z, const TubePoint& w, const KernelParams& kp) {
    detail::require_same_dim(z.dim(), kp.n, "bergman_kernel");
    detail::require_same_dim(w.dim(), kp.n, "bergman_kernel");
    const cplx r = rho_pair(z, w);
    return std::exp(kp.log_constant() + complex_pow_log(r, -kp.order()));
}

/// K_alpha(z, z) = c(n, alpha) rho(z)^{-(n+alpha+1)}, real and positive.
inline double kernel_diagonal(const TubePoint& z, const KernelParams& kp) {
    detail::require_same_dim(z.dim(), kp.n, "kernel_diagonal");
    return std::exp(kp.log_constant() - kp.order() * std::log(z.rho()));
}

/// k_z(w) = K(z, w) / sqrt(K(z, z)).
inline cplx normalized_kernel(const TubePoint& z, const TubePoint& w, const KernelParams& kp) {
    detail::require_same_dim(z.dim(), kp.n, "normalized_kernel");
    detail::require_same_dim(w.dim(), kp.n, "normalized_kernel");
    const cplx r = rho_pair(z, w);
    const double half_log_diag = 0.5 * (kp.log_constant() - kp.order() * std::log(z.rho()));
    return std::exp(kp.log_constant() - half_log_diag + complex_pow_log(r, -kp.order()));
}

} // namespace tubeberg
