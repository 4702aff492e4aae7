#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "tubeberg/errors.hpp"

namespace tubeberg {

/// log Gamma(x) for x > 0.
inline double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
    return std::lgamma(x);
}

/// Principal branch base^s = exp(s Log base); base must lie in the open right half-plane.
inline std::complex<double> complex_pow(std::complex<double> base, double s) {
    if (!(base.real() > 0.0)) {
        throw ConsistencyError("complex_pow: Re base <= 0 (" + std::to_string(base.real()) + ")");
    }
    return std::exp(s * std::log(base));
}

/// Same as complex_pow but returns the logarithm s Log base, for log-space assembly.
inline std::complex<double> complex_pow_log(std::complex<double> base, double s) {
    if (!(base.real() > 0.0)) {
        throw ConsistencyError("complex_pow: Re base <= 0 (" + std::to_string(base.real()) + ")");
    }
    return s * std::log(base);
}

} // namespace tubeberg
