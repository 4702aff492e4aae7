#pragma once

// Points of the tube T_B = {x + iy : y_n > |y'|^2} and of the unit ball,
// the sesqui-polynomial pairing rho(z, w), the Bergman distance, the
// Cayley-type biholomorphism between the two models and the affine
// automorphisms of the tube.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tubeberg/errors.hpp"

namespace tubeberg {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

/// Points with rho(z) at or below this value are treated as boundary points.
inline constexpr double kBoundaryFloor = 1e-300;

/// Slack allowed below zero for the argument of the square root in the distance.
inline constexpr double kDistanceSlack = 1e-12;

namespace detail {

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionMismatch(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                " vs " + std::to_string(b) + ")");
    }
}

/// Sum of z_k * w_k over the first n-1 coordinates (bilinear, no conjugation).
inline cplx prime_dot(std::span<const cplx> z, std::span<const cplx> w) {
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k + 1 < z.size(); ++k) s += z[k] * w[k];
    return s;
}

/// y_n - |y'|^2 straight from the coordinates.
inline double coordinate_rho(std::span<const cplx> z) {
    double yy = 0.0;
    for (std::size_t k = 0; k + 1 < z.size(); ++k) yy += z[k].imag() * z[k].imag();
    return z.back().imag() - yy;
}

inline double squared_norm(std::span<const cplx> v) {
    double s = 0.0;
    for (const auto& c : v) s += std::norm(c);
    return s;
}

} // namespace detail

/// Tag for constructors that receive an already-validated rho value.
struct TrustedRho {
    explicit TrustedRho() = default;
};

/// A point of T_B together with its cached rho(z) = y_n - |y'|^2 > 0.
class TubePoint {
public:
    explicit TubePoint(CVector z) : z_(std::move(z)) {
        if (z_.empty()) throw DimensionMismatch("TubePoint: dimension must be at least 1");
        rho_ = detail::coordinate_rho(z_);
        if (!(rho_ > kBoundaryFloor)) {
            throw DomainError("TubePoint: point is not inside the tube (rho = " + std::to_string(rho_) + ")");
        }
    }

    /// Caller guarantees rho > kBoundaryFloor and that rho matches the coordinates up to rounding.
    TubePoint(CVector z, double rho, TrustedRho) : z_(std::move(z)), rho_(rho) {
        if (!(rho_ > kBoundaryFloor)) throw DomainError("TubePoint: point too close to the boundary");
    }

    /// The base point i = (0', i).
    static TubePoint base(std::size_t n) {
        CVector z(n, cplx{0.0, 0.0});
        z.back() = cplx{0.0, 1.0};
        return TubePoint(std::move(z), 1.0, TrustedRho{});
    }

    /// (0', i t) for t > 0.
    static TubePoint on_axis(std::size_t n, double t) {
        CVector z(n, cplx{0.0, 0.0});
        z.back() = cplx{0.0, t};
        return TubePoint(std::move(z));
    }

    std::size_t dim() const noexcept { return z_.size(); }
    const CVector& coords() const noexcept { return z_; }
    std::span<const cplx> span() const noexcept { return z_; }
    std::span<const cplx> prime() const noexcept { return std::span<const cplx>(z_).first(z_.size() - 1); }
    cplx last() const noexcept { return z_.back(); }
    double rho() const noexcept { return rho_; }
    cplx operator[](std::size_t k) const { return z_[k]; }

private:
    CVector z_;
    double rho_ = 0.0;
};

/// A point of the open unit ball of C^n.
class BallPoint {
public:
    explicit BallPoint(CVector xi) : xi_(std::move(xi)) {
        if (xi_.empty()) throw DimensionMismatch("BallPoint: dimension must be at least 1");
        norm2_ = detail::squared_norm(xi_);
        if (!(norm2_ < 1.0)) throw DomainError("BallPoint: |xi| >= 1");
    }

    static BallPoint origin(std::size_t n) { return BallPoint(CVector(n, cplx{0.0, 0.0})); }

    std::size_t dim() const noexcept { return xi_.size(); }
    const CVector& coords() const noexcept { return xi_; }
    std::span<const cplx> span() const noexcept { return xi_; }
    cplx last() const noexcept { return xi_.back(); }
    double norm2() const noexcept { return norm2_; }
    cplx operator[](std::size_t k) const { return xi_[k]; }

private:
    CVector xi_;
    double norm2_ = 0.0;
};

/// rho(z, w) = 1/4 ((z' - conj w')^2 - 2i (z_n - conj w_n)).
inline cplx rho_pair(std::span<const cplx> z, std::span<const cplx> w) {
    detail::require_same_dim(z.size(), w.size(), "rho_pair");
    if (z.empty()) throw DimensionMismatch("rho_pair: empty vector");
    cplx sq{0.0, 0.0};
    for (std::size_t k = 0; k + 1 < z.size(); ++k) {
        const cplx d = z[k] - std::conj(w[k]);
        sq += d * d;
    }
    const cplx dn = z.back() - std::conj(w.back());
    return 0.25 * (sq - cplx{0.0, 2.0} * dn);
}

inline cplx rho_pair(const TubePoint& z, const TubePoint& w) { return rho_pair(z.span(), w.span()); }

/// rho(z, i) = 1/4 (z'.z' - 2i z_n + 2).
inline cplx rho_with_base(std::span<const cplx> z) {
    return 0.25 * (detail::prime_dot(z, z) - cplx{0.0, 2.0} * z.back() + 2.0);
}

inline cplx rho_with_base(const TubePoint& z) { return rho_with_base(z.span()); }

inline double rho(const TubePoint& z) noexcept { return z.rho(); }

/// True iff Im p_n - sum_{k<n} (Im p_k)^2 > 0.
inline bool contains(std::span<const cplx> p) {
    if (p.empty()) return false;
    return detail::coordinate_rho(p) > 0.0;
}

/// Phi(xi) = (sqrt2 xi' / (1 + xi_n), i (1 - xi_n)/(1 + xi_n) - i xi'.xi' / (1 + xi_n)^2).
inline TubePoint cayley(const BallPoint& xi) {
    const auto s = xi.span();
    const cplx denom = 1.0 + s.back();
    const cplx inv = 1.0 / denom;
    CVector z(s.size());
    for (std::size_t k = 0; k + 1 < s.size(); ++k) z[k] = std::numbers::sqrt2 * s[k] * inv;
    const cplx ii{0.0, 1.0};
    z.back() = ii * (1.0 - s.back()) * inv - ii * detail::prime_dot(s, s) * inv * inv;
    const double r = (1.0 - xi.norm2()) / std::norm(denom);
    return TubePoint(std::move(z), r, TrustedRho{});
}

/// Inverse of cayley: xi' = z' / (sqrt2 rho(z,i)), xi_n = 1/rho(z,i) - 1.
inline BallPoint cayley_inv(const TubePoint& z) {
    const cplx r = rho_with_base(z);
    const cplx inv = 1.0 / r;
    const auto s = z.span();
    CVector xi(s.size());
    for (std::size_t k = 0; k + 1 < s.size(); ++k) xi[k] = s[k] * inv / std::numbers::sqrt2;
    xi.back() = inv - 1.0;
    return BallPoint(std::move(xi));
}

/// Real Jacobian of cayley at xi: 2^{n+1} / |1 + xi_n|^{2(n+1)}.
inline double jacobian_cayley(const BallPoint& xi) {
    const double n = static_cast<double>(xi.dim());
    return std::exp2(n + 1.0) / std::pow(std::norm(1.0 + xi.last()), n + 1.0);
}

/// Real Jacobian of cayley_inv at z: 1 / (2^{n+1} |rho(z,i)|^{2(n+1)}).
inline double jacobian_cayley_inv(const TubePoint& z) {
    const double n = static_cast<double>(z.dim());
    return 1.0 / (std::exp2(n + 1.0) * std::pow(std::norm(rho_with_base(z)), n + 1.0));
}

/// Bergman distance artanh sqrt(1 - rho(z) rho(w) / |rho(z,w)|^2).
///
/// The diagonal values are taken from rho_pair so that beta(z, z) is exactly 0.
inline double bergman_distance(const TubePoint& z, const TubePoint& w) {
    const double rz = rho_pair(z, z).real();
    const double rw = rho_pair(w, w).real();
    const cplx c = rho_pair(z, w);
    const double q = (rz * rw) / std::norm(c);
    const double arg = 1.0 - q;
    if (arg < -kDistanceSlack) {
        throw ConsistencyError("bergman_distance: 1 - rho(z)rho(w)/|rho(z,w)|^2 = " + std::to_string(arg));
    }
    if (arg <= 0.0) return 0.0;
    if (q <= 0.0) throw ConsistencyError("bergman_distance: non-positive rho ratio");
    // artanh(s) = log((1 + s) / sqrt(1 - s^2)) with 1 - s^2 = q
    const double s = std::sqrt(std::min(arg, 1.0));
    return std::log((1.0 + s) / std::sqrt(q));
}

/// Affine automorphisms of T_B built from dilations delta_t(w) = (t w', t^2 w_n)
/// and shifts h_z, and the composites sigma_z = delta_{rho(z)^{-1/2}} o h_z
/// that send z to the base point i.
///
/// h_z(w) = (w' - z', w_n - Re z_n - 2 b'.(w' - a') + i |b'|^2) with z' = a' + i b'.
/// It preserves rho(., .) exactly and sends z to (0', i rho(z)).
class Automorphism {
public:
    static Automorphism identity() { return Automorphism{}; }

    static Automorphism dilation(double t) {
        if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("dilation: t must be positive and finite");
        Automorphism a;
        a.steps_.push_back(Step{Kind::dilate, t, {}});
        return a;
    }

    static Automorphism shift(const TubePoint& z) {
        Automorphism a;
        a.steps_.push_back(Step{Kind::shift, 1.0, z.coords()});
        return a;
    }

    static Automorphism sigma(const TubePoint& z) {
        return shift(z).then(dilation(1.0 / std::sqrt(z.rho())));
    }

    /// next o this
    Automorphism then(const Automorphism& next) const {
        Automorphism a = *this;
        a.steps_.insert(a.steps_.end(), next.steps_.begin(), next.steps_.end());
        return a;
    }

    Automorphism inverse() const {
        Automorphism a;
        for (auto it = steps_.rbegin(); it != steps_.rend(); ++it) {
            switch (it->kind) {
            case Kind::dilate: a.steps_.push_back(Step{Kind::dilate, 1.0 / it->t, {}}); break;
            case Kind::shift: a.steps_.push_back(Step{Kind::unshift, 1.0, it->z}); break;
            case Kind::unshift: a.steps_.push_back(Step{Kind::shift, 1.0, it->z}); break;
            }
        }
        return a;
    }

    /// Modulus of the (constant) complex Jacobian determinant.
    double jacobian_modulus(std::size_t n) const {
        double j = 1.0;
        for (const auto& s : steps_) {
            if (s.kind == Kind::dilate) j *= std::pow(s.t, static_cast<double>(n) + 1.0);
        }
        return j;
    }

    TubePoint operator()(const TubePoint& w) const {
        CVector v = w.coords();
        double r = w.rho();
        for (const auto& s : steps_) {
            if (s.kind != Kind::dilate) detail::require_same_dim(s.z.size(), v.size(), "automorphism");
            switch (s.kind) {
            case Kind::dilate:
                for (std::size_t k = 0; k + 1 < v.size(); ++k) v[k] *= s.t;
                v.back() *= s.t * s.t;
                r *= s.t * s.t;
                break;
            case Kind::shift: apply_shift(s.z, v, +1); break;
            case Kind::unshift: apply_shift(s.z, v, -1); break;
            }
        }
        double scale = std::abs(v.back().imag());
        for (std::size_t k = 0; k + 1 < v.size(); ++k) scale += v[k].imag() * v[k].imag();
        const double coord = detail::coordinate_rho(v);
        if (coord < -1e-10 * scale) {
            throw ConsistencyError("automorphism: image left the tube (rho = " + std::to_string(coord) + ")");
        }
        return TubePoint(std::move(v), r, TrustedRho{});
    }

    bool empty() const noexcept { return steps_.empty(); }

private:
    enum class Kind { dilate, shift, unshift };
    struct Step {
        Kind kind;
        double t;
        CVector z;
    };

    static void apply_shift(const CVector& z, CVector& v, int direction) {
        // forward:  v' -> v' - z',  v_n -> v_n - Re z_n - 2 b'.(v' - a') + i|b'|^2
        // backward: v' -> v' + z',  v_n -> v_n + Re z_n + 2 b'.(v'_new - a') - i|b'|^2
        double bb = 0.0;
        for (std::size_t k = 0; k + 1 < z.size(); ++k) bb += z[k].imag() * z[k].imag();
        if (direction > 0) {
            cplx lin{0.0, 0.0};
            for (std::size_t k = 0; k + 1 < z.size(); ++k) lin += z[k].imag() * (v[k] - z[k].real());
            for (std::size_t k = 0; k + 1 < z.size(); ++k) v[k] -= z[k];
            v.back() += -z.back().real() - 2.0 * lin + cplx{0.0, bb};
        } else {
            for (std::size_t k = 0; k + 1 < z.size(); ++k) v[k] += z[k];
            cplx lin{0.0, 0.0};
            for (std::size_t k = 0; k + 1 < z.size(); ++k) lin += z[k].imag() * (v[k] - z[k].real());
            v.back() += z.back().real() + 2.0 * lin - cplx{0.0, bb};
        }
    }

    std::vector<Step> steps_;
};

inline TubePoint apply_automorphism(const Automorphism& a, const TubePoint& w) { return a(w); }

} // namespace tubeberg
