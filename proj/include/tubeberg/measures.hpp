#pragma once

// Atomic measures on T_B and the quantities that characterise Carleson and
// vanishing Carleson measures: Berezin transform, averaging function,
// the kernel-test integral rho(z)^N int |rho(z,w)|^{-2N} dmu(w), lattice
// ratios mu(D(a_k,r)) / rho(a_k)^N, and the M_+ moment.
//
// Reports are sups over the grid or lattice that was supplied; nothing here
// claims a global verdict on the unbounded domain.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tubeberg/errors.hpp"
#include "tubeberg/geometry.hpp"
#include "tubeberg/integrate.hpp"
#include "tubeberg/kernel.hpp"
#include "tubeberg/lattice.hpp"
#include "tubeberg/sampling.hpp"

namespace tubeberg {

struct Atom {
    TubePoint point;
    double mass;
};

class AtomicMeasure {
public:
    explicit AtomicMeasure(std::size_t n) : n_(n) {
        if (n_ < 1) throw DomainError("AtomicMeasure: n must be >= 1");
    }

    void add(TubePoint point, double mass) {
        detail::require_same_dim(point.dim(), n_, "AtomicMeasure");
        if (!(mass > 0.0) || !std::isfinite(mass)) {
            throw DomainError("AtomicMeasure: atom masses must be positive and finite");
        }
        atoms_.push_back(Atom{std::move(point), mass});
    }

    std::size_t dim() const noexcept { return n_; }
    std::size_t size() const noexcept { return atoms_.size(); }
    bool empty() const noexcept { return atoms_.empty(); }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }

    double total_mass() const {
        double s = 0.0;
        for (const auto& a : atoms_) s += a.mass;
        return s;
    }

    AtomicMeasure scaled(double c) const {
        AtomicMeasure out(n_);
        for (const auto& a : atoms_) out.add(a.point, c * a.mass);
        return out;
    }

    /// Push-forward under an automorphism (masses unchanged).
    AtomicMeasure transported(const Automorphism& phi) const {
        AtomicMeasure out(n_);
        for (const auto& a : atoms_) out.add(phi(a.point), a.mass);
        return out;
    }

    /// mu(D(z, r)): total mass of atoms with beta(z, w_j) < r.
    double mass_in_ball(const TubePoint& z, double r) const {
        double s = 0.0;
        for (const auto& a : atoms_) {
            if (bergman_distance(z, a.point) < r) s += a.mass;
        }
        return s;
    }

private:
    std::size_t n_;
    std::vector<Atom> atoms_;
};

/// mu~(z) = sum_j m_j |k_z(w_j)|^2.
inline double berezin(const AtomicMeasure& mu, const TubePoint& z, const KernelParams& kp) {
    double s = 0.0;
    for (const auto& a : mu.atoms()) s += a.mass * std::norm(normalized_kernel(z, a.point, kp));
    return s;
}

struct AveragingValue {
    double value = 0.0;
    double mass = 0.0;       ///< mu(D(z, r)), exact
    IntegralEstimate volume; ///< V_alpha(D(z, r)), Monte Carlo
};

/// mu^_r(z) = mu(D(z,r)) / V_alpha(D(z,r)) with the volume from volume_ball.
inline AveragingValue averaging_detail(const AtomicMeasure& mu, const TubePoint& z, double r, const KernelParams& kp,
                                       const SamplerConfig& cfg) {
    AveragingValue out;
    out.mass = mu.mass_in_ball(z, r);
    out.volume = volume_ball(z, r, kp, cfg);
    const double v = out.volume.value.real();
    if (!(v > 0.0)) throw ConsistencyError("averaging: volume estimate is not positive; increase samples");
    out.value = out.mass / v;
    return out;
}

inline double averaging(const AtomicMeasure& mu, const TubePoint& z, double r, const KernelParams& kp,
                        const SamplerConfig& cfg) {
    return averaging_detail(mu, z, r, kp, cfg).value;
}

/// sum_j m_j rho(z)^N / |rho(z, w_j)|^{2N}, N = n + alpha + 1.
inline double condition2_integral(const AtomicMeasure& mu, const TubePoint& z, const KernelParams& kp) {
    const double order = kp.order();
    const double log_rz = std::log(z.rho());
    double s = 0.0;
    for (const auto& a : mu.atoms()) {
        s += a.mass * std::exp(order * log_rz - order * std::log(std::norm(rho_pair(z, a.point))));
    }
    return s;
}

/// mu(D(a, r)) / rho(a)^N.
inline double lattice_ratio(const AtomicMeasure& mu, const TubePoint& a, double r, const KernelParams& kp) {
    return mu.mass_in_ball(a, r) * std::exp(-kp.order() * std::log(a.rho()));
}

/// sum_j m_j / |rho(w_j, i)|^t; finite for every atomic measure.
inline double mplus_value(const AtomicMeasure& mu, double t) {
    if (!(t > 0.0)) throw DomainError("mplus_value: t must be positive");
    double s = 0.0;
    for (const auto& a : mu.atoms()) s += a.mass * std::pow(std::abs(rho_with_base(a.point)), -t);
    return s;
}

struct CarlesonReport {
    double sup_berezin = 0.0;
    double sup_averaging = 0.0;
    double sup_condition2 = 0.0;
    std::size_t argmax_berezin = 0;
    std::size_t argmax_averaging = 0;
    std::size_t argmax_condition2 = 0;
    std::vector<double> lattice_sups; ///< mu(D(a_k, r)) / rho(a_k)^N per lattice center
    double sup_lattice = 0.0;
    // scope of the verdict
    std::size_t grid_size = 0;
    std::size_t lattice_size = 0;
    double r = 0.0;
    double epsilon = 0.0;
};

/// Sups of the Berezin transform, the averaging function and the kernel-test
/// integral over `grid`, plus per-center lattice ratios. The averaging radius is lattice.r.
inline CarlesonReport carleson_report(const AtomicMeasure& mu, const Lattice& lattice, std::span<const TubePoint> grid,
                                      const KernelParams& kp, const SamplerConfig& cfg) {
    CarlesonReport rep;
    rep.grid_size = grid.size();
    rep.lattice_size = lattice.centers.size();
    rep.r = lattice.r;
    rep.epsilon = lattice.region.epsilon;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double b = berezin(mu, grid[g], kp);
        const double c2 = condition2_integral(mu, grid[g], kp);
        // the volume is only needed when some mass is in the ball
        const double mass = mu.mass_in_ball(grid[g], lattice.r);
        const double avg = mass > 0.0 ? averaging(mu, grid[g], lattice.r, kp, cfg) : 0.0;
        if (b > rep.sup_berezin) {
            rep.sup_berezin = b;
            rep.argmax_berezin = g;
        }
        if (c2 > rep.sup_condition2) {
            rep.sup_condition2 = c2;
            rep.argmax_condition2 = g;
        }
        if (avg > rep.sup_averaging) {
            rep.sup_averaging = avg;
            rep.argmax_averaging = g;
        }
    }
    rep.lattice_sups.reserve(lattice.centers.size());
    for (const auto& a : lattice.centers) {
        const double v = lattice_ratio(mu, a, lattice.r, kp);
        rep.lattice_sups.push_back(v);
        rep.sup_lattice = std::max(rep.sup_lattice, v);
    }
    return rep;
}

struct ProfilePoint {
    double t = 0.0;     ///< ray parameter, or rho(a_k) for lattice entries
    double value = 0.0;
};

struct VanishingProfile {
    std::vector<ProfilePoint> toward_boundary; ///< along (0', i t), t decreasing from 1
    std::vector<ProfilePoint> toward_infinity; ///< along (0', i t), t increasing from 1
    std::vector<ProfilePoint> lattice;         ///< (rho(a_k), ratio) sorted by rho(a_k) ascending
};

struct ProfileOptions {
    int steps = 12;               ///< points per ray after t = 1
    double decade_fraction = 0.5; ///< t multiplies by 10^{+-decade_fraction} per step
};

/// Kernel-test integral along rays approaching the boundary (rho -> 0) and infinity,
/// and the lattice ratios ordered by rho(a_k).
inline VanishingProfile vanishing_profile(const AtomicMeasure& mu, const Lattice& lattice, const KernelParams& kp,
                                          const ProfileOptions& opts = {}) {
    VanishingProfile prof;
    for (int k = 0; k <= opts.steps; ++k) {
        const double down = std::pow(10.0, -opts.decade_fraction * k);
        const double up = std::pow(10.0, opts.decade_fraction * k);
        prof.toward_boundary.push_back({down, condition2_integral(mu, TubePoint::on_axis(kp.n, down), kp)});
        prof.toward_infinity.push_back({up, condition2_integral(mu, TubePoint::on_axis(kp.n, up), kp)});
    }
    for (const auto& a : lattice.centers) prof.lattice.push_back({a.rho(), lattice_ratio(mu, a, lattice.r, kp)});
    std::stable_sort(prof.lattice.begin(), prof.lattice.end(),
                     [](const ProfilePoint& x, const ProfilePoint& y) { return x.t < y.t; });
    return prof;
}

/// Discretises a non-negative density g against dV_alpha into atoms at the
/// sample points, with masses g(z) * weight / samples.
template <class G>
AtomicMeasure discretize_density(G&& g, const KernelParams& kp, const SamplerConfig& cfg) {
    AtomicMeasure mu(kp.n);
    const double inv = 1.0 / static_cast<double>(cfg.samples);
    sample_tube(kp, cfg, [&](const TubeSample& s) {
        const double m = g(s.z) * s.weight * inv;
        if (m > 0.0 && std::isfinite(m)) mu.add(s.z, m);
    });
    return mu;
}

} // namespace tubeberg
