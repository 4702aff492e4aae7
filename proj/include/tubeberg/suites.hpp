#pragma once

// Named verification suites run by `tubeberg verify`. Each suite returns a list
// of checks with the measured value, the bound it is held to and the margin.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tubeberg/geometry.hpp"
#include "tubeberg/integrate.hpp"
#include "tubeberg/kernel.hpp"
#include "tubeberg/lattice.hpp"
#include "tubeberg/measures.hpp"
#include "tubeberg/sampling.hpp"
#include "tubeberg/toeplitz.hpp"

namespace tubeberg::suites {

struct Check {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    bool passed = false;

    /// Distance to the bound; negative when the check failed.
    double margin() const { return passed ? std::abs(bound - value) : -std::abs(bound - value); }
};

struct SuiteParams {
    std::size_t n = 1;
    double alpha = 0.0;
    std::uint64_t seed = 0;
    std::optional<std::uint64_t> samples; ///< suite default when empty
    unsigned workers = 1;
    double r = 1.0;
    double epsilon = 0.5;
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;

    bool passed() const {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }

    void at_most(std::string name, double value, double bound) {
        checks.push_back({std::move(name), value, bound, value <= bound});
    }
    void at_least(std::string name, double value, double bound) {
        checks.push_back({std::move(name), value, bound, value >= bound});
    }
    /// For checks whose verdict is not a plain comparison (e.g. 3 sigma with a rounding floor).
    void record(std::string name, double value, double bound, bool passed) {
        checks.push_back({std::move(name), value, bound, passed});
    }
    void equal(std::string name, double value, double expected) {
        checks.push_back({std::move(name), value, expected, value == expected});
    }
};

namespace detail {

using tubeberg::detail::substream_seed;
using tubeberg::detail::uniform_ball;

inline std::uint64_t samples_or(const SuiteParams& p, std::uint64_t fallback) { return p.samples.value_or(fallback); }

inline TubePoint random_tube_point(std::size_t n, double radius, std::mt19937_64& eng) {
    return cayley(BallPoint(uniform_ball(n, radius, eng)));
}

inline cplx herm(std::span<const cplx> a, std::span<const cplx> b) {
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * std::conj(b[k]);
    return s;
}

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Real 2n x 2n Jacobian determinant of cayley by central differences.
inline double fd_jacobian_cayley(const CVector& xi, double h) {
    const std::size_t n = xi.size();
    const std::size_t m = 2 * n;
    std::vector<double> a(m * m);
    for (std::size_t c = 0; c < m; ++c) {
        CVector plus = xi, minus = xi;
        const cplx step = (c % 2 == 0) ? cplx{h, 0.0} : cplx{0.0, h};
        plus[c / 2] += step;
        minus[c / 2] -= step;
        const TubePoint fp = cayley(BallPoint(plus));
        const TubePoint fm = cayley(BallPoint(minus));
        for (std::size_t k = 0; k < n; ++k) {
            const cplx d = (fp[k] - fm[k]) / (2.0 * h);
            a[(2 * k) * m + c] = d.real();
            a[(2 * k + 1) * m + c] = d.imag();
        }
    }
    double det = 1.0;
    for (std::size_t c = 0; c < m; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < m; ++r) {
            if (std::abs(a[r * m + c]) > std::abs(a[piv * m + c])) piv = r;
        }
        if (a[piv * m + c] == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t k = 0; k < m; ++k) std::swap(a[c * m + k], a[piv * m + k]);
            det = -det;
        }
        det *= a[c * m + c];
        for (std::size_t r = c + 1; r < m; ++r) {
            const double f = a[r * m + c] / a[c * m + c];
            for (std::size_t k = c; k < m; ++k) a[r * m + k] -= f * a[c * m + k];
        }
    }
    return det;
}

inline AtomicMeasure random_measure(std::size_t n, int atoms, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> mass(0.1, 2.0);
    AtomicMeasure mu(n);
    for (int k = 0; k < atoms; ++k) mu.add(random_tube_point(n, 0.8, eng), mass(eng));
    return mu;
}

} // namespace detail

/// Cayley transform round trips, the pairing identities and the Jacobians.
inline SuiteResult biholomorphism(const SuiteParams& p) {
    SuiteResult out{"biholomorphism", {}};
    std::mt19937_64 eng(detail::substream_seed(p.seed, 1));
    const std::uint64_t points = detail::samples_or(p, 100'000);
    const std::uint64_t pairs = std::max<std::uint64_t>(points / 10, 1);
    double round_ball = 0.0, round_tube = 0.0;
    for (std::uint64_t k = 0; k < points; ++k) {
        const CVector xi = detail::uniform_ball(p.n, 1.0, eng);
        const BallPoint back = cayley_inv(cayley(BallPoint(xi)));
        for (std::size_t j = 0; j < p.n; ++j) round_ball = std::max(round_ball, std::abs(back[j] - xi[j]));
        const TubePoint z = detail::random_tube_point(p.n, 0.99, eng);
        const TubePoint z2 = cayley(cayley_inv(z));
        for (std::size_t j = 0; j < p.n; ++j) {
            round_tube = std::max(round_tube, std::abs(z2[j] - z[j]) / std::max(1.0, std::abs(z[j])));
        }
    }
    out.at_most("ball round trip max |error|", round_ball, 1e-10);
    out.at_most("tube round trip max relative error", round_tube, 1e-10);

    double inner_id = 0.0, last_id = 0.0, pairing_id = 0.0, jac_product = 0.0;
    const TubePoint i = TubePoint::base(p.n);
    for (std::uint64_t k = 0; k < pairs; ++k) {
        const TubePoint z = detail::random_tube_point(p.n, 0.99, eng);
        const TubePoint w = detail::random_tube_point(p.n, 0.99, eng);
        const BallPoint a = cayley_inv(z);
        const BallPoint b = cayley_inv(w);
        const cplx lhs = 1.0 - detail::herm(a.span(), b.span());
        const cplx rhs = rho_pair(z, w) / (rho_with_base(z) * rho_pair(i, w));
        inner_id = std::max(inner_id, detail::rel(lhs, rhs));
        last_id = std::max(last_id, detail::rel(1.0 + a.last(), 1.0 / rho_with_base(z)));

        const BallPoint xi(detail::uniform_ball(p.n, 0.99, eng));
        const BallPoint eta(detail::uniform_ball(p.n, 0.99, eng));
        const cplx expected =
            (1.0 - detail::herm(xi.span(), eta.span())) / ((1.0 + xi.last()) * std::conj(1.0 + eta.last()));
        pairing_id = std::max(pairing_id, detail::rel(rho_pair(cayley(xi), cayley(eta)), expected));
        jac_product = std::max(jac_product, std::abs(jacobian_cayley(a) * jacobian_cayley_inv(z) - 1.0));
    }
    out.at_most("1 - <inv z, inv w> vs rho(z,w)/(rho(z,i) rho(i,w)) relative", inner_id, 1e-10);
    out.at_most("1 + inv(z)_n vs 1/rho(z,i) relative", last_id, 1e-10);
    out.at_most("rho(Phi xi, Phi eta) vs (1 - <xi,eta>)/((1+xi_n)(1+conj eta_n)) relative", pairing_id, 1e-10);
    out.at_most("Jacobian product - 1", jac_product, 1e-10);

    double fd = 0.0;
    for (int k = 0; k < 100; ++k) {
        const CVector xi = detail::uniform_ball(p.n, 0.9, eng);
        const double exact = jacobian_cayley(BallPoint(xi));
        fd = std::max(fd, std::abs(detail::fd_jacobian_cayley(xi, 1e-5) - exact) / exact);
    }
    out.at_most("Jacobian vs central differences relative", fd, 1e-5);
    out.at_most("Jacobian of Phi at 0 minus 2^{n+1}",
                std::abs(jacobian_cayley(BallPoint::origin(p.n)) - std::exp2(static_cast<double>(p.n) + 1.0)), 1e-12);
    return out;
}

/// Bergman distance: zero diagonal, symmetry, triangle inequality, invariance and the ball model.
inline SuiteResult metric(const SuiteParams& p) {
    SuiteResult out{"metric", {}};
    std::mt19937_64 eng(detail::substream_seed(p.seed, 2));
    const std::uint64_t count = detail::samples_or(p, 10'000);
    double diag = 0.0, sym = 0.0, inv = 0.0, ball = 0.0;
    double tri = -std::numeric_limits<double>::infinity();
    for (std::uint64_t k = 0; k < count; ++k) {
        const TubePoint u = detail::random_tube_point(p.n, 0.95, eng);
        const TubePoint v = detail::random_tube_point(p.n, 0.95, eng);
        const TubePoint w = detail::random_tube_point(p.n, 0.95, eng);
        const TubePoint c = detail::random_tube_point(p.n, 0.8, eng);
        diag = std::max(diag, bergman_distance(u, u));
        const double duv = bergman_distance(u, v);
        sym = std::max(sym, std::abs(duv - bergman_distance(v, u)));
        tri = std::max(tri, duv - bergman_distance(u, w) - bergman_distance(w, v));
        const auto s = Automorphism::sigma(c);
        inv = std::max(inv, std::abs(bergman_distance(s(u), s(v)) - duv) / std::max(1.0, duv));
        const BallPoint a = cayley_inv(u);
        const BallPoint b = cayley_inv(v);
        const double q = (1.0 - a.norm2()) * (1.0 - b.norm2()) / std::norm(1.0 - detail::herm(b.span(), a.span()));
        const double model = std::atanh(std::sqrt(std::max(0.0, 1.0 - q)));
        ball = std::max(ball, std::abs(model - duv) / std::max(1.0, duv));
    }
    out.equal("max beta(z,z)", diag, 0.0);
    out.at_most("max |beta(u,v) - beta(v,u)|", sym, 1e-12);
    out.at_most("max triangle excess", tri, 1e-9);
    out.at_most("sigma invariance max relative error", inv, 1e-9);
    out.at_most("tube vs ball model max relative error", ball, 1e-10);
    const double known = bergman_distance(TubePoint::base(p.n), TubePoint::on_axis(p.n, 1.0 / 3.0));
    out.at_most("beta(i, i/3) vs artanh(1/2)", std::abs(known - std::atanh(0.5)), 1e-14);
    return out;
}

/// Monte-Carlo integrals of rho(z,w)^{-r} rho(w,u)^{-s} against their closed form.
inline SuiteResult reproducing(const SuiteParams& p) {
    SuiteResult out{"reproducing", {}};
    const std::size_t n = p.n;
    const double nn = static_cast<double>(n);
    const SamplerConfig cfg{detail::samples_or(p, 1'000'000), p.seed, p.workers};
    std::mt19937_64 eng(detail::substream_seed(p.seed, 3));
    struct Case {
        std::string label;
        RFParams rf;
        TubePoint z, u;
    };
    const TubePoint i = TubePoint::base(n);
    std::vector<Case> cases;
    cases.push_back({"r=s=n+1, t=0 at z=u=i", {nn + 1.0, nn + 1.0, 0.0}, i, i});
    cases.push_back({"r=s=n+1, t=0 off centre", {nn + 1.0, nn + 1.0, 0.0}, detail::random_tube_point(n, 0.4, eng),
                     detail::random_tube_point(n, 0.4, eng)});
    const double order = nn + p.alpha + 1.0;
    cases.push_back({"self reproduction r=s=n+alpha+1, t=alpha", {order, order, p.alpha},
                     detail::random_tube_point(n, 0.4, eng), detail::random_tube_point(n, 0.4, eng)});
    cases.push_back({"r=s=n+2, t=1 off centre", {nn + 2.0, nn + 2.0, 1.0}, detail::random_tube_point(n, 0.4, eng),
                     detail::random_tube_point(n, 0.4, eng)});
    for (const auto& c : cases) {
        const IntegralEstimate est = rf_mc(n, c.rf, c.z, c.u, cfg);
        const cplx exact = rf_exact(n, c.rf, c.z, c.u);
        out.record(c.label + ": sigma distance", est.sigma_distance(exact), 3.0, est.consistent_with(exact));
        out.at_most(c.label + ": relative stderr", est.relative_error(), 0.02);
    }
    if (n == 1) {
        const TubePoint z = cases[1].z, u = cases[1].u;
        const cplx r = rho_pair(z, u);
        out.at_most("closed form 4 pi / rho(z,u)^2 relative",
                    detail::rel(rf_exact(1, {2.0, 2.0, 0.0}, z, u), 4.0 * std::numbers::pi / (r * r)), 1e-12);
    }
    return out;
}

/// Unit norm of the normalized kernel in the weighted space.
inline SuiteResult normalization(const SuiteParams& p) {
    SuiteResult out{"normalization", {}};
    const KernelParams kp(p.n, p.alpha);
    const SamplerConfig cfg{detail::samples_or(p, 300'000), p.seed, p.workers};
    std::mt19937_64 eng(detail::substream_seed(p.seed, 4));
    const std::vector<TubePoint> zs{TubePoint::base(p.n), TubePoint::on_axis(p.n, 3.0),
                                    detail::random_tube_point(p.n, 0.5, eng)};
    for (std::size_t k = 0; k < zs.size(); ++k) {
        const TubePoint& z = zs[k];
        const IntegralEstimate est =
            integrate([&](const TubePoint& w) { return std::norm(normalized_kernel(z, w, kp)); }, kp, cfg);
        const std::string label = "point " + std::to_string(k);
        out.record(label + ": sigma distance to 1", est.sigma_distance(1.0), 3.0, est.consistent_with(1.0));
        out.at_most(label + ": relative stderr", est.relative_error(), 0.02);
    }
    return out;
}

/// Metric-ball volumes scale like rho(z)^{n+alpha+1}; half-plane closed form.
inline SuiteResult volume(const SuiteParams& p) {
    SuiteResult out{"volume", {}};
    const KernelParams kp(p.n, p.alpha);
    const SamplerConfig cfg{detail::samples_or(p, 1'000'000), p.seed, p.workers};
    const std::vector<TubePoint> centers{TubePoint::base(p.n), TubePoint::on_axis(p.n, 4.0),
                                         TubePoint::on_axis(p.n, 0.25)};
    std::vector<double> ratios;
    for (const auto& c : centers) {
        const IntegralEstimate est = volume_ball(c, 0.5, kp, cfg);
        ratios.push_back(est.value.real() / std::pow(c.rho(), kp.order()));
    }
    const auto [lo, hi] = std::minmax_element(ratios.begin(), ratios.end());
    out.at_most("relative spread of V(D(z,r))/rho(z)^N across centers", (*hi - *lo) / *lo, 0.05);

    const KernelParams half(1, 0.0);
    const double d = std::tanh(0.5);
    const double exact = 4.0 * std::numbers::pi * d * d / ((1.0 - d * d) * (1.0 - d * d));
    const IntegralEstimate est = volume_ball(TubePoint::base(1), 0.5, half, cfg);
    out.record("half-plane closed form sigma distance", est.sigma_distance(exact), 3.0, est.consistent_with(exact));
    return out;
}

/// 2|rho(z,w)| >= max(rho(z), rho(w)) over random pairs, including points near the boundary and far out.
inline SuiteResult comparability(const SuiteParams& p) {
    SuiteResult out{"comparability", {}};
    std::mt19937_64 eng(detail::substream_seed(p.seed, 5));
    std::uniform_real_distribution<double> logt(-6.0, 6.0);
    const std::uint64_t pairs = detail::samples_or(p, 1'000'000);
    std::uint64_t violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    auto draw = [&]() {
        const TubePoint z = detail::random_tube_point(p.n, 0.999999, eng);
        return Automorphism::dilation(std::pow(10.0, 0.5 * logt(eng)))(z);
    };
    for (std::uint64_t k = 0; k < pairs; ++k) {
        const TubePoint z = draw();
        const TubePoint w = draw();
        const double lhs = 2.0 * std::abs(rho_pair(z, w));
        const double rhs = std::max(z.rho(), w.rho());
        const double ratio = lhs / rhs;
        worst = std::min(worst, ratio);
        if (ratio < 1.0 - 1e-12) ++violations;
    }
    out.equal("violations", static_cast<double>(violations), 0.0);
    out.at_least("min 2|rho(z,w)| / max(rho(z), rho(w))", worst, 1.0 - 1e-12);
    return out;
}

/// r-lattice construction: separation, covering and stable multiplicity.
inline SuiteResult lattice(const SuiteParams& p) {
    SuiteResult out{"lattice", {}};
    LatticeOptions opts;
    opts.workers = p.workers;
    const Lattice l = build_lattice(p.n, p.r, RegionSpec(p.epsilon), p.seed, opts);
    const std::uint64_t probes = detail::samples_or(p, 100'000);
    out.at_least("centers", static_cast<double>(l.centers.size()), 1.0);
    out.equal("separated", verify_separation(l) ? 1.0 : 0.0, 1.0);
    const CoverReport cover = verify_cover(l, probes, detail::substream_seed(p.seed, 6), p.workers);
    out.equal("uncovered probes", static_cast<double>(cover.uncovered), 0.0);
    const int small = multiplicity(l, std::max<std::uint64_t>(probes / 10, 1), detail::substream_seed(p.seed, 7), p.workers);
    const int large = multiplicity(l, probes, detail::substream_seed(p.seed, 7), p.workers);
    out.at_most("|N(probes) - N(probes/10)|", std::abs(large - small), 1.0);
    return out;
}

/// Carleson diagnostics for the point mass at i and Berezin / operator agreement.
inline SuiteResult carleson(const SuiteParams& p) {
    SuiteResult out{"carleson", {}};
    const KernelParams half(1, 0.0);
    AtomicMeasure delta(1);
    delta.add(TubePoint::base(1), 1.0);
    out.equal("condition2(delta_i, i) for n=1, alpha=0", condition2_integral(delta, TubePoint::base(1), half), 1.0);

    LatticeOptions opts;
    opts.candidates = 2000;
    opts.multiplicity_probes = 2000;
    const Lattice l = build_lattice(1, 1.0, RegionSpec(0.5), p.seed, opts);
    const VanishingProfile prof = vanishing_profile(delta, l, half);
    for (const auto* ray : {&prof.toward_boundary, &prof.toward_infinity}) {
        const std::string label = ray == &prof.toward_boundary ? "t -> 0" : "t -> infinity";
        double worst_step = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 1; k < ray->size(); ++k) {
            worst_step = std::max(worst_step, (*ray)[k].value - (*ray)[k - 1].value);
        }
        out.at_most(label + ": max consecutive increase (must be negative)", worst_step, -1e-300);
        out.at_most(label + ": end / peak", ray->back().value / ray->front().value, 1e-6);
    }

    const KernelParams kp(p.n, p.alpha);
    std::mt19937_64 eng(detail::substream_seed(p.seed, 8));
    const AtomicMeasure mu = detail::random_measure(p.n, 10, eng);
    const ToeplitzModel tm = build_model(mu, kp);
    double err = 0.0;
    for (int k = 0; k < 100; ++k) {
        const TubePoint z = detail::random_tube_point(p.n, 0.9, eng);
        const double b = berezin(mu, z, kp);
        err = std::max(err, std::abs(berezin_via_operator(tm, z) - b) / b);
    }
    out.at_most("Berezin transform vs <T k_z, k_z> relative", err, 1e-12);
    const double c2 = condition2_integral(mu, TubePoint::base(p.n), kp);
    out.at_most("condition2 linear in mass relative",
                std::abs(condition2_integral(mu.scaled(3.0), TubePoint::base(p.n), kp) - 3.0 * c2) / (3.0 * c2), 1e-14);
    return out;
}

/// Exactness of the finite-rank Toeplitz model.
inline SuiteResult toeplitz(const SuiteParams& p) {
    SuiteResult out{"toeplitz", {}};
    const KernelParams kp(p.n, p.alpha);
    std::mt19937_64 eng(detail::substream_seed(p.seed, 9));
    EigenOptions eo;
    eo.seed = p.seed;

    double single = 0.0;
    for (int k = 0; k < 10; ++k) {
        const TubePoint w = detail::random_tube_point(p.n, 0.9, eng);
        AtomicMeasure mu(p.n);
        mu.add(w, 0.5 + k);
        const double expected = (0.5 + k) * kernel_diagonal(w, kp);
        single = std::max(single, std::abs(operator_norm(build_model(mu, kp), eo) - expected) / expected);
    }
    out.at_most("single atom norm vs m K(w,w) relative", single, 1e-12);

    const AtomicMeasure mu = detail::random_measure(p.n, 20, eng);
    const ToeplitzModel tm = build_model(mu, kp);
    double consistency = 0.0;
    for (int k = 0; k < 100; ++k) {
        const TubePoint z = detail::random_tube_point(p.n, 0.9, eng);
        const double b = berezin(mu, z, kp);
        consistency = std::max(consistency, std::abs(berezin_via_operator(tm, z) - b) / b);
    }
    out.at_most("Berezin vs operator form relative", consistency, 1e-12);

    const auto ev = spectral_profile(tm, eo);
    double sum = 0.0, trace = 0.0;
    for (double v : ev) sum += v;
    for (const auto& a : mu.atoms()) trace += a.mass * kernel_diagonal(a.point, kp);
    out.at_most("trace identity relative", std::abs(sum - trace) / trace, 1e-10);

    double worst = 0.0;
    for (int m = 0; m < 30; ++m) {
        const AtomicMeasure nu = detail::random_measure(p.n, 8, eng);
        const double norm = operator_norm(build_model(nu, kp), eo);
        double sup = 0.0;
        for (int k = 0; k < 50; ++k) sup = std::max(sup, berezin(nu, detail::random_tube_point(p.n, 0.9, eng), kp));
        for (const auto& a : nu.atoms()) sup = std::max(sup, berezin(nu, a.point, kp));
        worst = std::max(worst, sup / norm);
    }
    out.at_most("max sup Berezin / norm over 30 measures", worst, 1.0 + 1e-9);

    double cross = 0.0;
    for (int atoms : {1, 2, 8, 16, 32, 64}) {
        const ToeplitzModel t = build_model(detail::random_measure(p.n, atoms, eng), kp);
        const auto pw = spectral_profile(t, eo);
        const auto jac = jacobi_eigenvalues(t.core);
        const double scale = t.core.frobenius();
        for (std::size_t k = 0; k < pw.size(); ++k) cross = std::max(cross, std::abs(pw[k] - jac[k]) / scale);
    }
    out.at_most("power iteration vs Jacobi max |difference| / ||core||_F", cross, 1e-10);
    return out;
}

/// Monte-Carlo results do not depend on the worker count.
inline SuiteResult determinism(const SuiteParams& p) {
    SuiteResult out{"determinism", {}};
    const std::uint64_t samples = detail::samples_or(p, 100'000);
    const KernelParams kp(p.n, p.alpha);
    const TubePoint z = TubePoint::on_axis(p.n, 0.7);
    const double nn = static_cast<double>(p.n);
    const unsigned many = std::max(4u, p.workers);
    auto same = [](const IntegralEstimate& a, const IntegralEstimate& b) {
        return a.value == b.value && a.std_error == b.std_error && a.skipped == b.skipped;
    };
    const RFParams rf{nn + 1.0, nn + 1.0, 0.0};
    out.equal("rf_mc identical for 1 and many workers",
              same(rf_mc(p.n, rf, z, TubePoint::base(p.n), {samples, p.seed, 1}),
                   rf_mc(p.n, rf, z, TubePoint::base(p.n), {samples, p.seed, many}))
                  ? 1.0
                  : 0.0,
              1.0);
    out.equal("volume_ball identical for 1 and many workers",
              same(volume_ball(z, 0.5, kp, {samples, p.seed, 1}), volume_ball(z, 0.5, kp, {samples, p.seed, many}))
                  ? 1.0
                  : 0.0,
              1.0);
    LatticeOptions opts;
    opts.candidates = 2000;
    opts.multiplicity_probes = 5000;
    const Lattice l = build_lattice(p.n, 1.0, RegionSpec(0.5), p.seed, opts);
    out.equal("multiplicity identical for 1 and many workers",
              multiplicity(l, 20'000, p.seed, 1) == multiplicity(l, 20'000, p.seed, many) ? 1.0 : 0.0, 1.0);
    const CoverReport a = verify_cover(l, 20'000, p.seed, 1);
    const CoverReport b = verify_cover(l, 20'000, p.seed, many);
    out.equal("cover counts identical for 1 and many workers",
              a.uncovered == b.uncovered && a.outside_uncovered == b.outside_uncovered ? 1.0 : 0.0, 1.0);
    return out;
}

struct SuiteInfo {
    std::string name;
    std::string alias; ///< empty when none
    std::string summary;
    std::function<SuiteResult(const SuiteParams&)> run;
};

inline const std::vector<SuiteInfo>& registry() {
    static const std::vector<SuiteInfo> suites{
        {"biholomorphism", "lemma36", "Cayley transform round trips, pairing identities, Jacobians", biholomorphism},
        {"metric", "", "Bergman distance axioms, invariance, ball model", metric},
        {"reproducing", "lemma35", "Monte-Carlo vs closed-form reproducing integrals", reproducing},
        {"normalization", "", "unit norm of the normalized kernel", normalization},
        {"volume", "", "metric-ball volume scaling and half-plane closed form", volume},
        {"comparability", "lemma37", "2|rho(z,w)| >= max(rho(z), rho(w))", comparability},
        {"lattice", "lemma31", "lattice separation, covering, multiplicity", lattice},
        {"carleson", "theorem41", "Carleson diagnostics and Berezin consistency", carleson},
        {"toeplitz", "theorem61", "finite-rank Toeplitz model exactness", toeplitz},
        {"determinism", "", "worker-count independence of sampled results", determinism},
    };
    return suites;
}

inline const SuiteInfo* find_suite(const std::string& name) {
    for (const auto& s : registry()) {
        if (s.name == name || (!s.alias.empty() && s.alias == name)) return &s;
    }
    return nullptr;
}

} // namespace tubeberg::suites
