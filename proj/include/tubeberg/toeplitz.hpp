#pragma once

// Toeplitz operators T_mu f(z) = int K_alpha(z, w) f(w) dmu(w) for atomic mu on A^2_alpha.
//
// With mu = sum_j m_j delta_{w_j}, T_mu = sum_j m_j <., K_{w_j}> K_{w_j}. Its nonzero
// spectrum is that of G M, G_jk = K(w_j, w_k), M = diag(m); we work with the
// Hermitian similar matrix M^{1/2} G M^{1/2}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tubeberg/errors.hpp"
#include "tubeberg/geometry.hpp"
#include "tubeberg/kernel.hpp"
#include "tubeberg/measures.hpp"
#include "tubeberg/sampling.hpp"

namespace tubeberg {

class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(std::size_t dim) : dim_(dim), a_(dim * dim, cplx{0.0, 0.0}) {}

    /// Row-major entries; throws unless Hermitian to 1e-13 relative to the largest entry.
    HermitianMatrix(std::size_t dim, std::vector<cplx> entries) : dim_(dim), a_(std::move(entries)) {
        if (a_.size() != dim_ * dim_) throw DimensionMismatch("HermitianMatrix: expected dim*dim entries");
        if (!is_hermitian(1e-13)) throw ConsistencyError("HermitianMatrix: entries are not Hermitian");
        for (std::size_t j = 0; j < dim_; ++j) (*this)(j, j) = cplx{(*this)(j, j).real(), 0.0};
    }

    std::size_t dim() const noexcept { return dim_; }
    cplx& operator()(std::size_t j, std::size_t k) { return a_[j * dim_ + k]; }
    const cplx& operator()(std::size_t j, std::size_t k) const { return a_[j * dim_ + k]; }
    const std::vector<cplx>& entries() const noexcept { return a_; }

    /// Sets (j,k) and its mirror.
    void set(std::size_t j, std::size_t k, cplx v) {
        if (j == k) {
            (*this)(j, j) = cplx{v.real(), 0.0};
            return;
        }
        (*this)(j, k) = v;
        (*this)(k, j) = std::conj(v);
    }

    double max_abs() const {
        double m = 0.0;
        for (const auto& v : a_) m = std::max(m, std::abs(v));
        return m;
    }

    bool is_hermitian(double tol) const {
        const double scale = std::max(max_abs(), 1e-300);
        for (std::size_t j = 0; j < dim_; ++j) {
            for (std::size_t k = j; k < dim_; ++k) {
                if (std::abs((*this)(j, k) - std::conj((*this)(k, j))) > tol * scale) return false;
            }
        }
        return true;
    }

    double trace() const {
        double s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) s += (*this)(j, j).real();
        return s;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    CVector multiply(std::span<const cplx> v) const {
        detail::require_same_dim(v.size(), dim_, "HermitianMatrix::multiply");
        CVector out(dim_, cplx{0.0, 0.0});
        for (std::size_t j = 0; j < dim_; ++j) {
            cplx s{0.0, 0.0};
            for (std::size_t k = 0; k < dim_; ++k) s += (*this)(j, k) * v[k];
            out[j] = s;
        }
        return out;
    }

    HermitianMatrix scaled(double c) const {
        HermitianMatrix out = *this;
        for (auto& v : out.a_) v *= c;
        return out;
    }

private:
    std::size_t dim_ = 0;
    std::vector<cplx> a_;
};

namespace detail {

inline cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
    cplx s{0.0, 0.0};
    for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * std::conj(v[k]);
    return s;
}

inline double vnorm(std::span<const cplx> v) { return std::sqrt(squared_norm(v)); }

inline void normalize(CVector& v) {
    const double s = vnorm(v);
    for (auto& x : v) x /= s;
}

/// Removes the components of v along the (orthonormal) vectors in basis.
inline void project_out(CVector& v, const std::vector<CVector>& basis) {
    for (const auto& b : basis) {
        const cplx c = inner(v, b);
        for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * b[k];
    }
}

/// Lower Gershgorin bound on the spectrum.
inline double gershgorin_lower(const HermitianMatrix& h) {
    double lo = 0.0;
    for (std::size_t j = 0; j < h.dim(); ++j) {
        double r = 0.0;
        for (std::size_t k = 0; k < h.dim(); ++k) {
            if (k != j) r += std::abs(h(j, k));
        }
        lo = std::min(lo, h(j, j).real() - r);
    }
    return lo;
}

/// Solves (H - sigma I) x = b by Gaussian elimination with partial pivoting.
/// A zero pivot is replaced by a tiny one, which is what inverse iteration wants.
inline CVector shifted_solve(const HermitianMatrix& h, double sigma, CVector b) {
    const std::size_t d = h.dim();
    std::vector<cplx> a = h.entries();
    for (std::size_t k = 0; k < d; ++k) a[k * d + k] -= sigma;
    const double tiny = 1e-300 + 1e-17 * std::max(h.max_abs(), std::abs(sigma));
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < d; ++r) {
            if (std::abs(a[r * d + c]) > std::abs(a[piv * d + c])) piv = r;
        }
        if (piv != c) {
            for (std::size_t k = 0; k < d; ++k) std::swap(a[c * d + k], a[piv * d + k]);
            std::swap(b[c], b[piv]);
        }
        if (std::abs(a[c * d + c]) < tiny) a[c * d + c] = tiny;
        for (std::size_t r = c + 1; r < d; ++r) {
            const cplx f = a[r * d + c] / a[c * d + c];
            if (f == cplx{0.0, 0.0}) continue;
            for (std::size_t k = c; k < d; ++k) a[r * d + k] -= f * a[c * d + k];
            b[r] -= f * b[c];
        }
    }
    for (std::size_t c = d; c-- > 0;) {
        cplx s = b[c];
        for (std::size_t k = c + 1; k < d; ++k) s -= a[c * d + k] * b[k];
        b[c] = s / a[c * d + c];
    }
    return b;
}

} // namespace detail

struct EigenPair {
    double value = 0.0;
    CVector vector;
    double residual = 0.0; ///< ||H v - lambda v||, previously deflated directions projected out
    std::size_t iterations = 0;
};

struct EigenOptions {
    double tol = 1e-12;
    std::size_t max_iter = 100'000;
    std::uint64_t seed = 0;
};

namespace detail {

/// Power iteration on (H + shift I) restricted to the orthogonal complement of `found`.
inline EigenPair power_top(const HermitianMatrix& h, const std::vector<CVector>& found, const EigenOptions& opt) {
    const std::size_t d = h.dim();
    EigenPair out;
    if (d == 0) return out;
    const double scale = h.frobenius();
    if (scale == 0.0) {
        out.vector.assign(d, cplx{0.0, 0.0});
        for (std::size_t k = 0; k < d; ++k) {
            CVector e(d, cplx{0.0, 0.0});
            e[k] = 1.0;
            project_out(e, found);
            if (vnorm(e) > 0.5) {
                normalize(e);
                out.vector = std::move(e);
                break;
            }
        }
        return out;
    }
    const double shift = -gershgorin_lower(h);
    std::mt19937_64 eng(substream_seed(opt.seed, found.size()));
    std::normal_distribution<double> gauss;
    CVector v(d);
    for (auto& x : v) x = cplx{gauss(eng), gauss(eng)};
    project_out(v, found);
    normalize(v);
    // residual of the deflated operator P H P, P the projector onto the complement of `found`
    auto deflated_residual = [&](const CVector& hx, const CVector& x, double lambda) {
        CVector r(d);
        for (std::size_t k = 0; k < d; ++k) r[k] = hx[k] - lambda * x[k];
        project_out(r, found);
        return vnorm(r);
    };
    auto rayleigh = [&](const CVector& x, double& lambda) {
        const CVector hx = h.multiply(x);
        lambda = inner(hx, x).real();
        return deflated_residual(hx, x, lambda);
    };
    // Rayleigh quotient refinement from the current iterate; accepted only if it
    // lands on an eigenvalue not below the current estimate.
    auto refine = [&](const CVector& start, double lambda0, double res0, std::size_t it) {
        CVector x = start;
        double lambda = lambda0;
        for (int step = 0; step < 8; ++step) {
            x = shifted_solve(h, lambda, std::move(x));
            project_out(x, found);
            if (!(vnorm(x) > 0.0) || !std::isfinite(vnorm(x))) return false;
            normalize(x);
            const double res = rayleigh(x, lambda);
            if (res <= opt.tol * scale) {
                if (lambda < lambda0 - res0) return false;
                out.value = lambda;
                out.vector = std::move(x);
                out.residual = res;
                out.iterations = it;
                return true;
            }
        }
        return false;
    };
    for (std::size_t it = 1; it <= opt.max_iter; ++it) {
        CVector hv = h.multiply(v);
        const double lambda = inner(hv, v).real();
        const double res = deflated_residual(hv, v, lambda);
        if (res <= opt.tol * scale) {
            out.value = lambda;
            out.vector = std::move(v);
            out.residual = res;
            out.iterations = it;
            return out;
        }
        if (it % 64 == 0 && res <= 1e-3 * scale && refine(v, lambda, res, it)) return out;
        for (std::size_t k = 0; k < d; ++k) hv[k] += shift * v[k];
        project_out(hv, found);
        const double nh = vnorm(hv);
        if (nh == 0.0) {
            // v spans an eigenvector of eigenvalue -shift within the complement
            out.value = lambda;
            out.vector = std::move(v);
            out.residual = res;
            out.iterations = it;
            return out;
        }
        for (std::size_t k = 0; k < d; ++k) v[k] = hv[k] / nh;
    }
    throw ConvergenceError("hermitian_top_eig: no convergence after " + std::to_string(opt.max_iter) + " iterations");
}

} // namespace detail

/// Largest eigenvalue of h by shifted power iteration, stopping at
/// ||H v - lambda v|| <= tol ||H||_F. Deterministic for a fixed seed.
inline EigenPair hermitian_top_eig(const HermitianMatrix& h, const EigenOptions& opt = {}) {
    return detail::power_top(h, {}, opt);
}

/// All eigenvalues, descending, by power iteration with deflation.
inline std::vector<double> power_eigenvalues(const HermitianMatrix& h, const EigenOptions& opt = {}) {
    std::vector<CVector> found;
    std::vector<double> values;
    for (std::size_t k = 0; k < h.dim(); ++k) {
        EigenPair p = detail::power_top(h, found, opt);
        detail::project_out(p.vector, found);
        detail::normalize(p.vector);
        values.push_back(p.value);
        found.push_back(std::move(p.vector));
    }
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

/// Eigenvalues by cyclic complex Jacobi sweeps, descending.
inline std::vector<double> jacobi_eigenvalues(const HermitianMatrix& h, int max_sweeps = 100) {
    const std::size_t d = h.dim();
    std::vector<cplx> a = h.entries();
    auto at = [&](std::size_t j, std::size_t k) -> cplx& { return a[j * d + k]; };
    const double scale = std::max(h.frobenius(), 1e-300);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = j + 1; k < d; ++k) off += std::norm(at(j, k));
        }
        if (std::sqrt(2.0 * off) <= 1e-15 * scale) break;
        for (std::size_t p = 0; p < d; ++p) {
            for (std::size_t q = p + 1; q < d; ++q) {
                const cplx b = at(p, q);
                const double mod = std::abs(b);
                if (mod <= 1e-300) continue;
                const cplx phase = std::conj(b) / mod; // e^{-i phi}
                const double app = at(p, p).real();
                const double aqq = at(q, q).real();
                const double zeta = (aqq - app) / (2.0 * mod);
                const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] on columns p, q
                const cplx upp = c;
                const cplx upq = s;
                const cplx uqp = -s * phase;
                const cplx uqq = c * phase;
                for (std::size_t k = 0; k < d; ++k) {
                    const cplx xp = at(k, p);
                    const cplx xq = at(k, q);
                    at(k, p) = xp * upp + xq * uqp;
                    at(k, q) = xp * upq + xq * uqq;
                }
                for (std::size_t k = 0; k < d; ++k) {
                    const cplx xp = at(p, k);
                    const cplx xq = at(q, k);
                    at(p, k) = std::conj(upp) * xp + std::conj(uqp) * xq;
                    at(q, k) = std::conj(upq) * xp + std::conj(uqq) * xq;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;
            }
        }
    }
    double off = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = j + 1; k < d; ++k) off += std::norm(at(j, k));
    }
    if (std::sqrt(2.0 * off) > 1e-12 * scale) throw ConvergenceError("jacobi_eigenvalues: sweeps did not converge");
    std::vector<double> out(d);
    for (std::size_t j = 0; j < d; ++j) out[j] = at(j, j).real();
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

/// PSD to within -1e-10 * trace on the smallest eigenvalue.
inline bool is_psd(const HermitianMatrix& h) {
    if (h.dim() == 0) return true;
    const auto ev = jacobi_eigenvalues(h);
    return ev.back() >= -1e-10 * std::max(std::abs(h.trace()), 1e-300);
}

/// G_jk = K_alpha(w_j, w_k).
inline HermitianMatrix gram(std::span<const TubePoint> points, const KernelParams& kp) {
    HermitianMatrix g(points.size());
    for (std::size_t j = 0; j < points.size(); ++j) {
        g.set(j, j, kernel_diagonal(points[j], kp));
        for (std::size_t k = j + 1; k < points.size(); ++k) g.set(j, k, bergman_kernel(points[j], points[k], kp));
    }
    return g;
}

/// Pairs of points that coincide (beta below 1e-12), which make the Gram matrix rank deficient.
inline std::size_t coincident_pairs(std::span<const TubePoint> points) {
    std::size_t c = 0;
    for (std::size_t j = 0; j < points.size(); ++j) {
        for (std::size_t k = j + 1; k < points.size(); ++k) c += bergman_distance(points[j], points[k]) < 1e-12 ? 1 : 0;
    }
    return c;
}

struct ToeplitzModel {
    AtomicMeasure mu{1};
    KernelParams kp;
    HermitianMatrix gram;
    HermitianMatrix core; ///< M^{1/2} G M^{1/2}
    std::size_t coincident = 0;
};

inline ToeplitzModel build_model(const AtomicMeasure& mu, const KernelParams& kp) {
    detail::require_same_dim(mu.dim(), kp.n, "build_model");
    std::vector<TubePoint> pts;
    std::vector<double> root;
    for (const auto& a : mu.atoms()) {
        pts.push_back(a.point);
        root.push_back(std::sqrt(a.mass));
    }
    ToeplitzModel tm{mu, kp, gram(pts, kp), HermitianMatrix(pts.size()), coincident_pairs(pts)};
    for (std::size_t j = 0; j < pts.size(); ++j) {
        for (std::size_t k = j; k < pts.size(); ++k) tm.core.set(j, k, root[j] * tm.gram(j, k) * root[k]);
    }
    return tm;
}

/// ||T_mu|| on A^2_alpha: top eigenvalue of the core matrix.
inline double operator_norm(const ToeplitzModel& tm, const EigenOptions& opt = {}) {
    if (tm.core.dim() == 0) return 0.0;
    return hermitian_top_eig(tm.core, opt).value;
}

inline std::vector<double> spectral_profile(const ToeplitzModel& tm, const EigenOptions& opt = {}) {
    return power_eigenvalues(tm.core, opt);
}

/// f = sum_j c_j K(., u_j), an element of S_t for t >= n + alpha + 1.
struct FunctionSt {
    double t = 0.0;
    std::vector<TubePoint> centers;
    std::vector<cplx> coeffs;

    FunctionSt() = default;
    FunctionSt(double order, std::vector<TubePoint> u, std::vector<cplx> c)
        : t(order), centers(std::move(u)), coeffs(std::move(c)) {
        if (centers.size() != coeffs.size()) throw DimensionMismatch("FunctionSt: centers and coefficients differ");
    }

    /// The kernel function K(., u), scaled by c.
    static FunctionSt kernel(const TubePoint& u, const KernelParams& kp, cplx c = 1.0) {
        return FunctionSt(kp.order(), {u}, {c});
    }

    /// k_u = K(., u) / sqrt(K(u, u)).
    static FunctionSt normalized_kernel(const TubePoint& u, const KernelParams& kp) {
        return kernel(u, kp, 1.0 / std::sqrt(kernel_diagonal(u, kp)));
    }

    cplx operator()(const TubePoint& z, const KernelParams& kp) const {
        cplx s{0.0, 0.0};
        for (std::size_t j = 0; j < centers.size(); ++j) s += coeffs[j] * bergman_kernel(z, centers[j], kp);
        return s;
    }
};

/// <f, g> in A^2_alpha through <K_u, K_v> = K(v, u).
inline cplx inner_product(const FunctionSt& f, const FunctionSt& g, const KernelParams& kp) {
    cplx s{0.0, 0.0};
    for (std::size_t j = 0; j < f.centers.size(); ++j) {
        for (std::size_t k = 0; k < g.centers.size(); ++k) {
            s += f.coeffs[j] * std::conj(g.coeffs[k]) * bergman_kernel(g.centers[k], f.centers[j], kp);
        }
    }
    return s;
}

/// max over probes of |rho(z, i)|^t |f(z)|.
inline double st_sup(const FunctionSt& f, std::span<const TubePoint> probes, const KernelParams& kp) {
    double m = 0.0;
    for (const auto& z : probes) m = std::max(m, std::pow(std::abs(rho_with_base(z)), f.t) * std::abs(f(z, kp)));
    return m;
}

/// T_mu f(z) = sum_j m_j K(z, w_j) f(w_j).
inline cplx apply(const ToeplitzModel& tm, const FunctionSt& f, const TubePoint& z) {
    cplx s{0.0, 0.0};
    for (const auto& a : tm.mu.atoms()) s += a.mass * bergman_kernel(z, a.point, tm.kp) * f(a.point, tm.kp);
    return s;
}

/// T_mu f as a kernel combination centred at the atoms.
inline FunctionSt apply(const ToeplitzModel& tm, const FunctionSt& f) {
    std::vector<TubePoint> u;
    std::vector<cplx> c;
    for (const auto& a : tm.mu.atoms()) {
        u.push_back(a.point);
        c.push_back(a.mass * f(a.point, tm.kp));
    }
    return FunctionSt(tm.kp.order(), std::move(u), std::move(c));
}

/// <T_mu k_z, k_z>.
inline double berezin_via_operator(const ToeplitzModel& tm, const TubePoint& z) {
    const FunctionSt kz = FunctionSt::normalized_kernel(z, tm.kp);
    return inner_product(apply(tm, kz), kz, tm.kp).real();
}

} // namespace tubeberg
