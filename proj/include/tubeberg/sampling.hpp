#pragma once

// Reproducible Monte-Carlo integration over T_B against dV_alpha, by pulling
// back to uniform samples of the unit ball through the Cayley map:
//
//   int_{T_B} g dV_alpha = Vol(B) * E[ g(Phi(xi)) (1-|xi|^2)^alpha 2^{n+1} / |1+xi_n|^{2(n+1)+2alpha} ].
//
// Samples are drawn in fixed-size chunks; chunk c uses an engine seeded from
// (seed, c), and chunk partials are merged in chunk order, so an estimate
// depends only on (seed, samples) and never on the number of workers.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <random>
#include <thread>
#include <vector>

#include "tubeberg/errors.hpp"
#include "tubeberg/geometry.hpp"
#include "tubeberg/kernel.hpp"
#include "tubeberg/special.hpp"

namespace tubeberg {

struct SamplerConfig {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

inline constexpr std::uint64_t kChunkSize = 4096;

/// Samples with |1 + xi_n| below this are skipped and counted.
inline constexpr double kSingularGuard = 1e-12;

/// A single term is flagged when it carries more than this share of sum |terms|.
inline constexpr double kHeavyTailShare = 0.05;

struct IntegralEstimate {
    cplx value{0.0, 0.0};
    cplx std_error{0.0, 0.0}; ///< componentwise standard errors (re, im)
    std::uint64_t samples = 0;
    std::uint64_t skipped = 0;
    double max_term_share = 0.0; ///< max |term| / sum |term|
    bool heavy_tail = false;     ///< integral likely infinite (dominated by single samples)

    /// Largest componentwise |value - oracle| / std_error.
    double sigma_distance(cplx oracle) const {
        auto comp = [](double d, double se) {
            if (d == 0.0) return 0.0;
            return se > 0.0 ? std::abs(d) / se : std::numeric_limits<double>::infinity();
        };
        const cplx d = value - oracle;
        return std::max(comp(d.real(), std_error.real()), comp(d.imag(), std_error.imag()));
    }

    /// |value - oracle| <= k stderr componentwise, with a rounding floor of 1e-12 |oracle|.
    bool consistent_with(cplx oracle, double k = 3.0) const {
        const cplx d = value - oracle;
        const double floor = 1e-12 * std::abs(oracle);
        return std::abs(d.real()) <= k * std_error.real() + floor &&
               std::abs(d.imag()) <= k * std_error.imag() + floor;
    }

    double relative_error() const { return std::abs(std_error) / std::abs(value); }
};

struct TubeSample {
    BallPoint xi;
    TubePoint z;
    double weight; ///< Monte-Carlo weight: the sample mean of g(z) * weight estimates the integral
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

/// Uniform point of the real 2n-ball of the given radius: Gaussian direction times U^{1/2n}.
template <class Engine>
CVector uniform_ball(std::size_t n, double radius, Engine& eng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    CVector v(n);
    double nrm2 = 0.0;
    do {
        nrm2 = 0.0;
        for (auto& c : v) {
            c = cplx{gauss(eng), gauss(eng)};
            nrm2 += std::norm(c);
        }
    } while (nrm2 == 0.0);
    const double scale = radius * std::pow(unif(eng), 1.0 / (2.0 * static_cast<double>(n))) / std::sqrt(nrm2);
    for (auto& c : v) c *= scale;
    return v;
}

/// Volume of the real 2n-dimensional ball of the given radius: pi^n r^{2n} / n!.
inline double ball_volume(std::size_t n, double radius) {
    const double nn = static_cast<double>(n);
    return std::exp(nn * std::log(std::numbers::pi) + 2.0 * nn * std::log(radius) - std::lgamma(nn + 1.0));
}

struct Accumulator {
    std::uint64_t count = 0;
    std::uint64_t skipped = 0;
    double mean_re = 0.0, m2_re = 0.0;
    double mean_im = 0.0, m2_im = 0.0;
    double abs_sum = 0.0, abs_max = 0.0;

    void add(cplx t) {
        ++count;
        const double c = static_cast<double>(count);
        const double dr = t.real() - mean_re;
        mean_re += dr / c;
        m2_re += dr * (t.real() - mean_re);
        const double di = t.imag() - mean_im;
        mean_im += di / c;
        m2_im += di * (t.imag() - mean_im);
        const double a = std::abs(t);
        abs_sum += a;
        abs_max = std::max(abs_max, a);
    }

    void merge(const Accumulator& o) {
        if (o.count == 0) {
            skipped += o.skipped;
            return;
        }
        const double na = static_cast<double>(count), nb = static_cast<double>(o.count);
        const double n = na + nb;
        const double dr = o.mean_re - mean_re, di = o.mean_im - mean_im;
        mean_re += dr * nb / n;
        mean_im += di * nb / n;
        m2_re += o.m2_re + dr * dr * na * nb / n;
        m2_im += o.m2_im + di * di * na * nb / n;
        count += o.count;
        skipped += o.skipped;
        abs_sum += o.abs_sum;
        abs_max = std::max(abs_max, o.abs_max);
    }

    IntegralEstimate finish() const {
        IntegralEstimate e;
        e.samples = count;
        e.skipped = skipped;
        e.value = cplx{mean_re, mean_im};
        if (count > 1) {
            const double n = static_cast<double>(count);
            e.std_error = cplx{std::sqrt(m2_re / (n - 1.0) / n), std::sqrt(m2_im / (n - 1.0) / n)};
        }
        e.max_term_share = abs_sum > 0.0 ? abs_max / abs_sum : 0.0;
        e.heavy_tail = count >= 10'000 && e.max_term_share > kHeavyTailShare;
        return e;
    }
};

/// Runs body(chunk_index, first_sample, count) over all chunks on `workers` threads.
template <class Body>
void run_chunks(std::uint64_t samples, unsigned workers, Body&& body) {
    const std::uint64_t chunks = (samples + kChunkSize - 1) / kChunkSize;
    const unsigned nthreads = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, chunks)));
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                const std::uint64_t first = c * kChunkSize;
                body(c, first, std::min(kChunkSize, samples - first));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

} // namespace detail

/// Generates weighted samples of T_B for dV_alpha.
///
/// The plain sampler covers all of T_B through Phi. A centred sampler
/// draws xi from B(0, radius), maps it to sigma_c^{-1}(Phi(xi)) and covers
/// D(c, artanh radius) (all of T_B when radius = 1), which concentrates
/// samples around c.
class TubeSampler {
public:
    explicit TubeSampler(const KernelParams& kp) : kp_(kp) { kp_.validate(); }

    static TubeSampler centered(const KernelParams& kp, const TubePoint& center, double radius = 1.0) {
        detail::require_same_dim(center.dim(), kp.n, "TubeSampler");
        if (!(radius > 0.0 && radius <= 1.0)) throw DomainError("TubeSampler: radius must lie in (0, 1]");
        TubeSampler s(kp);
        s.radius_ = radius;
        s.uncenter_ = Automorphism::sigma(center).inverse();
        s.log_scale_ = kp.order() * std::log(center.rho());
        return s;
    }

    const KernelParams& params() const noexcept { return kp_; }

    /// Calls fn(sample) for samples [first, first+count) of chunk `chunk`; returns how many were skipped.
    template <class Fn>
    std::uint64_t visit_chunk(std::uint64_t seed, std::uint64_t chunk, std::uint64_t count, Fn&& fn) const {
        std::mt19937_64 eng(detail::substream_seed(seed, chunk));
        const std::size_t n = kp_.n;
        const double nn = static_cast<double>(n);
        const double log_vol = std::log(detail::ball_volume(n, radius_)) + (nn + 1.0) * std::numbers::ln2 + log_scale_;
        std::uint64_t skipped = 0;
        for (std::uint64_t k = 0; k < count; ++k) {
            CVector v = detail::uniform_ball(n, radius_, eng);
            double nrm2 = 0.0;
            for (const auto& c : v) nrm2 += std::norm(c);
            const double one_plus = std::abs(1.0 + v.back());
            if (one_plus < kSingularGuard || !(nrm2 < 1.0)) {
                ++skipped;
                fn(std::nullopt);
                continue;
            }
            const double log_w = log_vol + kp_.alpha * std::log1p(-nrm2) -
                                 (2.0 * (nn + 1.0) + 2.0 * kp_.alpha) * std::log(one_plus);
            try {
                BallPoint xi(std::move(v));
                TubePoint z = cayley(xi);
                if (!uncenter_.empty()) z = uncenter_(z);
                fn(std::optional<TubeSample>(TubeSample{std::move(xi), std::move(z), std::exp(log_w)}));
            } catch (const DomainError&) {
                ++skipped;
                fn(std::nullopt);
            }
        }
        return skipped;
    }

    /// Estimate of int_{T_B} g dV_alpha; g must be safe to call concurrently.
    template <class G>
    IntegralEstimate integrate(G&& g, const SamplerConfig& cfg) const {
        if (cfg.samples == 0) throw DomainError("integrate: samples must be positive");
        const std::uint64_t chunks = (cfg.samples + kChunkSize - 1) / kChunkSize;
        std::vector<detail::Accumulator> parts(chunks);
        detail::run_chunks(cfg.samples, std::max(1u, cfg.workers), [&](std::uint64_t c, std::uint64_t, std::uint64_t count) {
            detail::Accumulator acc;
            const std::uint64_t skipped = visit_chunk(cfg.seed, c, count, [&](const std::optional<TubeSample>& s) {
                if (!s) {
                    acc.add(cplx{0.0, 0.0});
                    return;
                }
                acc.add(cplx(g(s->z)) * s->weight);
            });
            acc.skipped = skipped;
            parts[c] = acc;
        });
        detail::Accumulator total;
        for (const auto& p : parts) total.merge(p);
        return total.finish();
    }

private:
    KernelParams kp_;
    double radius_ = 1.0;
    Automorphism uncenter_;
    double log_scale_ = 0.0;
};

/// Visits the weighted sample stream in index order (single-threaded); skipped samples are not visited.
template <class Fn>
void sample_tube(const KernelParams& kp, const SamplerConfig& cfg, Fn&& fn) {
    TubeSampler sampler(kp);
    const std::uint64_t chunks = (cfg.samples + kChunkSize - 1) / kChunkSize;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        const std::uint64_t count = std::min(kChunkSize, cfg.samples - c * kChunkSize);
        sampler.visit_chunk(cfg.seed, c, count, [&](const std::optional<TubeSample>& s) {
            if (s) fn(*s);
        });
    }
}

/// Monte-Carlo estimate of int_{T_B} g dV_alpha.
template <class G>
IntegralEstimate integrate(G&& g, const KernelParams& kp, const SamplerConfig& cfg) {
    return TubeSampler(kp).integrate(std::forward<G>(g), cfg);
}

} // namespace tubeberg
