#pragma once

// r-lattices of T_B in the Bergman metric, built greedily on a truncated
// region Phi({|xi| <= 1 - epsilon}) and checked empirically for covering,
// separation and bounded overlap multiplicity.
//
// Construction is a maximal (r/2)-separated subset of a seeded candidate
// cloud. Neighbour search is brute force, O(#centers) per candidate, which
// is the scaling limit of this module (a few thousand centers).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "tubeberg/errors.hpp"
#include "tubeberg/geometry.hpp"
#include "tubeberg/sampling.hpp"

namespace tubeberg {

struct RegionSpec {
    double epsilon = 0.5;

    RegionSpec() = default;
    explicit RegionSpec(double eps) : epsilon(eps) { validate(); }

    void validate() const {
        if (!(epsilon > 0.0 && epsilon < 1.0)) throw DomainError("RegionSpec: epsilon must lie in (0, 1)");
    }

    /// Radius of the ball-model image of the region.
    double ball_radius() const noexcept { return 1.0 - epsilon; }

    bool contains(const TubePoint& z) const { return cayley_inv(z).norm2() <= ball_radius() * ball_radius(); }
};

struct Lattice {
    std::size_t n = 1;
    double r = 1.0;
    RegionSpec region;
    std::vector<TubePoint> centers;
    int empirical_N = 0;
};

struct LatticeOptions {
    std::size_t candidates = 20'000;           ///< size of the greedy candidate cloud
    std::uint64_t multiplicity_probes = 10'000; ///< probes used to fill empirical_N
    unsigned workers = 1;
};

namespace detail {

inline TubePoint region_probe(std::size_t n, const RegionSpec& region, std::mt19937_64& eng) {
    return cayley(BallPoint(uniform_ball(n, region.ball_radius(), eng)));
}

/// Probe from the shell 1-eps < |xi| < 1-eps/2, just outside the region.
inline TubePoint shell_probe(std::size_t n, const RegionSpec& region, std::mt19937_64& eng) {
    const double inner = region.ball_radius();
    const double outer = 1.0 - 0.5 * region.epsilon;
    for (;;) {
        CVector v = uniform_ball(n, outer, eng);
        if (squared_norm(v) > inner * inner) return cayley(BallPoint(std::move(v)));
    }
}

inline double nearest_distance(const std::vector<TubePoint>& centers, const TubePoint& p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : centers) best = std::min(best, bergman_distance(c, p));
    return best;
}

inline int count_within(const std::vector<TubePoint>& centers, const TubePoint& p, double radius) {
    int k = 0;
    for (const auto& c : centers) k += bergman_distance(c, p) < radius ? 1 : 0;
    return k;
}

} // namespace detail

/// Max over seeded region probes of #{k : beta(a_k, probe) < 2r}.
inline int multiplicity(const Lattice& l, std::uint64_t probes, std::uint64_t seed, unsigned workers = 1) {
    if (l.centers.empty()) return 0;
    const std::uint64_t chunks = (probes + kChunkSize - 1) / kChunkSize;
    std::vector<int> best(chunks, 0);
    detail::run_chunks(probes, std::max(1u, workers), [&](std::uint64_t c, std::uint64_t, std::uint64_t count) {
        std::mt19937_64 eng(detail::substream_seed(seed ^ 0x6d756c74ULL, c));
        int m = 0;
        for (std::uint64_t k = 0; k < count; ++k) {
            m = std::max(m, detail::count_within(l.centers, detail::region_probe(l.n, l.region, eng), 2.0 * l.r));
        }
        best[c] = m;
    });
    int out = 0;
    for (int b : best) out = std::max(out, b);
    // every center is itself within 2r of at least one center
    return std::max(out, 1);
}

/// Greedy maximal (r/2)-separated set over a seeded candidate cloud of the region.
inline Lattice build_lattice(std::size_t n, double r, const RegionSpec& region, std::uint64_t seed,
                             const LatticeOptions& opts = {}) {
    if (n < 1) throw DomainError("build_lattice: n must be >= 1");
    if (!(r > 0.0 && r <= 1.0)) throw DomainError("build_lattice: r must lie in (0, 1]");
    region.validate();
    Lattice l;
    l.n = n;
    l.r = r;
    l.region = region;
    std::mt19937_64 eng(detail::substream_seed(seed, 0x6c617474ULL));
    // the base point first, so every lattice contains i
    std::vector<TubePoint> cloud;
    cloud.reserve(opts.candidates + 1);
    cloud.push_back(TubePoint::base(n));
    for (std::size_t k = 0; k < opts.candidates; ++k) cloud.push_back(detail::region_probe(n, region, eng));
    const double sep = 0.5 * r;
    for (const auto& p : cloud) {
        if (detail::nearest_distance(l.centers, p) >= sep) l.centers.push_back(p);
    }
    l.empirical_N = multiplicity(l, opts.multiplicity_probes, seed, opts.workers);
    return l;
}

/// True iff all pairwise distances are at least r/2 (so the balls D(a_k, r/4) are disjoint).
inline bool verify_separation(const Lattice& l) {
    for (std::size_t j = 0; j < l.centers.size(); ++j) {
        for (std::size_t k = j + 1; k < l.centers.size(); ++k) {
            if (bergman_distance(l.centers[j], l.centers[k]) < 0.5 * l.r) return false;
        }
    }
    return true;
}

struct CoverReport {
    std::uint64_t probes = 0;
    std::uint64_t uncovered = 0;
    double uncovered_fraction = 0.0;
    std::uint64_t outside_probes = 0; ///< probes just outside the region (truncation shell)
    std::uint64_t outside_uncovered = 0;
    double outside_uncovered_fraction = 0.0;
};

/// Fresh probes of the region (and, reported separately, of the shell outside it) tested against D(a_k, r).
inline CoverReport verify_cover(const Lattice& l, std::uint64_t probes, std::uint64_t seed, unsigned workers = 1) {
    CoverReport rep;
    rep.probes = probes;
    rep.outside_probes = probes / 10;
    auto count_uncovered = [&](std::uint64_t total, std::uint64_t salt, bool outside) {
        const std::uint64_t chunks = (total + kChunkSize - 1) / kChunkSize;
        std::vector<std::uint64_t> miss(chunks, 0);
        detail::run_chunks(total, std::max(1u, workers), [&](std::uint64_t c, std::uint64_t, std::uint64_t count) {
            std::mt19937_64 eng(detail::substream_seed(seed ^ salt, c));
            std::uint64_t m = 0;
            for (std::uint64_t k = 0; k < count; ++k) {
                const TubePoint p = outside ? detail::shell_probe(l.n, l.region, eng)
                                            : detail::region_probe(l.n, l.region, eng);
                if (detail::nearest_distance(l.centers, p) >= l.r) ++m;
            }
            miss[c] = m;
        });
        std::uint64_t s = 0;
        for (auto m : miss) s += m;
        return s;
    };
    if (probes > 0) {
        rep.uncovered = count_uncovered(probes, 0x636f7672ULL, false);
        rep.uncovered_fraction = static_cast<double>(rep.uncovered) / static_cast<double>(probes);
    }
    if (rep.outside_probes > 0) {
        rep.outside_uncovered = count_uncovered(rep.outside_probes, 0x6f757473ULL, true);
        rep.outside_uncovered_fraction =
            static_cast<double>(rep.outside_uncovered) / static_cast<double>(rep.outside_probes);
    }
    return rep;
}

} // namespace tubeberg
