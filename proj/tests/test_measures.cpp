#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tubeberg/measures.hpp"

using namespace tubeberg;

namespace {

constexpr double kPi = std::numbers::pi;

AtomicMeasure delta(const TubePoint& w, double m = 1.0) {
    AtomicMeasure mu(w.dim());
    mu.add(w, m);
    return mu;
}

AtomicMeasure random_measure(std::size_t n, int atoms, std::mt19937_64& eng) {
    std::uniform_real_distribution<double> mass(0.1, 2.0);
    AtomicMeasure mu(n);
    for (int k = 0; k < atoms; ++k) mu.add(TubePoint(oracle::tube_point(n, eng)), mass(eng));
    return mu;
}

std::vector<TubePoint> random_grid(std::size_t n, int count, std::mt19937_64& eng) {
    std::vector<TubePoint> g;
    for (int k = 0; k < count; ++k) g.emplace_back(oracle::tube_point(n, eng));
    return g;
}

} // namespace

TEST(AtomicMeasure, Validation) {
    AtomicMeasure mu(2);
    EXPECT_THROW(mu.add(TubePoint::base(2), 0.0), DomainError);
    EXPECT_THROW(mu.add(TubePoint::base(2), -1.0), DomainError);
    EXPECT_THROW(mu.add(TubePoint::base(2), INFINITY), DomainError);
    EXPECT_THROW(mu.add(TubePoint::base(1), 1.0), DimensionMismatch);
    EXPECT_THROW(AtomicMeasure(0), DomainError);
    mu.add(TubePoint::base(2), 2.5);
    EXPECT_EQ(mu.size(), 1u);
    EXPECT_DOUBLE_EQ(mu.total_mass(), 2.5);
}

TEST(Berezin, UnitAtomAtBase) {
    const KernelParams kp(1, 0.0);
    EXPECT_NEAR(berezin(delta(TubePoint::base(1)), TubePoint::base(1), kp), 1.0 / (4.0 * kPi), 1e-16);
    EXPECT_EQ(berezin(AtomicMeasure(1), TubePoint::base(1), kp), 0.0);
}

TEST(Berezin, LinearInMass) {
    std::mt19937_64 eng(1);
    const KernelParams kp(2, 1.0);
    const AtomicMeasure mu = random_measure(2, 10, eng);
    for (const auto& z : random_grid(2, 20, eng)) {
        EXPECT_NEAR(berezin(mu.scaled(3.5), z, kp), 3.5 * berezin(mu, z, kp), 1e-12 * berezin(mu, z, kp));
    }
}

TEST(Berezin, CovariantUnderSigma) {
    // |k_{sigma z}(sigma w)|^2 = rho(c)^N |k_z(w)|^2 for sigma = sigma_c
    std::mt19937_64 eng(2);
    const KernelParams kp(2, 0.0);
    const AtomicMeasure mu = random_measure(2, 8, eng);
    const TubePoint c(oracle::tube_point(2, eng));
    const auto s = Automorphism::sigma(c);
    const AtomicMeasure moved = mu.transported(s);
    const double factor = std::pow(c.rho(), kp.order());
    for (const auto& z : random_grid(2, 20, eng)) {
        const double a = factor * berezin(mu, z, kp);
        EXPECT_NEAR(berezin(moved, s(z), kp), a, 1e-9 * a);
    }
}

TEST(Averaging, UnitAtomAtBase) {
    const KernelParams kp(1, 0.0);
    const double d = std::tanh(0.5);
    const double vol = 4.0 * kPi * d * d / std::pow(1.0 - d * d, 2);
    const auto av = averaging_detail(delta(TubePoint::base(1)), TubePoint::base(1), 0.5, kp, {400'000, 3, 4});
    EXPECT_DOUBLE_EQ(av.mass, 1.0);
    // delta method: se(1/V) = se(V) / V^2
    const double se = av.volume.std_error.real() / std::pow(av.volume.value.real(), 2);
    EXPECT_LE(std::abs(av.value - 1.0 / vol), 3.0 * se);
}

TEST(Averaging, FarPointHasNoMassAndDoublingDoubles) {
    const KernelParams kp(1, 0.0);
    const SamplerConfig cfg{50'000, 4, 2};
    const AtomicMeasure mu = delta(TubePoint::base(1));
    EXPECT_EQ(averaging(mu, TubePoint::on_axis(1, 100.0), 0.5, kp, cfg), 0.0);
    const double a = averaging(mu, TubePoint::base(1), 0.5, kp, cfg);
    EXPECT_DOUBLE_EQ(averaging(mu.scaled(2.0), TubePoint::base(1), 0.5, kp, cfg), 2.0 * a);
}

TEST(Condition2, UnitAtomAtBaseIsOne) {
    EXPECT_EQ(condition2_integral(delta(TubePoint::base(1)), TubePoint::base(1), KernelParams(1, 0.0)), 1.0);
    EXPECT_EQ(condition2_integral(delta(TubePoint::base(3)), TubePoint::base(3), KernelParams(3, 1.0)), 1.0);
}

TEST(Condition2, DecaysAwayFromAtom) {
    const KernelParams kp(1, 0.0);
    const AtomicMeasure mu = delta(TubePoint::base(1));
    double prev = condition2_integral(mu, TubePoint::base(1), kp);
    for (double x : {1.0, 10.0, 100.0, 1000.0}) {
        const double v = condition2_integral(mu, TubePoint(CVector{cplx{x, 1.0}}), kp);
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, 1e-10);
}

TEST(Condition2, DilationCovariance) {
    std::mt19937_64 eng(5);
    const KernelParams kp(2, 1.0);
    const AtomicMeasure mu = random_measure(2, 6, eng);
    const auto grid = random_grid(2, 40, eng);
    const double t = 3.0;
    const auto d = Automorphism::dilation(t);
    const AtomicMeasure moved = mu.transported(d);
    std::vector<TubePoint> moved_grid;
    for (const auto& g : grid) moved_grid.push_back(d(g));
    const double factor = std::pow(t, -2.0 * kp.order());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double a = condition2_integral(mu, grid[k], kp);
        EXPECT_NEAR(condition2_integral(moved, moved_grid[k], kp), factor * a, 1e-9 * factor * a);
    }
}

TEST(LatticeRatio, CountsMassInBall) {
    const KernelParams kp(1, 0.0);
    AtomicMeasure mu(1);
    mu.add(TubePoint::base(1), 1.0);
    mu.add(TubePoint::on_axis(1, 1.2), 2.0);
    mu.add(TubePoint::on_axis(1, 50.0), 4.0);
    // beta(i, 1.2 i) = log(1.2) / 2 < 0.5
    EXPECT_DOUBLE_EQ(mu.mass_in_ball(TubePoint::base(1), 0.5), 3.0);
    EXPECT_DOUBLE_EQ(lattice_ratio(mu, TubePoint::on_axis(1, 4.0), 0.5, kp), 0.0);
    EXPECT_NEAR(lattice_ratio(mu, TubePoint::on_axis(1, 50.0), 0.5, kp), 4.0 / 2500.0, 1e-15);
}

TEST(Mplus, Values) {
    EXPECT_DOUBLE_EQ(mplus_value(delta(TubePoint::base(2)), 1.7), 1.0);
    EXPECT_NEAR(mplus_value(delta(TubePoint::on_axis(1, 4.0)), 2.0), 0.16, 1e-15);
    AtomicMeasure mu(1);
    mu.add(TubePoint::base(1), 1.0);
    mu.add(TubePoint::on_axis(1, 4.0), 1.0);
    EXPECT_NEAR(mplus_value(mu, 2.0), 1.16, 1e-15);
    EXPECT_THROW(mplus_value(mu, 0.0), DomainError);
}

TEST(CarlesonReport, UnitAtomAttainedAtBase) {
    const KernelParams kp(1, 0.0);
    const Lattice l = build_lattice(1, 0.5, RegionSpec(0.5), 3);
    std::vector<TubePoint> grid{TubePoint::on_axis(1, 3.0), TubePoint::base(1), TubePoint(CVector{cplx{1.0, 1.0}})};
    const auto rep = carleson_report(delta(TubePoint::base(1)), l, grid, kp, {100'000, 1, 2});
    EXPECT_EQ(rep.argmax_berezin, 1u);
    EXPECT_EQ(rep.argmax_condition2, 1u);
    EXPECT_EQ(rep.argmax_averaging, 1u);
    EXPECT_TRUE(std::isfinite(rep.sup_averaging));
    EXPECT_DOUBLE_EQ(rep.sup_condition2, 1.0);
    EXPECT_EQ(rep.lattice_sups.size(), l.centers.size());
    // the base point is the first center
    EXPECT_DOUBLE_EQ(rep.lattice_sups.front(), 1.0);
    EXPECT_GE(rep.sup_lattice, 1.0);
    EXPECT_EQ(rep.grid_size, 3u);
}

TEST(CarlesonReport, EmptyMeasureAndScaling) {
    std::mt19937_64 eng(6);
    const KernelParams kp(1, 1.0);
    const Lattice l = build_lattice(1, 0.7, RegionSpec(0.4), 6);
    const auto grid = random_grid(1, 10, eng);
    const SamplerConfig cfg{20'000, 2, 2};
    const auto zero = carleson_report(AtomicMeasure(1), l, grid, kp, cfg);
    EXPECT_EQ(zero.sup_berezin, 0.0);
    EXPECT_EQ(zero.sup_averaging, 0.0);
    EXPECT_EQ(zero.sup_condition2, 0.0);
    EXPECT_EQ(zero.sup_lattice, 0.0);
    AtomicMeasure mu(1);
    for (const auto& c : l.centers) mu.add(c, 0.5);
    const auto a = carleson_report(mu, l, grid, kp, cfg);
    const auto b = carleson_report(mu.scaled(4.0), l, grid, kp, cfg);
    EXPECT_NEAR(b.sup_berezin, 4.0 * a.sup_berezin, 1e-12 * b.sup_berezin);
    EXPECT_NEAR(b.sup_condition2, 4.0 * a.sup_condition2, 1e-12 * b.sup_condition2);
    EXPECT_NEAR(b.sup_averaging, 4.0 * a.sup_averaging, 1e-12 * b.sup_averaging);
    EXPECT_NEAR(b.sup_lattice, 4.0 * a.sup_lattice, 1e-12 * b.sup_lattice);
}

TEST(VanishingProfile, UnitAtomDecaysBothWays) {
    const KernelParams kp(1, 0.0);
    const Lattice l = build_lattice(1, 0.5, RegionSpec(0.2), 3);
    const auto prof = vanishing_profile(delta(TubePoint::base(1)), l, kp);
    ASSERT_EQ(prof.toward_boundary.size(), 13u);
    const double peak = prof.toward_boundary.front().value;
    EXPECT_DOUBLE_EQ(peak, 1.0);
    for (const auto* ray : {&prof.toward_boundary, &prof.toward_infinity}) {
        for (std::size_t k = 1; k < ray->size(); ++k) EXPECT_LT((*ray)[k].value, (*ray)[k - 1].value);
        EXPECT_LT(ray->back().value, 1e-6 * peak);
    }
    for (std::size_t k = 1; k < prof.lattice.size(); ++k) EXPECT_LE(prof.lattice[k - 1].t, prof.lattice[k].t);
}

TEST(VanishingProfile, EmptyMeasureIsZero) {
    const KernelParams kp(2, 0.0);
    const Lattice l = build_lattice(2, 1.0, RegionSpec(0.5), 3);
    const auto prof = vanishing_profile(AtomicMeasure(2), l, kp);
    for (const auto& p : prof.toward_boundary) EXPECT_EQ(p.value, 0.0);
    for (const auto& p : prof.toward_infinity) EXPECT_EQ(p.value, 0.0);
    for (const auto& p : prof.lattice) EXPECT_EQ(p.value, 0.0);
}

TEST(Discretize, MassMatchesBallVolume) {
    const KernelParams kp(1, 0.0);
    const SamplerConfig cfg{200'000, 8, 1};
    const TubePoint i = TubePoint::base(1);
    const AtomicMeasure mu =
        discretize_density([&](const TubePoint& z) { return bergman_distance(i, z) < 0.5 ? 1.0 : 0.0; }, kp, cfg);
    const auto vol = volume_ball(i, 0.5, kp, cfg);
    EXPECT_NEAR(mu.total_mass(), vol.value.real(), 1e-9 * vol.value.real());
    for (const auto& a : mu.atoms()) EXPECT_LT(bergman_distance(i, a.point), 0.5);
}
