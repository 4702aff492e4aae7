#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tubeberg/geometry.hpp"

using namespace tubeberg;

namespace {

TubePoint random_tube(std::size_t n, std::mt19937_64& eng) { return TubePoint(oracle::tube_point(n, eng)); }

BallPoint random_ball(std::size_t n, double R, std::mt19937_64& eng) { return BallPoint(oracle::ball_point(n, R, eng)); }

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

} // namespace

TEST(TubePoint, RejectsBoundaryAndExterior) {
    EXPECT_THROW(TubePoint(CVector{cplx{0.0, -1.0}}), DomainError);
    EXPECT_THROW(TubePoint(CVector{cplx{2.0, 0.0}}), DomainError);
    // y_n = |y'|^2 exactly
    EXPECT_THROW(TubePoint(CVector{cplx{0.0, 1.5}, cplx{0.3, 2.25}}), DomainError);
    EXPECT_THROW(TubePoint(CVector{}), DimensionMismatch);
    EXPECT_NO_THROW(TubePoint(CVector{cplx{0.0, 1.5}, cplx{0.3, 2.2501}}));
}

TEST(TubePoint, RhoAndContains) {
    const TubePoint z(CVector{cplx{1.0, 0.5}, cplx{-2.0, 1.0}});
    EXPECT_DOUBLE_EQ(z.rho(), 0.75);
    EXPECT_TRUE(contains(z.span()));
    const CVector out{cplx{0.0, 2.0}, cplx{0.0, 3.0}};
    EXPECT_FALSE(contains(out));
    EXPECT_DOUBLE_EQ(TubePoint::base(3).rho(), 1.0);
    EXPECT_DOUBLE_EQ(TubePoint::on_axis(2, 4.0).rho(), 4.0);
}

TEST(RhoPair, DiagonalIsRho) {
    std::mt19937_64 eng(1);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int k = 0; k < 200; ++k) {
            const TubePoint z = random_tube(n, eng);
            const cplx d = rho_pair(z, z);
            EXPECT_NEAR(d.real(), z.rho(), 1e-12 * (1.0 + std::norm(z.last())));
            EXPECT_NEAR(d.imag(), 0.0, 1e-12 * (1.0 + std::norm(z.last())));
        }
    }
}

TEST(RhoPair, HermitianSymmetryAndLowerBound) {
    std::mt19937_64 eng(2);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int k = 0; k < 500; ++k) {
            const TubePoint z = random_tube(n, eng);
            const TubePoint w = random_tube(n, eng);
            EXPECT_LT(rel(rho_pair(z, w), std::conj(rho_pair(w, z))), 1e-13);
            // Re rho(z,w) >= (rho(z) + rho(w)) / 2
            EXPECT_GE(rho_pair(z, w).real(), 0.5 * (z.rho() + w.rho()) * (1.0 - 1e-12));
        }
    }
}

TEST(RhoPair, BaseFormulaMatchesPairing) {
    std::mt19937_64 eng(3);
    for (std::size_t n = 1; n <= 3; ++n) {
        const TubePoint i = TubePoint::base(n);
        for (int k = 0; k < 200; ++k) {
            const TubePoint z = random_tube(n, eng);
            EXPECT_LT(rel(rho_with_base(z), rho_pair(z, i)), 1e-13);
        }
    }
}

TEST(RhoPair, UpperHalfPlaneCase) {
    // n = 1: rho(z, w) = (z - conj w) / (2i)
    const TubePoint z(CVector{cplx{0.3, 1.7}});
    const TubePoint w(CVector{cplx{-1.1, 0.4}});
    const cplx expected = (z[0] - std::conj(w[0])) / cplx{0.0, 2.0};
    EXPECT_LT(rel(rho_pair(z, w), expected), 1e-15);
}

TEST(RhoPair, DilationScalesByTSquared) {
    std::mt19937_64 eng(4);
    std::uniform_real_distribution<double> tt(0.1, 10.0);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int k = 0; k < 200; ++k) {
            const TubePoint z = random_tube(n, eng);
            const TubePoint w = random_tube(n, eng);
            const double t = tt(eng);
            const auto d = Automorphism::dilation(t);
            EXPECT_LT(rel(rho_pair(d(z), d(w)), t * t * rho_pair(z, w)), 1e-12);
        }
    }
}

TEST(Cayley, OriginMapsToBase) {
    for (std::size_t n = 1; n <= 3; ++n) {
        const TubePoint z = cayley(BallPoint::origin(n));
        EXPECT_LT(rel(z.last(), cplx{0.0, 1.0}), 1e-15);
        EXPECT_NEAR(cayley_inv(TubePoint::base(n)).norm2(), 0.0, 1e-30);
    }
}

TEST(Cayley, HalfPlaneFormula) {
    std::mt19937_64 eng(5);
    for (int k = 0; k < 100; ++k) {
        const BallPoint xi = random_ball(1, 0.99, eng);
        const cplx expected = cplx{0.0, 1.0} * (1.0 - xi[0]) / (1.0 + xi[0]);
        EXPECT_LT(rel(cayley(xi)[0], expected), 1e-13);
    }
}

TEST(Cayley, RoundTrip) {
    std::mt19937_64 eng(6);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int k = 0; k < 2000; ++k) {
            const BallPoint xi = random_ball(n, 0.95, eng);
            const BallPoint back = cayley_inv(cayley(xi));
            for (std::size_t j = 0; j < n; ++j) EXPECT_LT(std::abs(back[j] - xi[j]), 1e-10);
            const TubePoint z = random_tube(n, eng);
            const TubePoint zz = cayley(cayley_inv(z));
            for (std::size_t j = 0; j < n; ++j) EXPECT_LT(std::abs(zz[j] - z[j]), 1e-10 * (1.0 + std::abs(z[j])));
        }
    }
}

TEST(Cayley, ImageRhoAndPairingIdentities) {
    std::mt19937_64 eng(7);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int k = 0; k < 1000; ++k) {
            const BallPoint xi = random_ball(n, 0.9, eng);
            const BallPoint eta = random_ball(n, 0.9, eng);
            const TubePoint z = cayley(xi);
            const TubePoint w = cayley(eta);
            const double rz = (1.0 - oracle::norm2(xi.coords())) / std::norm(1.0 + xi.last());
            EXPECT_LT(std::abs(detail::coordinate_rho(z.span()) - rz) / rz, 1e-10);
            const cplx expected = (1.0 - oracle::herm(xi.coords(), eta.coords())) /
                                  ((1.0 + xi.last()) * std::conj(1.0 + eta.last()));
            EXPECT_LT(rel(rho_pair(z, w), expected), 1e-10);
        }
    }
}

TEST(Cayley, JacobiansMatchFiniteDifferences) {
    std::mt19937_64 eng(8);
    for (std::size_t n = 1; n <= 3; ++n) {
        auto phi = [](const oracle::CVec& v) { return cayley(BallPoint(v)).coords(); };
        auto phi_inv = [](const oracle::CVec& v) { return cayley_inv(TubePoint(v)).coords(); };
        for (int k = 0; k < 30; ++k) {
            const BallPoint xi = random_ball(n, 0.8, eng);
            const double fd = oracle::fd_jacobian(phi, xi.coords());
            EXPECT_LT(std::abs(jacobian_cayley(xi) - fd) / fd, 1e-5);
            const TubePoint z = cayley(random_ball(n, 0.8, eng));
            const double fdi = oracle::fd_jacobian(phi_inv, z.coords());
            EXPECT_LT(std::abs(jacobian_cayley_inv(z) - fdi) / fdi, 1e-5);
            EXPECT_NEAR(jacobian_cayley(xi) * jacobian_cayley_inv(cayley(xi)), 1.0, 1e-12);
        }
    }
}

TEST(Cayley, InverseJacobianAtBase) {
    EXPECT_DOUBLE_EQ(jacobian_cayley_inv(TubePoint::base(1)), 0.25);
    EXPECT_DOUBLE_EQ(jacobian_cayley_inv(TubePoint::base(2)), 0.125);
}

TEST(Distance, HalfPlaneAxis) {
    // beta(i, it) = |log t| / 2 in the upper half-plane
    for (double t : {1e-6, 0.01, 0.3, 1.0, 2.0, 50.0, 1e6}) {
        EXPECT_NEAR(bergman_distance(TubePoint::base(1), TubePoint::on_axis(1, t)), 0.5 * std::abs(std::log(t)), 1e-12);
    }
}

TEST(Distance, MetricAxiomsSampled) {
    std::mt19937_64 eng(9);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int k = 0; k < 1000; ++k) {
            const TubePoint a = random_tube(n, eng);
            const TubePoint b = random_tube(n, eng);
            const TubePoint c = random_tube(n, eng);
            EXPECT_EQ(bergman_distance(a, a), 0.0);
            EXPECT_NEAR(bergman_distance(a, b), bergman_distance(b, a), 1e-12 * (1.0 + bergman_distance(a, b)));
            EXPECT_LE(bergman_distance(a, c), bergman_distance(a, b) + bergman_distance(b, c) + 1e-9);
        }
    }
}

TEST(Distance, AgreesWithBallModel) {
    std::mt19937_64 eng(10);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int k = 0; k < 1000; ++k) {
            const BallPoint xi = random_ball(n, 0.9, eng);
            const BallPoint eta = random_ball(n, 0.9, eng);
            const double tube = bergman_distance(cayley(xi), cayley(eta));
            const double ball = oracle::ball_distance(xi.coords(), eta.coords());
            EXPECT_LT(std::abs(tube - ball), 1e-10 * std::max(1.0, ball));
        }
    }
}

TEST(Automorphism, SigmaSendsPointToBase) {
    std::mt19937_64 eng(11);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int k = 0; k < 200; ++k) {
            const TubePoint z = random_tube(n, eng);
            const TubePoint s = Automorphism::sigma(z)(z);
            for (std::size_t j = 0; j + 1 < n; ++j) EXPECT_LT(std::abs(s[j]), 1e-12);
            EXPECT_LT(std::abs(s.last() - cplx{0.0, 1.0}), 1e-9);
        }
    }
}

TEST(Automorphism, ShiftPreservesPairing) {
    std::mt19937_64 eng(12);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int k = 0; k < 300; ++k) {
            const TubePoint z = random_tube(n, eng);
            const TubePoint u = random_tube(n, eng);
            const TubePoint v = random_tube(n, eng);
            const auto h = Automorphism::shift(z);
            EXPECT_LT(rel(rho_pair(h(u), h(v)), rho_pair(u, v)), 1e-10);
            const auto s = Automorphism::sigma(z);
            EXPECT_LT(rel(rho_pair(s(u), s(v)), rho_pair(u, v) / z.rho()), 1e-10);
        }
    }
}

TEST(Automorphism, InverseRoundTrip) {
    std::mt19937_64 eng(13);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int k = 0; k < 200; ++k) {
            const TubePoint z = random_tube(n, eng);
            const TubePoint w = random_tube(n, eng);
            const auto s = Automorphism::sigma(z);
            const TubePoint back = s.inverse()(s(w));
            for (std::size_t j = 0; j < n; ++j) EXPECT_LT(std::abs(back[j] - w[j]), 1e-9 * (1.0 + std::abs(w[j])));
        }
    }
}

TEST(Automorphism, DistanceInvariance) {
    std::mt19937_64 eng(14);
    for (std::size_t n = 1; n <= 3; ++n) {
        for (int k = 0; k < 500; ++k) {
            const TubePoint z = random_tube(n, eng);
            const TubePoint u = random_tube(n, eng);
            const TubePoint v = random_tube(n, eng);
            const auto s = Automorphism::sigma(z);
            EXPECT_NEAR(bergman_distance(s(u), s(v)), bergman_distance(u, v), 1e-9);
        }
    }
}

TEST(Automorphism, JacobianModulusMatchesFiniteDifferences) {
    std::mt19937_64 eng(15);
    for (std::size_t n = 1; n <= 3; ++n) {
        const TubePoint z = random_tube(n, eng);
        const auto s = Automorphism::sigma(z);
        auto F = [&](const oracle::CVec& v) { return s(TubePoint(v)).coords(); };
        const TubePoint w = random_tube(n, eng);
        const double fd = oracle::fd_jacobian(F, w.coords(), 1e-5);
        const double jm = s.jacobian_modulus(n);
        EXPECT_LT(std::abs(jm * jm - fd) / fd, 1e-5);
        EXPECT_NEAR(jm, std::pow(z.rho(), -0.5 * (static_cast<double>(n) + 1.0)), 1e-12 * jm);
    }
}

TEST(Automorphism, DimensionMismatchThrows) {
    const auto s = Automorphism::sigma(TubePoint::base(2));
    EXPECT_THROW(s(TubePoint::base(3)), DimensionMismatch);
    EXPECT_THROW(rho_pair(TubePoint::base(2), TubePoint::base(3)), DimensionMismatch);
}
