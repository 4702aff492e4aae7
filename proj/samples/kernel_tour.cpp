// A short walk through the library: points, the kernel, a Monte-Carlo
// integral against its closed form, and a small Toeplitz operator.

#include <cstdio>

#include "tubeberg/tubeberg.hpp"

using namespace tubeberg;

int main() {
    const std::size_t n = 2;
    const KernelParams kp(n, 1.0);
    const TubePoint i = TubePoint::base(n);
    const TubePoint z(CVector{cplx{0.3, 0.2}, cplx{-0.5, 1.4}});

    std::printf("rho(z) = %.6f, beta(i, z) = %.6f\n", z.rho(), bergman_distance(i, z));
    const BallPoint xi = cayley_inv(z);
    std::printf("ball image |xi|^2 = %.6f, 1 - |xi|^2 = %.6f, rho(z)/|rho(z,i)|^2 = %.6f\n", xi.norm2(),
                1.0 - xi.norm2(), z.rho() / std::norm(rho_with_base(z)));

    const cplx k = bergman_kernel(z, i, kp);
    std::printf("K(z, i) = %.6e %+.6ei, K(z, z) = %.6e\n", k.real(), k.imag(), kernel_diagonal(z, kp));

    const RFParams rf{kp.order(), kp.order(), kp.alpha};
    const IntegralEstimate est = rf_mc(n, rf, z, i, {200'000, 7, 1});
    const cplx exact = rf_exact(n, rf, z, i);
    std::printf("reproducing integral: MC %.6e (stderr %.1e), exact %.6e, %.2f sigma\n", est.value.real(),
                est.std_error.real(), exact.real(), est.sigma_distance(exact));

    AtomicMeasure mu(n);
    mu.add(i, 1.0);
    mu.add(z, 0.5);
    mu.add(Automorphism::dilation(0.5)(z), 2.0);
    const ToeplitzModel tm = build_model(mu, kp);
    std::printf("||T_mu|| = %.6e; eigenvalues:", operator_norm(tm));
    for (double v : spectral_profile(tm)) std::printf(" %.4e", v);
    std::printf("\nBerezin transform at i: %.6e (via operator %.6e)\n", berezin(mu, i, kp), berezin_via_operator(tm, i));
    return 0;
}
