#include "common.hpp"
#include "ekgw/integrals.hpp"
#include "ekgw/kronecker.hpp"
#include "ekgw/theta.hpp"

using namespace ekgw;
using ekgw::test::close;

TEST_CASE("averaged A-cycle integrals") {
    ModularPoint m(cplx(0.1, 1.1));
    auto one = [](const std::vector<cplx>&) { return cplx(1.0); };
    CHECK(close(averaged_A_integral(one, 2, 32, m), 1.0, 1e-12));
    auto e0 = [&](const std::vector<cplx>& z) { return ek_coeff(0, z[0], m, false); };
    CHECK(close(averaged_A_integral(e0, 1, 64, m), 1.0, 1e-8));
    // the contour sits just above tau, where Z = Z(z - tau) - 2 pi i
    auto e1 = [&](const std::vector<cplx>& z) { return ek_coeff(1, z[0], m, false); };
    CHECK(close(averaged_A_integral(e1, 1, 64, m), -3.0 * pi * I, 1e-8));
    cplx w1(0.21, 0.01), w2(0.37, -0.02);
    auto loop = [&](const std::vector<cplx>& z) {
        return ek_coeff(1, w1 + z[0] - z[1], m, false) * ek_coeff(1, w2 + z[1] - z[0], m, false);
    };
    std::vector<PoleForm> poles{{{1, -1}, w1}, {{-1, 1}, w2}};
    // the A-cycle average differs from the regularized integral by the constant 2 pi^2 / 3
    CHECK(close(averaged_A_integral(loop, 2, 64, m, poles), -ek_coeff(2, w1 + w2, m, false) + 2.0 * pi * pi / 3.0,
                1e-5));
}

TEST_CASE("ordering independence") {
    ModularPoint m(cplx(0.1, 1.1));
    std::vector<cplx> p{{0.17, 0.01}, {0.41, -0.02}};
    CHECK(ordering_independence_check({1, 1}, p, m) < 1e-7);
    CHECK(ordering_independence_check({2, 1}, p, m) < 1e-7);
}
