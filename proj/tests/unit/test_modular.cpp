#include "common.hpp"
#include "ekgw/quadrature.hpp"
#include "ekgw/theta.hpp"

using namespace ekgw;
using ekgw::test::close;

TEST_CASE("Eisenstein series") {
    ModularPoint i(cplx(0, 1));
    CHECK(eisenstein_G(3, i) == 0.0);
    CHECK(close(eisenstein_G(2, i, EisensteinMethod::lattice_eisenstein_summation),
                eisenstein_G(2, i, EisensteinMethod::q_series), 1e-8));
    using EM = EisensteinMethod;
    cplx a = eisenstein_G(4, ModularPoint(cplx(0, 2), 200), EM::lattice_eisenstein_summation);
    cplx b = eisenstein_G(4, ModularPoint(cplx(0, 2), 400), EM::lattice_eisenstein_summation);
    CHECK(close(a, b, 1e-9));
    CHECK(close(eisenstein_G_hat(2, i) - eisenstein_G(2, i), i.Y() / 2.0, 1e-14));
}

TEST_CASE("eta1") {
    ModularPoint i(cplx(0, 1));
    CHECK(close(eta1(i, true) - eta1(i), i.Y(), 1e-14));
    CHECK(close(eta1(i), 2.0 * eisenstein_G(2, i), 1e-14));
    cplx wp = contour_integrate([&](cplx z) { return weierstrass_p(z, i); }, a_cycle(i, -0.4));
    CHECK(close(eta1(i), -wp, 1e-9));
}

TEST_CASE("completion term A") {
    ModularPoint m(cplx(0.2, 1.3));
    cplx z(0.31, 0.27);
    CHECK(A_of_z(0.37, m) == 0.0);
    CHECK(close(A_of_z(-z, m), -A_of_z(z, m), 1e-15));
    CHECK(close(A_of_z(z + m.tau(), m) - A_of_z(z, m), two_pi_i, 1e-13));
}
