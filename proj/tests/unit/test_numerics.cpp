#include "common.hpp"
#include "ekgw/jet.hpp"
#include "ekgw/kronecker.hpp"
#include "ekgw/quadrature.hpp"
#include "ekgw/theta.hpp"

using namespace ekgw;
using ekgw::test::close;

TEST_CASE("jet arithmetic") {
    Jet f({0, {2.0, 1.0, cplx(0.5, 0.25), -1.0, 3.0}});
    Jet one = f * f.reciprocal();
    CHECK(close(one[0], 1.0, 1e-12));
    for (int e = 1; e <= 4; ++e) CHECK(close(one[e], 0.0, 1e-12));

    Jet g({2, {1.0, 3.0, 1.0}});
    CHECK((f / g).low() == -2);

    Jet h = Jet({0, {0.0, 1.0, 0.5, 0.0, 0.0}}).exp().log();
    CHECK(close(h[1], 1.0, 1e-13));
    CHECK(close(h[2], 0.5, 1e-13));

    // exp(w) composed with w + w^2: 1 + w + 3/2 w^2 + ...
    Jet c = Jet::exp_linear(0.0, 1.0, 4).compose(Jet({1, {1.0, 1.0, 0.0, 0.0}}));
    CHECK(close(c[2], 1.5, 1e-13));
}

TEST_CASE("contour integrals along the A-cycle") {
    ModularPoint m(cplx(0, 1));
    CHECK(close(contour_integrate([](cplx) { return cplx(1.0); }, a_cycle(m, 0.1)), 1.0, 1e-12));
    // integral of wp over a horizontal period is -eta1 = -2 G_2
    cplx wp = contour_integrate([&](cplx z) { return weierstrass_p(z, m); }, a_cycle(m, -0.4));
    CHECK(close(wp, -2.0 * eisenstein_G(2, m), 1e-9));

    ModularPoint m2(cplx(0.3, 1.1));
    auto e1 = [&](cplx z) { return Z(z, m2); };
    cplx lo = contour_integrate(e1, a_cycle(m2, -0.3, 256)), hi = contour_integrate(e1, a_cycle(m2, -0.3, 512));
    CHECK(std::abs(lo - hi) <= 1e-10 * std::abs(hi));
}

TEST_CASE("circle residues") {
    ModularPoint m(cplx(0.1, 1.1));
    CHECK(close(circle_residue([](cplx z) { return 1.0 / z; }, 0.0, 0.1), 1.0, 1e-10));
    CHECK(close(circle_residue([](cplx z) { return std::conj(z) / z; }, 0.0, 0.1), 0.0, 1e-10));
    CHECK(close(circle_residue([&](cplx z) { return ek_coeff(2, z, m, true); }, 0.0, 0.1), 0.0, 1e-6));
}

TEST_CASE("excised torus integrals") {
    ModularPoint m(cplx(0.1, 1.1));
    ExcisionSpec e;
    e.grid_resolution = 200;
    CHECK(close(excised_integral([](cplx) { return cplx(1.0); }, m, {}, e), 1.0, 1e-10));
    for (int k : {1, 2}) {
        auto f = [&](cplx z) { return ek_coeff(k, z, m, true); };
        CHECK(close(excised_integral(f, m, {0.0}, e), 0.0, 1e-4));
    }
}

TEST_CASE("Wirtinger derivatives") {
    ModularPoint m(cplx(0, 1));
    cplx z(0.23, 0.31);
    CHECK(close(wirtinger_dbar([](cplx w) { return w; }, z), 0.0, 1e-8));
    CHECK(close(wirtinger_dbar([](cplx w) { return std::conj(w); }, z), 1.0, 1e-8));
    cplx d = wirtinger_dbar([&](cplx w) { return ek_coeff(2, w, m, true); }, z);
    CHECK(close(d, m.Y() * ek_coeff(1, z, m, true), 1e-5));
}
