#include "common.hpp"
#include "ekgw/theta.hpp"

using namespace ekgw;
using ekgw::test::close;

TEST_CASE("theta automorphy") {
    ModularPoint m(cplx(0.4, 1.2));
    CHECK(theta(0.0, m) == 0.0);
    ekgw::test::Sampler s(7);
    for (int k = 0; k < 20; ++k) {
        cplx z = s.point(m);
        cplx t = theta(z, m);
        CHECK(close(theta(z + 1.0, m), -t, 1e-10));
        cplx f = -std::exp(-pi * I * m.tau() - 2.0 * pi * I * z);
        CHECK(close(theta(z + m.tau(), m), f * t, 1e-10 * std::max(1.0, std::abs(f * t))));
    }
}

TEST_CASE("logarithmic jet of theta") {
    ModularPoint m(cplx(0.4, 1.2));
    cplx z(0.21, 0.17);
    Jet j = log_theta_jet(z, m, 4);
    CHECK(close(j[1], Z(z, m), 1e-9));
    CHECK(close(2.0 * j[2], -lattice_wp(z, m) - m.two_G(2), 1e-8));
    Jet jm = log_theta_jet(-z, m, 4);
    for (int k = 1; k <= 4; ++k) CHECK(close(jm[k], (k % 2 ? -1.0 : 1.0) * j[k], 1e-9));
    Jet t = theta_jet(z, m, 4), tm = theta_jet(-z, m, 4);
    for (int k = 0; k <= 4; ++k) CHECK(close(tm[k], (k % 2 ? 1.0 : -1.0) * t[k], 1e-9));
}

TEST_CASE("Weierstrass functions") {
    ModularPoint m(cplx(0.4, 1.2));
    cplx z(0.21, 0.17);
    CHECK(close(weierstrass_p(-z, m), weierstrass_p(z, m), 1e-9));
    CHECK(close(weierstrass_p(z + m.tau(), m), weierstrass_p(z, m), 1e-8));
    cplx prev = 1.0;
    for (double r : {1e-1, 1e-2, 1e-3}) {
        cplx w = std::polar(r, 0.4);
        cplx d = weierstrass_zeta(w, m) - 1.0 / w;
        CHECK(std::abs(d) < std::abs(prev));
        prev = d;
    }
}

TEST_CASE("Z and its completion") {
    ModularPoint m(cplx(0.4, 1.2));
    cplx z(0.21, 0.17);
    CHECK(close(Z(z + m.tau(), m, true), Z(z, m, true), 1e-9));
    CHECK(close(Z(z + m.tau(), m), Z(z, m) - two_pi_i, 1e-9));
    CHECK(close(Z(-z, m, true), -Z(z, m, true), 1e-10));
}
