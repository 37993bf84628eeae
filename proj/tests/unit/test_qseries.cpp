#include "common.hpp"
#include "ekgw/gw.hpp"
#include "ekgw/qseries.hpp"
#include "ekgw/theta.hpp"

using namespace ekgw;
using ekgw::test::close;

TEST_CASE("theta series is invertible") {
    QExpandParams p;
    p.q_order = 8;
    QSeries th = qexpand(QTarget::theta, p);
    QSeries one = (th * th.reciprocal()).reduce();
    REQUIRE(one.rows().size() == 1);
    CHECK(one.rows()[0].numerator == "1");
    CHECK(one.rows()[0].q_exponent_doubled == 0);
}

TEST_CASE("q-expansions against direct evaluation") {
    QExpandParams p;
    p.q_order = 10;
    QSeries z1 = qexpand(QTarget::Z, p);
    ekgw::test::Sampler s(3);
    cplx tau(0.2, 0.5);  // |q| about 0.04
    ModularPoint m(tau);
    for (int k = 0; k < 10; ++k) {
        cplx z = s.uniform(-0.5, 0.5) + s.uniform(-0.2, 0.2) * tau;
        CHECK(close(z1.evaluate(tau, {z}), Z(z, m), 1e-8 * std::max(1.0, std::abs(Z(z, m)))));
    }
    p.k = 4;
    ModularPoint two_i(cplx(0, 2));
    CHECK(close(qexpand(QTarget::G2k, p).evaluate(two_i.tau(), {}),
                eisenstein_G(4, two_i, EisensteinMethod::lattice_eisenstein_summation), 1e-8));
    p.n = 2;
    std::vector<cplx> w{{0.21, 0.03}, {0.37, -0.02}};
    CHECK(close(qexpand(QTarget::T_n, p).evaluate(tau, w), That_closed({1, 2}, w, m, false), 1e-7));
}
