#include "common.hpp"
#include "ekgw/kronecker.hpp"
#include "ekgw/theta.hpp"

using namespace ekgw;
using ekgw::test::close;

TEST_CASE("low-order Laurent coefficients") {
    ModularPoint m(cplx(0.3, 1.4));
    cplx z(0.27, 0.33);
    for (auto route : {EKRoute::jet_extraction, EKRoute::bell_polynomial, EKRoute::binomial_completion}) {
        auto e = ek_coeffs(z, m, true, 2, route);
        CHECK(e[0] == 1.0);
        CHECK(close(e[1], Z(z, m, true), 1e-8));
        CHECK(close(e[2], 0.5 * (-weierstrass_p(z, m) + std::pow(Z(z, m, true), 2)), 1e-8));
    }
}

TEST_CASE("Kronecker function symmetries") {
    ModularPoint m(cplx(0.3, 1.4));
    cplx c(0.17, -0.11), z(0.29, 0.23);
    CHECK(close(kronecker_S(c, z, m), kronecker_S(z, c, m), 1e-10));
    CHECK(close(kronecker_S(c, -z, m, true), -kronecker_S(-c, z, m, true), 1e-9));
    CHECK(close(kronecker_S(c, z + m.tau(), m, true), kronecker_S(c, z, m, true), 1e-8));
}

TEST_CASE("Eisenstein-Kronecker series") {
    ModularPoint m(cplx(0.3, 1.4));
    cplx z(0.27, 0.33);
    CHECK(close(ek_series(1, z, m, EKVariant::star), Z(z, m), 1e-9));
    CHECK(close(ek_series(2, z, m, EKVariant::raw), lattice_ek_sum(z, 2, m), 1e-6));
}

TEST_CASE("Fay identity and quadratic relations") {
    ModularPoint m(cplx(0.3, 1.4));
    CHECK(std::abs(fay_residual({0.13, 0.02}, {-0.21, 0.05}, {0.31, 0.11}, {-0.17, 0.29}, m)) < 1e-9);
    CHECK(std::abs(fay_residual({0.13, 0.02}, {-0.21, 0.05}, {0.31, 0.11}, {-0.17, 0.29}, m, true)) < 1e-9);
    cplx x(0.31, 0.11), y(-0.17, 0.29);
    CHECK(std::abs(quadratic_relation_residual(1, 1, x, y, m)) < 1e-8);
    CHECK(std::abs(quadratic_relation_residual(2, 3, x, y, m)) < 1e-7);
    CHECK(std::abs(quadratic_special_residual(2, x, y, m, 2.0)) < 1e-8);
}

TEST_CASE("antiholomorphic primitives") {
    ModularPoint m(cplx(0.3, 1.4));
    cplx z(0.27, 0.33);
    CHECK(std::abs(dbar_primitive_check({1}, {0.0}, z, m)) < 1e-5);
    CHECK(std::abs(dbar_primitive_check({1, 1}, {0.0, {0.19, 0.07}}, z, m)) < 1e-4);
    CHECK(std::abs(dbar_primitive_check({2, 1}, {0.0, {0.19, 0.07}}, z, m)) < 1e-4);
}
