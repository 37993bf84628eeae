#include "common.hpp"
#include "ekgw/gw.hpp"
#include "ekgw/kronecker.hpp"

using namespace ekgw;
using ekgw::test::close;

TEST_CASE("varpi") {
    ModularPoint m(cplx(0.1, 1.1));
    CHECK(close(varpi({{0.3, 0.2}}, {{0.21, 0.13}}, m), 1.0, 1e-14));
    std::vector<cplx> z{{0.11, 0.31}, {-0.23, 0.07}}, w{{0.19, 0.05}, {0.33, -0.04}};
    cplx v = varpi(z, w, m);
    CHECK(close(varpi({z[0] + m.tau(), z[1]}, w, m), v, 1e-8));
    CHECK(close(varpi({z[1], z[0]}, {w[1], w[0]}, m), v, 1e-10));
    CHECK(close(varpi_det(z, w, m, false), v, 1e-9));
    CHECK(close(varpi_det(z, w, m, true), v, 1e-9));
}

TEST_CASE("closed forms") {
    ModularPoint m(cplx(0.1, 1.1));
    std::vector<cplx> w{{0.21, 0.03}, {0.37, -0.02}, {0.13, 0.01}};
    auto e = [&](int k, cplx x) { return ek_coeff(k, x, m, true); };
    CHECK(close(That_closed({1}, w, m), 1.0, 1e-14));
    CHECK(close(That_closed({1, 2}, w, m), e(1, w[0]) + e(1, w[1]), 1e-12));
    cplx three = 0.0;
    for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}}) three += e(1, w[a]) * e(1, w[b]) + e(2, w[a] + w[b]);
    CHECK(close(That_closed({1, 2, 3}, w, m), three, 1e-11));
    CHECK(close(Ghat_closed({}, w, m), 1.0, 1e-14));
    CHECK(close(Ghat_closed({1}, w, m), e(1, w[0]), 1e-12));
    CHECK(close(Ghat_closed({1, 2}, w, m), e(1, w[0]) * e(1, w[1]) + e(2, w[0] + w[1]), 1e-12));
}

TEST_CASE("numeric oracle") {
    ModularPoint m(cplx(0.1, 1.1));
    std::vector<cplx> w{{0.21, 0.03}, {0.37, -0.02}};
    CHECK(close(That_numeric(w, m, {128}), Z(w[0], m) + Z(w[1], m), 1e-6));
}

TEST_CASE("generating series") {
    ModularPoint m(cplx(0.1, 1.1));
    std::vector<cplx> w{{0.21, 0.03}};
    EpsPoly G = generating_series(w, m, Series::G), T = generating_series(w, m, Series::T);
    CHECK(G.coefficient(0) == 1.0);
    CHECK(close(G.coefficient(0b10), ek_coeff(1, w[0], m, true), 1e-12));
    CHECK(T.coefficient(0) == 1.0);
    CHECK(close(T.coefficient(0b11), 1.0, 1e-14));
    CHECK(generating_series(w, m, Series::H).coefficient(0) == 1.0);
}
