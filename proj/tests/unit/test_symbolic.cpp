#include "common.hpp"
#include "ekgw/kronecker.hpp"
#include "ekgw/symbolic.hpp"

using namespace ekgw;
using L = LinearForm;

namespace {
EKExpr e(int m, const L& s, bool hat = true) { return EKExpr::factor(m, s, hat); }
}

TEST_CASE("indicating graphs") {
    EKExpr loop3 = e(1, L::s(1, 2)) * e(1, L::s(2, 3)) * e(1, L::s(3, 1));
    auto g = build_graph(loop3.monomials().at(0), 3);
    REQUIRE(g.components.size() == 1);
    CHECK(g.components[0].kind == IndicatingGraph::Kind::loop);

    auto g2 = build_graph(e(2, L::s(1, 2)).monomials().at(0), 3);
    CHECK(g2.components.size() == 2);

    auto g3 = build_graph((e(1, L::s(1, 2)) * e(1, L::s(1, 3))).monomials().at(0), 3);
    CHECK_FALSE(g3.in_VD());
}

TEST_CASE("holomorphic residues") {
    EKExpr f = e(1, L::zvar(1) - L::zvar(0));
    CHECK(symbolic_residue(f, 1) == EKExpr::constant(1.0));
    CHECK(symbolic_residue(e(2, L::s(1, 2)), 1).is_zero());
}

TEST_CASE("regularized integration") {
    EKExpr loop2 = e(1, L::s(1, 2)) * e(1, L::s(2, 1));
    CHECK(symbolic_reg_integrate_all(loop2, 2) == -1.0 * e(2, L::wvar(1) + L::wvar(2)));
    EKExpr loop3 = e(1, L::s(1, 2)) * e(1, L::s(2, 3)) * e(1, L::s(3, 1));
    CHECK(symbolic_reg_integrate_all(loop3, 3) == e(3, L::wvar(1) + L::wvar(2) + L::wvar(3)));
    CHECK(symbolic_reg_integrate_one(e(3, L::zvar(1) - L::zvar(0)), 1).is_zero());
    CHECK(symbolic_reg_integrate_one(EKExpr::constant(1.0), 1) == EKExpr::constant(1.0));
    EKExpr chain = e(1, L::zvar(1) - L::zvar(0)) * e(2, L::zvar(2) - L::zvar(1));
    CHECK(symbolic_reg_integrate_all(chain, 2).is_zero());
}

TEST_CASE("holomorphic limit and evaluation") {
    ModularPoint m(cplx(0.1, 1.1));
    EKExpr f = e(1, L::s(1, 2)) * e(2, L::wvar(1));
    CHECK(elliptic_completion(holomorphic_limit(f)) == f);
    CHECK(EKExpr::parse(f.to_string()) == f);
    std::vector<cplx> zv{0.0, {0.11, 0.05}, {0.31, -0.02}}, wv{0.0, {0.17, 0.03}, {0.23, 0.01}};
    cplx v = numeric_eval(e(1, L::s(1, 2)), zv, wv, m);
    CHECK(std::abs(v - Z(wv[1] + zv[1] - zv[2], m, true)) < 1e-12);
    cplx x(0.37, 0.0);
    CHECK(std::abs(numeric_eval(holomorphic_limit(e(2, L::zvar(1))), {0.0, x}, {0.0}, m) - ek_coeff(2, x, m, true)) <
          1e-10);
}
