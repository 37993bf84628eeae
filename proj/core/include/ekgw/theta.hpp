#pragma once

#include <vector>

#include "ekgw/jet.hpp"
#include "ekgw/modular.hpp"

namespace ekgw {

enum class ThetaRepresentation { q_product, weierstrass_exp_sum };

// theta(z) = sin(pi z)/pi * prod_n (1 - q^n u)(1 - q^n/u)/(1 - q^n)^2, u = e^{2 pi i z},
// normalized so that theta'(0) = 1 at every truncation.
struct ThetaEvaluator {
    ModularPoint m;
    int product_truncation = 0;  // 0: run until the factors are 1 to double precision
    ThetaRepresentation representation = ThetaRepresentation::q_product;

    cplx operator()(cplx z) const;
};

cplx theta(cplx z, const ModularPoint& m, bool hat = false);
// z exp(-sum_k 2 G_2k z^2k / 2k); valid for |z| below the shortest lattice vector.
cplx theta_weierstrass(cplx z, const ModularPoint& m);

// Taylor jet of w -> theta(z + w).  At z = 0 the constant term is exactly zero.
Jet theta_jet(cplx z, const ModularPoint& m, int order);
// Taylor jet of w -> ln theta(z + w).
Jet log_theta_jet(cplx z, const ModularPoint& m, int order);

// d^k/dz^k ln theta(z) for k = 1..K in slots 1..K (slot 0 unused), from closed forms of the
// derivatives of ln(1 - y) in terms of rational polylogarithms.
std::vector<cplx> log_theta_derivatives(cplx z, const ModularPoint& m, int K);

// Z = (ln theta)'; with hat, Z + A(z).
cplx Z(cplx z, const ModularPoint& m, bool hat = false);
cplx weierstrass_p(cplx z, const ModularPoint& m);
cplx weierstrass_zeta(cplx z, const ModularPoint& m);

inline constexpr double singular_threshold = 1e-6;
void require_off_lattice(cplx z, const ModularPoint& m, const char* what);

}  // namespace ekgw
