#pragma once

#include <string>
#include <vector>

#include "ekgw/combinatorics.hpp"
#include "ekgw/integrals.hpp"
#include "ekgw/quadrature.hpp"
#include "ekgw/symbolic.hpp"

namespace ekgw {

// w_1..w_n (stored 0-based) at a modular point; construction checks that every subset
// sum of the w's is off the lattice.
struct GWPoint {
    int n;
    std::vector<cplx> w;
    ModularPoint m;

    GWPoint(std::vector<cplx> w, ModularPoint m);
    // 1-based w-values for numeric_eval (slot 0 unused)
    std::vector<cplx> w_slots() const;
};

// theta(sum w)/prod theta(w_i) * prod_{i<j} theta(z_i+w_i-z_j-w_j) theta(z_i-z_j)
//   / (theta(z_i+w_i-z_j) theta(z_i-w_j-z_j))
cplx varpi(const std::vector<cplx>& z, const std::vector<cplx>& w, const ModularPoint& m);

// Bordered determinant with entries Z(w_i + z_i - z_j) (Zhat when hat), border row (0,1,..,1),
// border column (0,-1,..,-1).
cplx varpi_det(const std::vector<cplx>& z, const std::vector<cplx>& w, const ModularPoint& m, bool hat);

// Unbordered determinant of the same entries.
cplx unbordered_det(const std::vector<cplx>& z, const std::vector<cplx>& w, const ModularPoint& m, bool hat);

// Closed forms as expressions in w_i (S holds 1-based indices).
EKExpr That_expr(const std::vector<int>& S, bool hat = true);
EKExpr Ghat_expr(const std::vector<int>& S, bool hat = true);

cplx That_closed(const std::vector<int>& S, const std::vector<cplx>& w, const ModularPoint& m, bool hat = true);
cplx Ghat_closed(const std::vector<int>& S, const std::vector<cplx>& w, const ModularPoint& m, bool hat = true);

// Bell normalization: B_m(Ehat*_1..Ehat*_m)/m - (m-1)! ehat_m(z).
cplx bell_normalization_residual(int m_index, cplx z, const ModularPoint& m);

// Sum over permutations rho of {0..n} of sign(rho) prod_k Z_{k, rho(k)} with the entries as
// hatted e_1 factors; permutations fixing 0 are skipped (the corner entry is 0).
EKExpr varpi_det_expansion(int n, bool bordered = true);
// Regularized integral of the expansion over z_1..z_n by the symbolic engine.
EKExpr That_via_engine(int n);
EKExpr Ghat_via_engine(int n);

// Pole forms of varpi's denominators for the contour planner.
std::vector<PoleForm> varpi_poles(const std::vector<cplx>& w);

struct NumericOptions {
    int node_count = 64;
    double spacing = default_contour_spacing;
};

// Averaged iterated A-cycle integral of varpi (holomorphic limit of That_[n]); n <= 3.
// Requires |Im w_i| < spacing Im(tau) / 2 so the contour heights stay clear of the poles.
cplx That_numeric(const std::vector<cplx>& w, const ModularPoint& m, const NumericOptions& opt = {});

enum class Series { T, G, H };
// Bit 0 of a mask is eps_0, bit k is eps_k. T = 1 + sum_{S nonempty} eps_0 eps_S That_S,
// G = sum_S eps_S Ghat_S, H = (T - 1) + G.
EpsPoly generating_series(const std::vector<cplx>& w, const ModularPoint& m, Series which, bool hat = true);

// Regularized integrals of the principal minors of the bordered matrix for n <= 2 from
// excised 2D quadrature; returns H.
EpsPoly H_by_minor_integration(const std::vector<cplx>& w, const ModularPoint& m, const ExcisionSpec& e = {});

// Drops eps_0 from every monomial that has it.
EpsPoly strip_eps0(const EpsPoly& p);

struct ConvolutionRow {
    std::vector<int> S;
    cplx lhs;          // That_S
    cplx convolution;  // sum over nonempty proper I of That_I Ghat_{S \ I}
    double deviation;
};

struct ConvolutionReport {
    int n;
    bool hat;
    std::vector<ConvolutionRow> rows;
    cplx numeric_full;  // averaged A-cycle integral of varpi_n (holomorphic limit)
    cplx closed_full;   // That_[n] closed form, holomorphic limit
    double numeric_vs_closed;
    double numeric_vs_convolution;
};

ConvolutionReport convolution_report(const std::vector<cplx>& w, const ModularPoint& m, const NumericOptions& opt = {});

// F_n = T_n prod (1 - q^k) / theta(sum w), T_n the holomorphic-limit closed form.
cplx F_pointwise(const std::vector<cplx>& w, const ModularPoint& m);

}  // namespace ekgw
