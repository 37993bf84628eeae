#pragma once

#include <functional>
#include <vector>

#include "ekgw/modular.hpp"

namespace ekgw {

// f(z) with z[k] the value of z_{k+1}.
using MultiFn = std::function<cplx(const std::vector<cplx>&)>;

// A form c + sum_k coeffs[k] z_{k+1} whose vanishing is a pole of the integrand.
struct PoleForm {
    std::vector<int> coeffs;
    cplx constant = 0.0;
};

// Variable z_{ordering[k]} runs over the segment (1 + offsets[k]) tau + [0, 1];
// offsets strictly decrease along the ordering (ordering[0] is integrated last).
struct IteratedContourPlan {
    std::vector<int> ordering;  // 1-based variable indices
    std::vector<double> offsets;
    int node_count = 64;
};

inline constexpr double default_contour_spacing = 0.1;
inline constexpr double pole_clearance = 1e-4;

IteratedContourPlan make_plan(const std::vector<int>& ordering, int node_count,
                              double spacing = default_contour_spacing);

// Checks every pole form stays at least pole_clearance away from the lattice on the grid.
void check_plan(const IteratedContourPlan& plan, const ModularPoint& m, const std::vector<PoleForm>& poles);

cplx iterated_A_integral(const MultiFn& f, const IteratedContourPlan& plan, const ModularPoint& m,
                         const std::vector<PoleForm>& poles = {});

// Mean over all n! orderings, reduced in lexicographic order of the permutations.
cplx averaged_A_integral(const MultiFn& f, int n, int node_count, const ModularPoint& m,
                         const std::vector<PoleForm>& poles = {}, double spacing = default_contour_spacing,
                         bool allow_n4 = false);

// Values of iterated_A_integral for every ordering (lexicographic).
std::vector<cplx> all_orderings(const MultiFn& f, int n, int node_count, const ModularPoint& m,
                                const std::vector<PoleForm>& poles = {}, double spacing = default_contour_spacing);

// prod_k e_{ms[k]}(t_k - params[k]) integrated over t_1..t_n in every ordering; returns the
// largest pairwise deviation. Holomorphic-limit factors unless hat is set.
double ordering_independence_check(const std::vector<int>& ms, const std::vector<cplx>& params,
                                   const ModularPoint& m, int node_count = 64, bool hat = false,
                                   double spacing = default_contour_spacing);

// A-cycle integral of f over the horizontal segment at height t Im(tau) (0 < t < 1).
cplx A_integral_at_height(const std::function<cplx(cplx)>& f, double t, const ModularPoint& m, int node_count);

}  // namespace ekgw
