#pragma once

#include <functional>
#include <vector>

#include "ekgw/types.hpp"

namespace ekgw {

class ModularPoint;

using Fn1 = std::function<cplx(cplx)>;

// Straight periodic contour z(t) = base + t * direction, t in [0, 1).
struct ContourSpec {
    cplx base = 0.0;
    cplx direction = 1.0;
    int node_count = 512;
    double offset_height = 0.0;  // informational: base = (1 + offset_height) tau for A-cycles
};

// The A-cycle from (1 + eps) tau to (1 + eps) tau + 1.
ContourSpec a_cycle(const ModularPoint& m, double eps, int node_count = 512);

cplx contour_integrate(const Fn1& f, const ContourSpec& c);

struct ResidueOptions {
    int node_count = 64;
    double tolerance = 1e-6;
    int levels = 3;  // radius, radius/2, radius/4, ...
};

// (1/2 pi i) times the circle integral, Richardson-extrapolated in r^2 over halving radii.
cplx circle_residue(const Fn1& f, cplx center, double radius, const ResidueOptions& opt = {});
// Same integral at a single radius, no extrapolation.
cplx circle_integral(const Fn1& f, cplx center, double radius, int node_count);

struct ExcisionSpec {
    int grid_resolution = 400;
    std::vector<double> excision_radii{0.08, 0.04, 0.02};
    int extrapolation_order = 2;
    double tolerance = 1e-4;
    int angular_nodes = 96;  // trapezoid nodes around each pole; radial rule is 30-point Gauss
};

// Integral of f against the unit-mass volume form over the fundamental parallelogram
// {center + x + y tau : |x|, |y| <= 1/2}; f may have simple poles at the listed points
// (taken modulo the lattice).
cplx excised_integral(const Fn1& f, const ModularPoint& m, const std::vector<cplx>& poles,
                      const ExcisionSpec& e = {}, cplx center = 0.0);

// (d/dx + i d/dy) / 2 by central differences with one Richardson step.
cplx wirtinger_dbar(const Fn1& f, cplx z, double h = 1e-4);
cplx wirtinger_d(const Fn1& f, cplx z, double h = 1e-4);

// Richardson table on samples taken at h, h/2, h/4, ... for an error expansion in
// powers h^(p), h^(2p), ...; returns the successive diagonal extrapolants.
std::vector<cplx> richardson(const std::vector<cplx>& samples, double ratio_pow);

}  // namespace ekgw
