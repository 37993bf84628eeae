#pragma once

#include <array>

#include "ekgw/types.hpp"

namespace ekgw {

// A point tau of the upper half plane with the derived data used everywhere else.
class ModularPoint {
public:
    static constexpr int max_cached_weight = 80;

    explicit ModularPoint(cplx tau, int lattice_cutoff = 200);

    cplx tau() const { return tau_; }
    cplx q() const { return q_; }
    double im_tau() const { return tau_.imag(); }
    double Y() const { return -pi / tau_.imag(); }
    int lattice_cutoff() const { return cutoff_; }

    // 2 G_k from the q-series, cached; zero for odd k.
    cplx two_G(int k) const;

    // Reduce z modulo the lattice: z = r + a + b tau with r closest to the origin.
    cplx reduce(cplx z, int* a = nullptr, int* b = nullptr) const;
    // Distance from z to the nearest lattice point.
    double lattice_distance(cplx z) const;
    double shortest_vector() const;

private:
    cplx tau_;
    cplx q_;
    int cutoff_;
    std::array<cplx, max_cached_weight + 1> two_g_{};
};

enum class EisensteinMethod { lattice_eisenstein_summation, q_series };

struct EisensteinValue {
    int k;
    cplx value;
    EisensteinMethod method;
};

// G_k = (1/2) sum' lambda^{-k}, summing the 1-direction first.
cplx eisenstein_G(int k, const ModularPoint& m,
                  EisensteinMethod method = EisensteinMethod::q_series);
EisensteinValue eisenstein_value(int k, const ModularPoint& m, EisensteinMethod method);

// The same lattice sum with the tau-direction summed first; differs from G_2.
cplx eisenstein_G_reordered(int k, const ModularPoint& m);

// G_k + delta_{k,2} Y / 2.
cplx eisenstein_G_hat(int k, const ModularPoint& m);

cplx eta1(const ModularPoint& m, bool completed = false);

// Y (conj(z) - z)
cplx A_of_z(cplx z, const ModularPoint& m);

// sum_{a in Z} (a + c)^{-k} with the a = 0 term dropped when c is exactly 0;
// a window of +-cutoff around -Re c plus an Euler-Maclaurin tail.
cplx lattice_row_sum(cplx c, int k, int cutoff);

// E_k(z) = sum_lambda (z + lambda)^{-k} with the Eisenstein prescription (k >= 2).
cplx lattice_ek_sum(cplx z, int k, const ModularPoint& m);
// Weierstrass p from the lattice: E_2(z) - 2 G_2.
cplx lattice_wp(cplx z, const ModularPoint& m);

}  // namespace ekgw
