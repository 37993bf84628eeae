#pragma once

#include <map>
#include <tuple>
#include <mutex>
#include <utility>
#include <vector>

#include "ekgw/theta.hpp"

namespace ekgw {

// theta(z + c) / (theta(z) theta(c)), times e^{c A(z)} with hat.
cplx kronecker_S(cplx c, cplx z, const ModularPoint& m, bool hat = false);

enum class EKVariant { raw, star, star_hat };
cplx ek_series(int m_index, cplx z, const ModularPoint& m, EKVariant variant);

enum class EKRoute { jet_extraction, bell_polynomial, binomial_completion };

// e_0..e_max (or the hatted versions) by the chosen route.
std::vector<cplx> ek_coeffs(cplx z, const ModularPoint& m, bool hat, int max_m,
                            EKRoute route = EKRoute::bell_polynomial);
cplx ek_coeff(int m_index, cplx z, const ModularPoint& m, bool hat,
              EKRoute route = EKRoute::bell_polynomial);
// All three routes; throws ConsistencyError when they disagree by more than tol at a
// well-conditioned point.
std::vector<cplx> ek_coeffs_checked(cplx z, const ModularPoint& m, bool hat, int max_m, double tol = 1e-6);

bool well_conditioned(cplx z, const ModularPoint& m, double threshold = 1e-3);

class EKCoefficients {
public:
    EKCoefficients(ModularPoint m, int max_m, EKRoute route = EKRoute::bell_polynomial)
        : m_(m), max_m_(max_m), route_(route) {}

    std::vector<cplx> get(cplx z, bool hat) const;
    const ModularPoint& modular() const { return m_; }
    int max_m() const { return max_m_; }

private:
    ModularPoint m_;
    int max_m_;
    EKRoute route_;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<double, double, bool>, std::vector<cplx>> cache_;
};

// S_a(x) S_b(y) - S_a(x - y) S_{a+b}(y) - S_{a+b}(x) S_b(y - x)
cplx fay_residual(cplx a, cplx b, cplx x, cplx y, const ModularPoint& m, bool hat = false);

enum class QuadraticForm { iterated, simplified };
// LHS - RHS of the binomial-sum expression of e_i(x) e_j(y) in hatted coefficients.
cplx quadratic_relation_residual(int i, int j, cplx x, cplx y, const ModularPoint& m,
                                 QuadraticForm form = QuadraticForm::iterated);
// e_1(x)e_m(y) - e_1(x-y)e_m(y) - c e_{m+1}(y) - sum_{k+l=1+m} e_k(x)e_l(y-x), with c the
// coefficient of e_{m+1}(y) (the iterated form gives c = m).
cplx quadratic_special_residual(int m_index, cplx x, cplx y, const ModularPoint& m, double c);

enum class PrimitiveForm { iterated_sum, coefficient_display };
// Y prod_i e_{m_i}(z + c_i) minus the finite-difference dbar of its closed-form primitive.
cplx dbar_primitive_check(const std::vector<int>& ms, const std::vector<cplx>& offsets, cplx z,
                          const ModularPoint& m, PrimitiveForm form = PrimitiveForm::iterated_sum,
                          double h = 1e-4);

// d/dz e_m - sum_{a+b=m, b>=1} e_a (E*_{b+1} - b! 2 Ghat_{b+1}) / b!, hatted, by finite differences.
cplx dz_ek_residual(int m_index, cplx z, const ModularPoint& m, double h = 1e-4);

}  // namespace ekgw
