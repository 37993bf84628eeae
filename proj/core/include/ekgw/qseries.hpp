#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ekgw/types.hpp"

namespace ekgw {

using Rational = boost::multiprecision::cpp_rational;
using Exponent = std::vector<int>;  // doubled exponents of u_1..u_n
using LaurentPoly = std::map<Exponent, Rational>;

// (2 pi i)^scale * sum_e q^{e/2} P_e(u^{1/2}) / prod_B (1 - U_B)^{d_B}, where e is the doubled
// q-exponent, U_B = prod_{v in B} u_v and B runs over variable subsets (bitmask).
// Products are truncated at q^{q_order}.
class QSeries {
public:
    QSeries(int nvars, int q_order, int scale = 0);
    static QSeries constant(int nvars, int q_order, const Rational& c, int scale = 0);
    static QSeries monomial(int nvars, int q_order, int q2, const Exponent& u2, const Rational& c, int scale = 0);

    int nvars() const { return nvars_; }
    int q_order() const { return q_order_; }
    int scale() const { return scale_; }
    const std::map<unsigned, int>& denominator() const { return den_; }
    const std::map<int, LaurentPoly>& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const Rational& c, QSeries a);

    // 1 / this; the lowest q-coefficient must be c u^a prod (1 - u_v)^k
    QSeries reciprocal() const;
    // d/dz_v with u_v = e^{2 pi i z_v}; raises the scale by one
    QSeries derivative(int v) const;
    // single-variable series with u_1 replaced by prod_{v in block} u_v in an nvars-variable ring
    QSeries substitute_block(unsigned block, int nvars) const;
    // cancel common (1 - U_B) factors between numerator and denominator
    QSeries& reduce();

    cplx evaluate(cplx tau, const std::vector<cplx>& z) const;

    struct Row {
        int q_exponent_doubled;
        Exponent u_exponents_doubled;
        std::string numerator;
        std::string denominator;
    };
    std::vector<Row> rows() const;
    std::string denominator_string() const;

private:
    int nvars_;
    int q_order_;
    int scale_;
    std::map<unsigned, int> den_;
    std::map<int, LaurentPoly> coeffs_;

    void add_term(int q2, const Exponent& u2, const Rational& c);
    void raise_denominator(const std::map<unsigned, int>& target);
};

enum class QTarget { theta, Z, G2k, e_m, T_n };

struct QExpandParams {
    int q_order = 10;
    int k = 4;  // weight for G2k
    int m = 1;  // index for e_m
    int n = 2;  // number of points for T_n
};

QSeries qexpand(QTarget target, const QExpandParams& p);

// Bernoulli numbers B_0..B_n (B_1 = -1/2).
std::vector<Rational> bernoulli_numbers(int n);

}  // namespace ekgw
