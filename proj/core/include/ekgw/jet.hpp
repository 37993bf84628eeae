#pragma once

#include <vector>

#include "ekgw/types.hpp"

namespace ekgw {

// Truncated Laurent series sum_{e=low}^{order} c_e w^e.
class Jet {
public:
    Jet() = default;
    Jet(int low, std::vector<cplx> coeffs);

    static Jet constant(cplx c, int order);
    static Jet variable(int order);  // the jet of w itself
    static Jet monomial(cplx c, int exponent, int order);
    // Taylor jet of exp(a + b w).
    static Jet exp_linear(cplx a, cplx b, int order);

    int low() const { return low_; }
    int order() const { return low_ + static_cast<int>(c_.size()) - 1; }
    bool empty() const { return c_.empty(); }
    cplx operator[](int e) const;
    const std::vector<cplx>& coeffs() const { return c_; }

    Jet truncated(int order) const;
    // Drop leading coefficients with |c| <= tol.
    Jet normalized(double tol = 0.0) const;

    Jet operator-() const;
    Jet& operator*=(cplx s);
    friend Jet operator+(const Jet& a, const Jet& b);
    friend Jet operator-(const Jet& a, const Jet& b);
    friend Jet operator*(const Jet& a, const Jet& b);
    friend Jet operator/(const Jet& a, const Jet& b);
    friend Jet operator*(cplx s, Jet a) { return a *= s; }

    Jet reciprocal() const;
    Jet exp() const;  // requires low() >= 0
    Jet log() const;  // requires low() == 0 and a nonzero constant term
    // this(inner(w)); inner must have zero constant term.
    Jet compose(const Jet& inner) const;

private:
    int low_ = 0;
    std::vector<cplx> c_;
};

}  // namespace ekgw
