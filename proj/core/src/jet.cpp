#include "ekgw/jet.hpp"

#include <algorithm>
#include <cmath>

namespace ekgw {

Jet::Jet(int low, std::vector<cplx> coeffs) : low_(low), c_(std::move(coeffs)) {}

Jet Jet::constant(cplx c, int order) {
    if (order < 0) return Jet(0, {});
    std::vector<cplx> v(order + 1, 0.0);
    v[0] = c;
    return Jet(0, std::move(v));
}

Jet Jet::variable(int order) { return monomial(1.0, 1, order); }

Jet Jet::monomial(cplx c, int exponent, int order) {
    if (order < exponent) return Jet(exponent, {});
    std::vector<cplx> v(order - exponent + 1, 0.0);
    v[0] = c;
    return Jet(exponent, std::move(v));
}

Jet Jet::exp_linear(cplx a, cplx b, int order) {
    std::vector<cplx> v(std::max(order + 1, 0));
    cplx t = std::exp(a);
    for (int k = 0; k <= order; ++k) {
        v[k] = t;
        t *= b / double(k + 1);
    }
    return Jet(0, std::move(v));
}

cplx Jet::operator[](int e) const {
    int i = e - low_;
    if (i < 0 || i >= static_cast<int>(c_.size())) return 0.0;
    return c_[i];
}

Jet Jet::truncated(int order) const {
    if (order >= this->order()) return *this;
    int n = std::max(order - low_ + 1, 0);
    return Jet(low_, std::vector<cplx>(c_.begin(), c_.begin() + n));
}

Jet Jet::normalized(double tol) const {
    std::size_t i = 0;
    while (i < c_.size() && std::abs(c_[i]) <= tol) ++i;
    return Jet(low_ + static_cast<int>(i), std::vector<cplx>(c_.begin() + i, c_.end()));
}

Jet Jet::operator-() const {
    Jet r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Jet& Jet::operator*=(cplx s) {
    for (auto& x : c_) x *= s;
    return *this;
}

Jet operator+(const Jet& a, const Jet& b) {
    int lo = std::min(a.low_, b.low_);
    int hi = std::min(a.order(), b.order());
    std::vector<cplx> v(std::max(hi - lo + 1, 0));
    for (int e = lo; e <= hi; ++e) v[e - lo] = a[e] + b[e];
    return Jet(lo, std::move(v));
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

Jet operator*(const Jet& a, const Jet& b) {
    int lo = a.low_ + b.low_;
    int len = static_cast<int>(std::min(a.c_.size(), b.c_.size()));
    std::vector<cplx> v(len, 0.0);
    for (int i = 0; i < len; ++i)
        for (int j = 0; i + j < len; ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Jet(lo, std::move(v));
}

Jet Jet::reciprocal() const {
    Jet b = normalized();
    if (b.c_.empty()) throw DomainError("jet reciprocal of zero");
    std::size_t len = b.c_.size();
    std::vector<cplx> r(len, 0.0);
    cplx inv = 1.0 / b.c_[0];
    r[0] = inv;
    for (std::size_t k = 1; k < len; ++k) {
        cplx s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += b.c_[j] * r[k - j];
        r[k] = -s * inv;
    }
    return Jet(-b.low_, std::move(r));
}

Jet operator/(const Jet& a, const Jet& b) { return a * b.reciprocal(); }

Jet Jet::exp() const {
    if (low_ < 0) throw DomainError("jet exp needs a Taylor jet");
    int n = order();
    if (n < 0) return Jet(0, {});
    std::vector<cplx> f(n + 1, 0.0);
    for (int e = 0; e <= n; ++e) f[e] = (*this)[e];
    // g' = f' g with g_0 = exp(f_0)
    std::vector<cplx> g(n + 1, 0.0);
    g[0] = std::exp(f[0]);
    for (int k = 1; k <= n; ++k) {
        cplx s = 0.0;
        for (int j = 1; j <= k; ++j) s += double(j) * f[j] * g[k - j];
        g[k] = s / double(k);
    }
    return Jet(0, std::move(g));
}

Jet Jet::log() const {
    if (low_ != 0 || c_.empty() || c_[0] == 0.0) throw DomainError("log singularity");
    int n = order();
    std::vector<cplx> l(n + 1, 0.0);
    l[0] = std::log(c_[0]);
    // f l' = f'
    for (int k = 1; k <= n; ++k) {
        cplx s = double(k) * c_[k];
        for (int j = 1; j < k; ++j) s -= double(j) * l[j] * c_[k - j];
        l[k] = s / (double(k) * c_[0]);
    }
    return Jet(0, std::move(l));
}

Jet Jet::compose(const Jet& inner) const {
    if (low_ < 0) throw DomainError("compose needs a Taylor outer jet");
    if (inner.normalized().low() < 1) throw DomainError("compose needs zero constant term");
    int n = std::min(order(), inner.order());
    Jet in = inner.truncated(n);
    Jet r = Jet::constant((*this)[order()], n);
    for (int e = order() - 1; e >= 0; --e) r = r * in + Jet::constant((*this)[e], n);
    return r.truncated(n);
}

}  // namespace ekgw
