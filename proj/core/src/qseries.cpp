#include "ekgw/qseries.hpp"

#include <algorithm>
#include <cstdlib>

#include "ekgw/combinatorics.hpp"

namespace ekgw {

namespace {

void poly_add(LaurentPoly& p, const Exponent& a, const Rational& c) {
    if (c == 0) return;
    auto it = p.find(a);
    if (it == p.end()) {
        p.emplace(a, c);
        return;
    }
    it->second += c;
    if (it->second == 0) p.erase(it);
}

LaurentPoly poly_mul(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exponent e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            poly_add(r, e, ca * cb);
        }
    return r;
}

Exponent block_exponent(unsigned block, int nvars) {
    Exponent e(nvars, 0);
    for (int v = 0; v < nvars; ++v)
        if (block & (1u << v)) e[v] = 2;
    return e;
}

// (1 - U_B)^k
LaurentPoly one_minus_pow(unsigned block, int nvars, int k) {
    LaurentPoly r;
    r[Exponent(nvars, 0)] = 1;
    LaurentPoly f;
    f[Exponent(nvars, 0)] = 1;
    f[block_exponent(block, nvars)] = -1;
    for (int i = 0; i < k; ++i) r = poly_mul(r, f);
    return r;
}

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

// exact division by (1 - U_B); false when not divisible
bool divide_one_minus(const LaurentPoly& p, unsigned block, int nvars, LaurentPoly& q) {
    int r = 0;
    while (!(block & (1u << r))) ++r;
    Exponent beta = block_exponent(block, nvars);
    // class key -> (j -> coefficient) with exponent = key + j beta
    std::map<Exponent, std::map<int, Rational>> classes;
    for (const auto& [a, c] : p) {
        int j = floor_div(a[r], 2);
        Exponent key = a;
        for (int v = 0; v < nvars; ++v) key[v] -= j * beta[v];
        classes[key][j] += c;
    }
    q.clear();
    for (const auto& [key, line] : classes) {
        Rational acc = 0;
        int jmax = line.rbegin()->first;
        for (int j = line.begin()->first; j <= jmax; ++j) {
            auto it = line.find(j);
            if (it != line.end()) acc += it->second;
            if (j == jmax) {
                if (acc != 0) return false;
                break;
            }
            Exponent e = key;
            for (int v = 0; v < nvars; ++v) e[v] += j * beta[v];
            poly_add(q, e, acc);
        }
    }
    return true;
}

std::string var_monomial(unsigned block, int nvars) {
    std::string s;
    for (int v = 0; v < nvars; ++v)
        if (block & (1u << v)) s += (s.empty() ? "u" : "*u") + std::to_string(v + 1);
    return s;
}

Rational rational_factorial(int k) {
    Rational f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

}  // namespace

QSeries::QSeries(int nvars, int q_order, int scale) : nvars_(nvars), q_order_(q_order), scale_(scale) {
    if (nvars < 0 || nvars > 8) throw DomainError("QSeries supports 0..8 variables");
    if (q_order < 0 || q_order > 40) throw DomainError("QSeries q_order must lie in 0..40");
}

QSeries QSeries::constant(int nvars, int q_order, const Rational& c, int scale) {
    return monomial(nvars, q_order, 0, Exponent(nvars, 0), c, scale);
}

QSeries QSeries::monomial(int nvars, int q_order, int q2, const Exponent& u2, const Rational& c, int scale) {
    QSeries s(nvars, q_order, scale);
    if (int(u2.size()) != nvars) throw DomainError("exponent vector has the wrong length");
    s.add_term(q2, u2, c);
    return s;
}

void QSeries::add_term(int q2, const Exponent& u2, const Rational& c) {
    if (q2 > 2 * q_order_ || c == 0) return;
    auto& p = coeffs_[q2];
    poly_add(p, u2, c);
    if (p.empty()) coeffs_.erase(q2);
}

void QSeries::raise_denominator(const std::map<unsigned, int>& target) {
    LaurentPoly f;
    f[Exponent(nvars_, 0)] = 1;
    for (auto [b, k] : target) {
        int have = den_.count(b) ? den_.at(b) : 0;
        if (k > have) f = poly_mul(f, one_minus_pow(b, nvars_, k - have));
    }
    if (f.size() > 1)
        for (auto& [e, p] : coeffs_) p = poly_mul(p, f);
    for (auto [b, k] : target) den_[b] = std::max(den_[b], k);
}

QSeries& QSeries::operator+=(const QSeries& o) {
    if (o.nvars_ != nvars_) throw DomainError("adding series in different variables");
    if (o.is_zero()) return *this;
    if (is_zero()) {
        int order = std::min(q_order_, o.q_order_);
        *this = o;
        q_order_ = order;
        return *this;
    }
    if (o.scale_ != scale_) throw DomainError("adding series of different weight");
    q_order_ = std::min(q_order_, o.q_order_);
    QSeries b = o;
    std::map<unsigned, int> target = den_;
    for (auto [m, k] : b.den_) target[m] = std::max(target[m], k);
    raise_denominator(target);
    b.raise_denominator(target);
    for (const auto& [e, p] : b.coeffs_)
        for (const auto& [a, c] : p) add_term(e, a, c);
    for (auto it = coeffs_.begin(); it != coeffs_.end();)
        it = it->first > 2 * q_order_ ? coeffs_.erase(it) : std::next(it);
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += Rational(-1) * o; }

QSeries operator*(const Rational& c, QSeries a) {
    if (c == 0) {
        a.coeffs_.clear();
        return a;
    }
    for (auto& [e, p] : a.coeffs_)
        for (auto& [x, v] : p) v *= c;
    return a;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    if (a.nvars_ != b.nvars_) throw DomainError("multiplying series in different variables");
    QSeries r(a.nvars_, std::min(a.q_order_, b.q_order_), a.scale_ + b.scale_);
    r.den_ = a.den_;
    for (auto [m, k] : b.den_) r.den_[m] += k;
    for (const auto& [ea, pa] : a.coeffs_)
        for (const auto& [eb, pb] : b.coeffs_) {
            if (ea + eb > 2 * r.q_order_) continue;
            for (const auto& [x, c] : poly_mul(pa, pb)) r.add_term(ea + eb, x, c);
        }
    return r;
}

QSeries& QSeries::reduce() {
    for (auto& [b, k] : den_) {
        while (k > 0) {
            std::map<int, LaurentPoly> next;
            bool ok = true;
            for (const auto& [e, p] : coeffs_) {
                LaurentPoly q;
                if (!divide_one_minus(p, b, nvars_, q)) {
                    ok = false;
                    break;
                }
                next[e] = std::move(q);
            }
            if (!ok) break;
            coeffs_ = std::move(next);
            --k;
        }
    }
    for (auto it = den_.begin(); it != den_.end();) it = it->second == 0 ? den_.erase(it) : std::next(it);
    return *this;
}

QSeries QSeries::reciprocal() const {
    if (is_zero()) throw DomainError("reciprocal of the zero series");
    int e0 = coeffs_.begin()->first;
    LaurentPoly a0 = coeffs_.begin()->second;
    // peel (1 - U_B) factors off the leading coefficient
    std::vector<unsigned> candidates;
    for (int v = 0; v < nvars_; ++v) candidates.push_back(1u << v);
    for (auto [b, k] : den_)
        if (std::find(candidates.begin(), candidates.end(), b) == candidates.end()) candidates.push_back(b);
    std::map<unsigned, int> F;
    for (unsigned b : candidates) {
        LaurentPoly q;
        while (a0.size() > 1 && divide_one_minus(a0, b, nvars_, q)) {
            a0 = q;
            ++F[b];
        }
    }
    if (a0.size() != 1) throw DomainError("leading q-coefficient is not invertible in the series ring");
    Exponent a = a0.begin()->first;
    Rational c = a0.begin()->second;
    Exponent neg_a(nvars_);
    for (int v = 0; v < nvars_; ++v) neg_a[v] = -a[v];

    // X = (S_numerator - leading term) / (c u^a q^{e0})
    QSeries X(nvars_, q_order_);
    for (const auto& [e, p] : coeffs_) {
        if (e == e0) continue;
        for (const auto& [x, v] : p) {
            Exponent y(nvars_);
            for (int i = 0; i < nvars_; ++i) y[i] = x[i] - a[i];
            X.add_term(e - e0, y, v / c);
        }
    }
    X.q_order_ = q_order_ + (e0 + 1) / 2;
    LaurentPoly Fpoly;
    Fpoly[Exponent(nvars_, 0)] = 1;
    for (auto [b, k] : F) Fpoly = poly_mul(Fpoly, one_minus_pow(b, nvars_, k));
    QSeries Fs(nvars_, X.q_order_);
    for (const auto& [x, v] : Fpoly) Fs.add_term(0, x, v);

    int min_step = X.is_zero() ? 1 : X.coeffs_.begin()->first;
    int J = X.is_zero() ? 0 : std::max(0, (2 * X.q_order_) / std::max(1, min_step));
    // h_0 = 1, h_{i+1} = F^{i+1} - X h_i, so h_J = sum_j (-X)^j F^{J-j}
    QSeries h = QSeries::constant(nvars_, X.q_order_, 1);
    QSeries Fp = QSeries::constant(nvars_, X.q_order_, 1);
    for (int i = 0; i < J; ++i) {
        Fp = Fp * Fs;
        h = Fp - X * h;
    }
    // times the old denominator, q^{-e0} u^{-a} / c
    LaurentPoly D;
    D[Exponent(nvars_, 0)] = 1;
    for (auto [b, k] : den_) D = poly_mul(D, one_minus_pow(b, nvars_, k));
    QSeries r(nvars_, q_order_, -scale_);
    for (const auto& [e, p] : h.coeffs_)
        for (const auto& [x, v] : poly_mul(p, D)) {
            Exponent y(nvars_);
            for (int i = 0; i < nvars_; ++i) y[i] = x[i] + neg_a[i];
            r.add_term(e - e0, y, v / c);
        }
    for (auto [b, k] : F) r.den_[b] = k * (J + 1);
    r.reduce();
    return r;
}

QSeries QSeries::derivative(int v) const {
    if (v < 0 || v >= nvars_) throw DomainError("derivative variable out of range");
    QSeries r(nvars_, q_order_, scale_ + 1);
    std::vector<unsigned> aff;
    for (auto [b, k] : den_)
        if (k > 0 && (b & (1u << v))) aff.push_back(b);
    LaurentPoly Fall;
    Fall[Exponent(nvars_, 0)] = 1;
    for (unsigned b : aff) Fall = poly_mul(Fall, one_minus_pow(b, nvars_, 1));
    for (const auto& [e, p] : coeffs_) {
        LaurentPoly dp;
        for (const auto& [x, c] : p) poly_add(dp, x, c * Rational(x[v], 2));
        LaurentPoly total = poly_mul(dp, Fall);
        for (unsigned b : aff) {
            LaurentPoly t = p;
            LaurentPoly ub;
            ub[block_exponent(b, nvars_)] = Rational(den_.at(b));
            t = poly_mul(t, ub);
            for (unsigned b2 : aff)
                if (b2 != b) t = poly_mul(t, one_minus_pow(b2, nvars_, 1));
            for (const auto& [x, c] : t) poly_add(total, x, c);
        }
        for (const auto& [x, c] : total) r.add_term(e, x, c);
    }
    r.den_ = den_;
    for (unsigned b : aff) r.den_[b] += 1;
    r.reduce();
    return r;
}

QSeries QSeries::substitute_block(unsigned block, int nvars) const {
    if (nvars_ != 1) throw DomainError("block substitution needs a single-variable series");
    if (block == 0 || block >= (1u << nvars)) throw DomainError("block outside the variable range");
    QSeries r(nvars, q_order_, scale_);
    for (const auto& [e, p] : coeffs_)
        for (const auto& [x, c] : p) {
            Exponent y(nvars, 0);
            for (int v = 0; v < nvars; ++v)
                if (block & (1u << v)) y[v] = x[0];
            r.add_term(e, y, c);
        }
    for (auto [b, k] : den_)
        if (k > 0) r.den_[b == 1u ? block : b] += k;
    return r;
}

cplx QSeries::evaluate(cplx tau, const std::vector<cplx>& z) const {
    if (int(z.size()) != nvars_) throw DomainError("need one value per series variable");
    Neumaier s;
    for (const auto& [e, p] : coeffs_) {
        cplx qe = std::exp(I * pi * double(e) * tau);
        for (const auto& [x, c] : p) {
            cplx ph = 0.0;
            for (int v = 0; v < nvars_; ++v) ph += double(x[v]) * z[v];
            s.add(qe * c.convert_to<double>() * std::exp(I * pi * ph));
        }
    }
    cplx val = s.value();
    for (auto [b, k] : den_) {
        cplx sz = 0.0;
        for (int v = 0; v < nvars_; ++v)
            if (b & (1u << v)) sz += z[v];
        cplx f = 1.0 - std::exp(two_pi_i * sz);
        if (std::abs(f) < 1e-14) throw SingularityError("series denominator vanishes at the evaluation point");
        val /= std::pow(f, k);
    }
    return val * std::pow(two_pi_i, scale_);
}

std::vector<QSeries::Row> QSeries::rows() const {
    std::vector<Row> out;
    for (const auto& [e, p] : coeffs_)
        for (const auto& [x, c] : p)
            out.push_back({e, x, boost::multiprecision::numerator(c).str(), boost::multiprecision::denominator(c).str()});
    return out;
}

std::string QSeries::denominator_string() const {
    std::string s;
    for (auto [b, k] : den_) {
        if (k == 0) continue;
        if (!s.empty()) s += "*";
        s += "(1-" + var_monomial(b, nvars_) + ")";
        if (k > 1) s += "^" + std::to_string(k);
    }
    return s.empty() ? "1" : s;
}

std::vector<Rational> bernoulli_numbers(int n) {
    std::vector<Rational> B(n + 1);
    B[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Rational s = 0;
        Rational binom = 1;  // C(m+1, k)
        for (int k = 0; k < m; ++k) {
            s += binom * B[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        B[m] = -s / (m + 1);
    }
    return B;
}

namespace {

QSeries theta_series(int order) {
    QSeries t = QSeries::monomial(1, order, 0, {1}, 1, -1) - QSeries::monomial(1, order, 0, {-1}, 1, -1);
    for (int n = 1; n <= order; ++n) {
        QSeries f = QSeries::constant(1, order, 1) - QSeries::monomial(1, order, 2 * n, {2}, 1);
        QSeries g = QSeries::constant(1, order, 1) - QSeries::monomial(1, order, 2 * n, {-2}, 1);
        QSeries geo = QSeries::constant(1, order, 1);
        for (int j = 1; n * j <= order; ++j) geo += QSeries::monomial(1, order, 2 * n * j, {0}, 1);
        t = t * f * g * geo * geo;
    }
    return t;
}

// G_k = (1/2) sum' lambda^{-k} = (2 pi i)^k (-B_k / (2 k!) + 1/(k-1)! sum sigma_{k-1}(n) q^n)
QSeries eisenstein_series(int k, int order, int nvars) {
    if (k < 2 || k % 2) throw DomainError("G2k needs an even weight >= 2");
    Exponent zero(nvars, 0);
    auto B = bernoulli_numbers(k);
    QSeries g = QSeries::monomial(nvars, order, 0, zero, -B[k] / (2 * rational_factorial(k)), k);
    Rational c = Rational(1) / rational_factorial(k - 1);
    for (int n = 1; n <= order; ++n) {
        boost::multiprecision::cpp_int sigma = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) sigma += boost::multiprecision::pow(boost::multiprecision::cpp_int(d), unsigned(k - 1));
        g += QSeries::monomial(nvars, order, 2 * n, zero, c * Rational(sigma), k);
    }
    return g;
}

std::vector<QSeries> ek_series_list(int mmax, int order) {
    QSeries th = theta_series(order);
    QSeries Zs = th.derivative(0) * th.reciprocal();
    Zs.reduce();
    // E*_k = d^{k-1} Z + (k-1)! 2 G_k
    std::vector<QSeries> E{QSeries::constant(1, order, 1), Zs};
    QSeries d = Zs;
    for (int k = 2; k <= mmax; ++k) {
        d = d.derivative(0);
        QSeries Ek = d;
        if (k % 2 == 0) Ek += Rational(2) * rational_factorial(k - 1) * eisenstein_series(k, order, 1);
        E.push_back(Ek.reduce());
    }
    // B_{n+1} = sum_k C(n, k) B_{n-k} E*_{k+1}; e_m = B_m / m!
    std::vector<QSeries> Bell{QSeries::constant(1, order, 1)};
    for (int n = 0; n < mmax; ++n) {
        QSeries s(1, order);
        Rational binom = 1;
        for (int k = 0; k <= n; ++k) {
            s += binom * (Bell[n - k] * E[k + 1]);
            binom = binom * (n - k) / (k + 1);
        }
        Bell.push_back(s.reduce());
    }
    std::vector<QSeries> e;
    for (int m = 0; m <= mmax; ++m) e.push_back((Rational(1) / rational_factorial(m)) * Bell[m]);
    return e;
}

}  // namespace

QSeries qexpand(QTarget target, const QExpandParams& p) {
    if (p.q_order < 0 || p.q_order > 20) throw DomainError("q_order must lie in 0..20");
    switch (target) {
        case QTarget::theta: return theta_series(p.q_order);
        case QTarget::Z: {
            QSeries th = theta_series(p.q_order);
            return (th.derivative(0) * th.reciprocal()).reduce();
        }
        case QTarget::G2k: return eisenstein_series(p.k, p.q_order, 0);
        case QTarget::e_m: {
            if (p.m < 0 || p.m > 12) throw DomainError("e_m expansion needs 0 <= m <= 12");
            return ek_series_list(p.m, p.q_order)[p.m];
        }
        case QTarget::T_n: {
            if (p.n < 1 || p.n > 3) throw DomainError("T_n expansion needs 1 <= n <= 3");
            auto e = ek_series_list(p.n, p.q_order);
            QSeries total(p.n, p.q_order);
            for (int j = 1; j <= p.n; ++j) {
                std::vector<int> rest;
                for (int i = 1; i <= p.n; ++i)
                    if (i != j) rest.push_back(i);
                for (const auto& part : enumerate_partitions(rest)) {
                    QSeries term = QSeries::constant(p.n, p.q_order, 1);
                    for (const auto& b : part.blocks) {
                        unsigned mask = 0;
                        for (int i : b) mask |= 1u << (i - 1);
                        term = term * (rational_factorial(int(b.size()) - 1) *
                                       e[b.size()].substitute_block(mask, p.n));
                    }
                    total += term;
                }
            }
            return total.reduce();
        }
    }
    return QSeries(0, 0);
}

}  // namespace ekgw
