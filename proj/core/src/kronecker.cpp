#include "ekgw/kronecker.hpp"

#include <cmath>
#include <functional>

#include "ekgw/quadrature.hpp"

namespace ekgw {

namespace {

double binom(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

std::vector<cplx> bell_route(cplx z, const ModularPoint& m, bool hat, int M) {
    std::vector<cplx> e(M + 1, 0.0);
    e[0] = 1.0;
    if (M == 0) return e;
    auto d = log_theta_derivatives(z, m, M);
    std::vector<cplx> x(M + 1, 0.0);  // x[k] = E*_k / (k-1)!
    double f = 1.0;
    for (int k = 1; k <= M; ++k) {
        cplx star = d[k] + f * m.two_G(k);
        if (k == 1 && hat) star += A_of_z(z, m);
        x[k] = star / f;
        f *= k;
    }
    // b_{n+1} = (1/(n+1)) sum_k x_{k+1}/k! b_{n-k}, b_n = B_n / n!
    for (int n = 0; n < M; ++n) {
        cplx s = 0.0;
        for (int k = 0; k <= n; ++k) s += x[k + 1] * e[n - k];
        e[n + 1] = s / double(n + 1);
    }
    return e;
}

std::vector<cplx> jet_route(cplx z, const ModularPoint& m, bool hat, int M) {
    require_off_lattice(z, m, "ek_coeffs");
    Jet num = theta_jet(z, m, M);
    Jet den = theta_jet(0.0, m, M + 1).normalized();
    Jet s = (1.0 / num[0]) * (num / den);
    if (hat) s = s * Jet::exp_linear(0.0, A_of_z(z, m), M);
    std::vector<cplx> e(M + 1);
    for (int k = 0; k <= M; ++k) e[k] = s[k - 1];
    return e;
}

std::vector<cplx> completion_route(cplx z, const ModularPoint& m, bool hat, int M) {
    auto e = jet_route(z, m, false, M);
    if (!hat) return e;
    cplx A = A_of_z(z, m);
    std::vector<cplx> r(M + 1, 0.0);
    for (int n = 0; n <= M; ++n) {
        cplx p = 1.0;
        for (int k = n; k >= 0; --k) {
            r[n] += e[k] * p;
            p *= A / double(n - k + 1);
        }
    }
    return r;
}

}  // namespace

cplx kronecker_S(cplx c, cplx z, const ModularPoint& m, bool hat) {
    require_off_lattice(z, m, "kronecker_S");
    require_off_lattice(c, m, "kronecker_S");
    require_off_lattice(z + c, m, "kronecker_S");
    cplx s = theta(z + c, m) / (theta(z, m) * theta(c, m));
    if (hat) s *= std::exp(c * A_of_z(z, m));
    return s;
}

cplx ek_series(int mi, cplx z, const ModularPoint& m, EKVariant variant) {
    if (mi < 1) throw DomainError("ek_series index must be at least 1");
    auto d = log_theta_derivatives(z, m, mi);
    double f = factorial(mi - 1);
    switch (variant) {
        case EKVariant::raw: return ((mi - 1) % 2 ? -1.0 : 1.0) / f * d[mi];
        case EKVariant::star: return d[mi] + f * m.two_G(mi);
        case EKVariant::star_hat: return d[mi] + f * m.two_G(mi) + (mi == 1 ? A_of_z(z, m) : 0.0);
    }
    return 0.0;
}

std::vector<cplx> ek_coeffs(cplx z, const ModularPoint& m, bool hat, int M, EKRoute route) {
    if (M < 0) throw DomainError("ek_coeffs needs a non-negative order");
    switch (route) {
        case EKRoute::bell_polynomial: return bell_route(z, m, hat, M);
        case EKRoute::jet_extraction: return jet_route(z, m, hat, M);
        case EKRoute::binomial_completion: return completion_route(z, m, hat, M);
    }
    return {};
}

cplx ek_coeff(int mi, cplx z, const ModularPoint& m, bool hat, EKRoute route) {
    if (mi < 0) return 0.0;
    return ek_coeffs(z, m, hat, mi, route)[mi];
}

bool well_conditioned(cplx z, const ModularPoint& m, double threshold) {
    return std::abs(theta(z, m)) > threshold;
}

std::vector<cplx> ek_coeffs_checked(cplx z, const ModularPoint& m, bool hat, int M, double tol) {
    auto a = bell_route(z, m, hat, M);
    if (!well_conditioned(z, m)) return a;
    auto b = jet_route(z, m, hat, M);
    auto c = completion_route(z, m, hat, M);
    for (int k = 0; k <= M; ++k) {
        double scale = 1.0 + std::abs(a[k]);
        if (std::abs(a[k] - b[k]) > tol * scale || std::abs(a[k] - c[k]) > tol * scale)
            throw ConsistencyError("Laurent coefficient routes disagree at m = " + std::to_string(k) +
                                   ", z = " + format_complex(z));
    }
    return a;
}

std::vector<cplx> EKCoefficients::get(cplx z, bool hat) const {
    auto key = std::make_tuple(z.real(), z.imag(), hat);
    {
        std::lock_guard lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    auto v = ek_coeffs(z, m_, hat, max_m_, route_);
    std::lock_guard lock(mu_);
    cache_.emplace(key, v);
    return v;
}

cplx fay_residual(cplx a, cplx b, cplx x, cplx y, const ModularPoint& m, bool hat) {
    auto S = [&](cplx c, cplx z) { return kronecker_S(c, z, m, hat); };
    return S(a, x) * S(b, y) - S(a, x - y) * S(a + b, y) - S(a + b, x) * S(b, y - x);
}

cplx quadratic_relation_residual(int i, int j, cplx x, cplx y, const ModularPoint& m, QuadraticForm form) {
    if (i < 1 || j < 1) throw DomainError("quadratic relation needs i, j >= 1");
    require_off_lattice(x - y, m, "quadratic relation (x - y)");
    int n = i + j;
    auto ex = ek_coeffs(x, m, true, n);
    auto ey = ek_coeffs(y, m, true, n);
    auto exy = ek_coeffs(x - y, m, true, n);
    auto eyx = ek_coeffs(y - x, m, true, n);
    cplx rhs = 0.0;
    if (form == QuadraticForm::iterated) {
        for (int l = 0; l <= i; ++l) {
            double sg = l % 2 ? -1.0 : 1.0;
            for (int a = 0; a <= n; ++a) {
                int b = n - a;
                rhs += sg * (binom(b, j + l) * exy[a] * ey[b] + binom(a, i - l - 1) * ex[a] * eyx[b]);
            }
        }
    } else {
        for (int b = 0; b <= n; ++b) {
            double c = 0.0;
            for (int l = 0; l <= i; ++l) c += (l % 2 ? -1.0 : 1.0) * binom(b, j + l);
            rhs += c * exy[n - b] * ey[b];
        }
        for (int a = 0; a <= n; ++a) {
            double c = 0.0;
            for (int l = 0; l <= i; ++l) c += (l % 2 ? -1.0 : 1.0) * binom(a, i - l - 1);
            rhs += ((n - a) % 2 ? -1.0 : 1.0) * c * exy[n - a] * ex[a];
        }
    }
    return ex[i] * ey[j] - rhs;
}

cplx quadratic_special_residual(int mi, cplx x, cplx y, const ModularPoint& m, double c) {
    if (mi < 1) throw DomainError("special quadratic relation needs m >= 1");
    require_off_lattice(x - y, m, "quadratic relation (x - y)");
    int n = mi + 1;
    auto ex = ek_coeffs(x, m, true, n);
    auto ey = ek_coeffs(y, m, true, n);
    auto exy = ek_coeffs(x - y, m, true, n);
    auto eyx = ek_coeffs(y - x, m, true, n);
    cplx rhs = exy[1] * ey[mi] + c * ey[mi + 1];
    for (int k = 0; k <= n; ++k) rhs += ex[k] * eyx[n - k];
    return ex[1] * ey[mi] - rhs;
}

cplx dbar_primitive_check(const std::vector<int>& ms, const std::vector<cplx>& offsets, cplx z,
                          const ModularPoint& m, PrimitiveForm form, double h) {
    const std::size_t N = ms.size();
    if (N == 0 || offsets.size() != N) throw DomainError("dbar check needs matching orders and offsets");
    for (int v : ms)
        if (v < 1) throw DomainError("dbar check needs orders >= 1");
    int top = 0;
    for (std::size_t i = 0; i + 1 < N; ++i) top += ms[i];
    int need = ms[N - 1] + top + 1;

    auto primitive = [&](cplx w) {
        std::vector<std::vector<cplx>> e(N);
        for (std::size_t i = 0; i < N; ++i) e[i] = ek_coeffs(w + offsets[i], m, true, i + 1 < N ? ms[i] : need);
        cplx total = 0.0;
        std::vector<int> k(N - 1, 0);
        std::function<void(std::size_t)> rec = [&](std::size_t pos) {
            if (pos + 1 == N) {
                int l = 0;
                double multinom = 1.0;
                cplx prod = 1.0;
                for (std::size_t i = 0; i + 1 < N; ++i) {
                    for (int t = 1; t <= k[i]; ++t) multinom *= double(l + t) / t;
                    l += k[i];
                    prod *= e[i][ms[i] - k[i]];
                }
                double w8 = form == PrimitiveForm::iterated_sum ? multinom : 1.0;
                total += (l % 2 ? -1.0 : 1.0) * w8 * prod * e[N - 1][ms[N - 1] + l + 1];
                return;
            }
            for (k[pos] = 0; k[pos] <= ms[pos]; ++k[pos]) rec(pos + 1);
        };
        rec(0);
        return total;
    };
    cplx lhs = m.Y();
    for (std::size_t i = 0; i < N; ++i) lhs *= ek_coeff(ms[i], z + offsets[i], m, true);
    return lhs - wirtinger_dbar(primitive, z, h);
}

cplx dz_ek_residual(int mi, cplx z, const ModularPoint& m, double h) {
    if (mi < 1) throw DomainError("dz relation needs m >= 1");
    auto e = ek_coeffs(z, m, true, mi);
    auto d = log_theta_derivatives(z, m, mi + 1);
    cplx rhs = 0.0;
    double bf = 1.0;
    for (int b = 1; b <= mi; ++b) {
        bf *= b;
        cplx star = d[b + 1] + bf * m.two_G(b + 1);
        cplx two_ghat = m.two_G(b + 1) + (b + 1 == 2 ? m.Y() : 0.0);
        rhs += e[mi - b] * (star - bf * two_ghat) / bf;
    }
    auto f = [&](cplx w) { return ek_coeff(mi, w, m, true); };
    return wirtinger_d(f, z, h) - rhs;
}

}  // namespace ekgw
