#include "ekgw/theta.hpp"

#include <array>
#include <cmath>
#include <string>

namespace ekgw {

namespace {

constexpr double cut = 1e-18;

bool product_done(int n, double qn, double au, int truncation) {
    if (truncation > 0) return n > truncation;
    return qn * std::max(au, 1.0 / au) < cut;
}

// Eulerian numbers A(s, j), s < 32.
const std::array<std::array<double, 32>, 32>& eulerian() {
    static const auto table = [] {
        std::array<std::array<double, 32>, 32> a{};
        a[0][0] = 1.0;
        for (int s = 1; s < 32; ++s)
            for (int j = 0; j < s; ++j)
                a[s][j] = (j + 1) * a[s - 1][j] + (s - j) * (j > 0 ? a[s - 1][j - 1] : 0.0);
        return a;
    }();
    return table;
}

// Accumulate d^k/dz^k ln(1 - y) into d[k], where y = y0 * e^{2 pi i sigma dz} near z and
// one_minus_y = 1 - y0 is supplied separately for accuracy.
void add_log1m(std::vector<cplx>& d, int K, cplx y, cplx one_minus_y, int sigma) {
    if (std::abs(y) < 1e-300) return;
    cplx step = double(sigma) * two_pi_i;
    bool inv = std::abs(y) > 1.0;
    cplx x = inv ? 1.0 / y : y;
    cplx omx = inv ? -one_minus_y / y : one_minus_y;  // 1 - 1/y = -(1 - y)/y
    cplx inv_omx = 1.0 / omx;
    const auto& A = eulerian();
    cplx fac = step;
    cplx pw = inv_omx;  // (1 - x)^{-(s+1)}
    for (int k = 1; k <= K; ++k) {
        int s = k - 1;
        cplx li;
        if (s == 0) {
            li = x * inv_omx;
            if (inv) li = -1.0 - li;
        } else {
            pw *= inv_omx;
            cplx p = 0.0;
            for (int j = s - 1; j >= 0; --j) p = p * x + A[s][j];
            li = x * p * pw;
            // Li_{-s}(y) = -(-1)^s Li_{-s}(1/y)
            if (inv && s % 2 == 0) li = -li;
        }
        d[k] -= fac * li;
        fac *= step;
    }
}

}  // namespace

void require_off_lattice(cplx z, const ModularPoint& m, const char* what) {
    if (m.lattice_distance(z) < singular_threshold)
        throw SingularityError(std::string(what) + ": argument " + format_complex(z) +
                               " lies on the lattice");
}

cplx ThetaEvaluator::operator()(cplx z) const {
    if (representation == ThetaRepresentation::weierstrass_exp_sum) return theta_weierstrass(z, m);
    cplx q = m.q();
    cplx u = std::exp(two_pi_i * z);
    double au = std::abs(u);
    cplx prod = std::sin(pi * z) / pi;
    cplx qn = 1.0;
    for (int n = 1;; ++n) {
        qn *= q;
        if (product_done(n, std::abs(qn), au, product_truncation)) break;
        cplx d = 1.0 - qn;
        prod *= (1.0 - qn * u) * (1.0 - qn / u) / (d * d);
    }
    return prod;
}

cplx theta(cplx z, const ModularPoint& m, bool hat) {
    cplx t = ThetaEvaluator{m}(z);
    if (hat) t *= std::exp(-2.0 * pi * z.imag() * z.imag() / m.im_tau());
    return t;
}

cplx theta_weierstrass(cplx z, const ModularPoint& m) {
    double r = std::abs(z) / m.shortest_vector();
    if (r >= 1.0) throw DomainError("exponential-sum theta needs |z| below the shortest period");
    cplx z2 = z * z, zp = 1.0, s = 0.0;
    for (int k = 1; 2 * k <= ModularPoint::max_cached_weight; ++k) {
        zp *= z2;
        cplx t = m.two_G(2 * k) * zp / double(2 * k);
        s += t;
        if (std::pow(r, 2 * k) < 1e-19) break;
    }
    return z * std::exp(-s);
}

Jet theta_jet(cplx z, const ModularPoint& m, int order) {
    std::vector<cplx> c(order + 1);
    cplx s = std::sin(pi * z), co = std::cos(pi * z);
    cplx cyc[4] = {s, co, -s, -co};
    double f = 1.0 / pi;
    for (int k = 0; k <= order; ++k) {
        c[k] = f * cyc[k % 4];
        f *= pi / double(k + 1);
    }
    Jet j(0, std::move(c));
    cplx q = m.q();
    cplx u = std::exp(two_pi_i * z);
    double au = std::abs(u);
    cplx qn = 1.0;
    for (int n = 1;; ++n) {
        qn *= q;
        if (product_done(n, std::abs(qn), au, 0)) break;
        Jet a = Jet::constant(1.0, order) - Jet::exp_linear(std::log(qn * u), two_pi_i, order);
        Jet b = Jet::constant(1.0, order) - Jet::exp_linear(std::log(qn / u), -two_pi_i, order);
        cplx d = 1.0 - qn;
        j = (1.0 / (d * d)) * (j * a * b);
    }
    return j;
}

Jet log_theta_jet(cplx z, const ModularPoint& m, int order) {
    if (order > 16) throw DomainError("log_theta_jet order must be at most 16");
    if (std::abs(theta(z, m)) < 1e-12) throw SingularityError("log singularity of theta");
    return theta_jet(z, m, order).log();
}

std::vector<cplx> log_theta_derivatives(cplx z, const ModularPoint& m, int K) {
    if (K >= 32) throw DomainError("derivative order too large");
    require_off_lattice(z, m, "log_theta_derivatives");
    std::vector<cplx> d(K + 1, 0.0);
    // ln sin(pi z) = -+ i pi z + ln(1 - u^{+-1}) + const
    int sigma = z.imag() >= 0 ? 1 : -1;
    cplx u = std::exp(double(sigma) * two_pi_i * z);
    cplx one_minus_u = -2.0 * I * double(sigma) * std::exp(double(sigma) * I * pi * z) * std::sin(pi * z);
    d[1] -= double(sigma) * I * pi;
    add_log1m(d, K, u, one_minus_u, sigma);
    cplx q = m.q();
    cplx uz = std::exp(two_pi_i * z);
    double au = std::abs(uz);
    cplx qn = 1.0;
    for (int n = 1;; ++n) {
        qn *= q;
        if (product_done(n, std::abs(qn), au, 0)) break;
        cplx y1 = qn * uz, y2 = qn / uz;
        cplx o1 = 1.0 - y1, o2 = 1.0 - y2;
        if (std::abs(o1) < 0.5) {
            cplx w = double(n) * m.tau() + z;
            o1 = -2.0 * I * std::exp(I * pi * w) * std::sin(pi * w);
        }
        if (std::abs(o2) < 0.5) {
            cplx w = double(n) * m.tau() - z;
            o2 = -2.0 * I * std::exp(I * pi * w) * std::sin(pi * w);
        }
        add_log1m(d, K, y1, o1, 1);
        add_log1m(d, K, y2, o2, -1);
    }
    return d;
}

cplx Z(cplx z, const ModularPoint& m, bool hat) {
    cplx v = log_theta_derivatives(z, m, 1)[1];
    return hat ? v + A_of_z(z, m) : v;
}

cplx weierstrass_p(cplx z, const ModularPoint& m) {
    return -log_theta_derivatives(z, m, 2)[2] - m.two_G(2);
}

cplx weierstrass_zeta(cplx z, const ModularPoint& m) { return Z(z, m) + eta1(m) * z; }

}  // namespace ekgw
