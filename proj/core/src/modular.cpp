#include "ekgw/modular.hpp"

#include <cmath>

namespace ekgw {

namespace {

// Bernoulli B_{2p} / (2p)! for p = 1..4.
constexpr double bernoulli_over_factorial[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0,
                                               -1.0 / 1209600.0};

cplx ipow(cplx z, int k) {
    cplx r = 1.0;
    cplx b = z;
    for (int e = k; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        b *= b;
    }
    return r;
}

// q-series for G_k, k even >= 2.
cplx g_qseries(int k, cplx q) {
    double aq = std::abs(q);
    Neumaier s;
    double peak = (k - 1) / std::max(-std::log(aq), 1e-3);
    cplx qn = 1.0;
    for (int n = 1; n < 100000; ++n) {
        qn *= q;
        cplx t = std::pow(double(n), k - 1) * qn / (1.0 - qn);
        s.add(t);
        if (n > peak && std::abs(t) < 1e-19 * std::max(1.0, std::abs(s.value()))) break;
    }
    double fact = 1.0;
    for (int j = 2; j < k; ++j) fact *= j;
    return std::riemann_zeta(double(k)) + ipow(two_pi_i, k) / fact * s.value();
}

}  // namespace

ModularPoint::ModularPoint(cplx tau, int lattice_cutoff) : tau_(tau), cutoff_(lattice_cutoff) {
    if (!(tau.imag() > 0)) throw DomainError("tau must lie in the upper half plane");
    if (lattice_cutoff < 20) throw DomainError("lattice cutoff must be at least 20");
    q_ = std::exp(two_pi_i * tau);
    for (int k = 2; k <= max_cached_weight; k += 2) two_g_[k] = 2.0 * g_qseries(k, q_);
}

cplx ModularPoint::two_G(int k) const {
    if (k < 1) throw DomainError("Eisenstein weight must be positive");
    if (k % 2) return 0.0;
    if (k <= max_cached_weight) return two_g_[k];
    return 2.0 * g_qseries(k, q_);
}

cplx ModularPoint::reduce(cplx z, int* pa, int* pb) const {
    int b0 = static_cast<int>(std::lround(z.imag() / tau_.imag()));
    int a0 = static_cast<int>(std::lround((z - double(b0) * tau_).real()));
    cplx best = z - double(a0) - double(b0) * tau_;
    int ba = a0, bb = b0;
    for (int db = -1; db <= 1; ++db)
        for (int da = -1; da <= 1; ++da) {
            cplx r = z - double(a0 + da) - double(b0 + db) * tau_;
            if (std::abs(r) < std::abs(best)) {
                best = r;
                ba = a0 + da;
                bb = b0 + db;
            }
        }
    if (pa) *pa = ba;
    if (pb) *pb = bb;
    return best;
}

double ModularPoint::lattice_distance(cplx z) const { return std::abs(reduce(z)); }

double ModularPoint::shortest_vector() const {
    double best = 1.0;
    for (int b = 1; b <= 4; ++b) {
        double a0 = std::round(-b * tau_.real());
        for (int da = -1; da <= 1; ++da) best = std::min(best, std::abs(a0 + da + double(b) * tau_));
    }
    return best;
}

cplx lattice_row_sum(cplx c, int k, int cutoff) {
    if (k < 2) throw DomainError("row sums need k >= 2");
    long a0 = -std::lround(c.real());
    cplx cp = c + double(a0);
    bool skip_zero = (c == 0.0);
    Neumaier s;
    for (int j = -cutoff; j <= cutoff; ++j) {
        if (skip_zero && j == 0) continue;
        s.add(1.0 / ipow(double(j) + cp, k));
    }
    // tail: sum_{j > N} g(j), g(x) = (x + c')^{-k} + (c' - x)^{-k}
    double N = cutoff;
    cplx xp = N + cp, xm = cp - N;
    cplx integral = (std::pow(xp, 1 - k) + (k % 2 ? -1.0 : 1.0) * std::pow(-xm, 1 - k)) / double(k - 1);
    cplx gN = 1.0 / ipow(xp, k) + 1.0 / ipow(xm, k);
    cplx tail = integral - 0.5 * gN;
    double rising = k;  // (k)_r for r = 1
    int r = 1;
    for (int p = 1; p <= 4; ++p) {
        // r = 2p - 1
        cplx d = (r % 2 ? -1.0 : 1.0) * rising * std::pow(xp, -k - r) + rising * std::pow(xm, -k - r);
        tail -= bernoulli_over_factorial[p - 1] * d;
        rising *= double(k + r) * double(k + r + 1);
        r += 2;
    }
    s.add(tail);
    return s.value();
}

cplx eisenstein_G(int k, const ModularPoint& m, EisensteinMethod method) {
    if (k < 2) throw DomainError("eisenstein_G needs k >= 2");
    if (k % 2) return 0.0;
    if (method == EisensteinMethod::q_series) return 0.5 * m.two_G(k);
    int C = m.lattice_cutoff();
    Neumaier s;
    for (int b = -C; b <= C; ++b) s.add(lattice_row_sum(double(b) * m.tau(), k, C));
    return 0.5 * s.value();
}

EisensteinValue eisenstein_value(int k, const ModularPoint& m, EisensteinMethod method) {
    return {k, eisenstein_G(k, m, method), method};
}

cplx eisenstein_G_reordered(int k, const ModularPoint& m) {
    if (k < 2) throw DomainError("eisenstein_G needs k >= 2");
    if (k % 2) return 0.0;
    int C = m.lattice_cutoff();
    cplx tau = m.tau();
    Neumaier s;
    for (int a = -C; a <= C; ++a) s.add(lattice_row_sum(double(a) / tau, k, C));
    return 0.5 * s.value() / ipow(tau, k);
}

cplx eisenstein_G_hat(int k, const ModularPoint& m) {
    cplx g = eisenstein_G(k, m);
    return k == 2 ? g + m.Y() / 2.0 : g;
}

cplx eta1(const ModularPoint& m, bool completed) {
    cplx e = m.two_G(2);
    return completed ? e + m.Y() : e;
}

cplx A_of_z(cplx z, const ModularPoint& m) { return m.Y() * (std::conj(z) - z); }

cplx lattice_ek_sum(cplx z, int k, const ModularPoint& m) {
    if (k < 2) throw DomainError("lattice E_k needs k >= 2");
    if (m.lattice_distance(z) < 1e-12) throw SingularityError("lattice E_k at a lattice point");
    int C = m.lattice_cutoff();
    Neumaier s;
    for (int b = -C; b <= C; ++b) s.add(lattice_row_sum(z + double(b) * m.tau(), k, C));
    return s.value();
}

cplx lattice_wp(cplx z, const ModularPoint& m) {
    return lattice_ek_sum(z, 2, m) - 2.0 * eisenstein_G(2, m, EisensteinMethod::lattice_eisenstein_summation);
}

}  // namespace ekgw
