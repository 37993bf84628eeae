#include "ekgw/gw.hpp"

#include <algorithm>
#include <numeric>

#include "ekgw/kronecker.hpp"
#include "ekgw/theta.hpp"

namespace ekgw {

namespace {

double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

std::vector<int> range1(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

std::vector<int> subset_of(unsigned mask, int n) {
    std::vector<int> S;
    for (int k = 1; k <= n; ++k)
        if (mask & (1u << (k - 1))) S.push_back(k);
    return S;
}

EpsPoly::Mask eps_mask(const std::vector<int>& S) {
    EpsPoly::Mask m = 0;
    for (int k : S) m |= EpsPoly::Mask(1) << k;
    return m;
}

// prod over blocks of (|b|-1)! e_{|b|}(sum_{i in b} w_i)
EKMonomial block_product(const SetPartition& p, bool hat) {
    EKMonomial mono{1.0, {}};
    for (const auto& b : p.blocks) {
        LinearForm s;
        for (int i : b) s += LinearForm::wvar(i);
        mono.coefficient *= factorial(int(b.size()) - 1);
        mono.factors.push_back({int(b.size()), s, hat});
    }
    return mono;
}

cplx theta_checked(cplx z, const ModularPoint& m, const std::string& what) {
    if (m.lattice_distance(z) < singular_threshold) throw SingularityError(what + " lands on the lattice");
    return theta(z, m);
}

void require_sizes(const std::vector<cplx>& z, const std::vector<cplx>& w) {
    if (z.size() != w.size() || w.empty()) throw DomainError("need as many z-values as w-values (n >= 1)");
}

cplx det(std::vector<std::vector<cplx>> a) {
    std::size_t n = a.size();
    cplx d = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
        if (a[p][c] == 0.0) return 0.0;
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            cplx f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return d;
}

std::vector<std::vector<cplx>> z_matrix(const std::vector<cplx>& z, const std::vector<cplx>& w, const ModularPoint& m,
                                        bool hat) {
    std::size_t n = w.size();
    std::vector<std::vector<cplx>> a(n, std::vector<cplx>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            cplx x = w[i] + z[i] - z[j];
            if (m.lattice_distance(x) < singular_threshold)
                throw SingularityError("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                       ") lands on the lattice");
            a[i][j] = Z(x, m, hat);
        }
    return a;
}

}  // namespace

GWPoint::GWPoint(std::vector<cplx> w_, ModularPoint m_) : n(int(w_.size())), w(std::move(w_)), m(m_) {
    if (n < 1 || n > 12) throw DomainError("GWPoint needs 1 <= n <= 12");
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        cplx s = 0.0;
        for (int k : subset_of(mask, n)) s += w[k - 1];
        if (m.lattice_distance(s) < singular_threshold) {
            std::string name;
            for (int k : subset_of(mask, n)) name += (name.empty() ? "w" : "+w") + std::to_string(k);
            throw SingularityError("genericity: " + name + " lands on the lattice");
        }
    }
}

std::vector<cplx> GWPoint::w_slots() const {
    std::vector<cplx> v(n + 1, 0.0);
    std::copy(w.begin(), w.end(), v.begin() + 1);
    return v;
}

cplx varpi(const std::vector<cplx>& z, const std::vector<cplx>& w, const ModularPoint& m) {
    require_sizes(z, w);
    std::size_t n = w.size();
    cplx sw = std::accumulate(w.begin(), w.end(), cplx(0.0));
    cplx v = theta(sw, m);
    for (std::size_t i = 0; i < n; ++i) v /= theta_checked(w[i], m, "w" + std::to_string(i + 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            std::string ij = std::to_string(i + 1) + std::to_string(j + 1);
            v *= theta(z[i] + w[i] - z[j] - w[j], m) * theta(z[i] - z[j], m);
            v /= theta_checked(z[i] + w[i] - z[j], m, "z_i+w_i-z_j at ij=" + ij) *
                 theta_checked(z[i] - w[j] - z[j], m, "z_i-w_j-z_j at ij=" + ij);
        }
    return v;
}

cplx varpi_det(const std::vector<cplx>& z, const std::vector<cplx>& w, const ModularPoint& m, bool hat) {
    require_sizes(z, w);
    std::size_t n = w.size();
    auto inner = z_matrix(z, w, m, hat);
    std::vector<std::vector<cplx>> a(n + 1, std::vector<cplx>(n + 1, 0.0));
    for (std::size_t j = 1; j <= n; ++j) {
        a[0][j] = 1.0;
        a[j][0] = -1.0;
        for (std::size_t k = 1; k <= n; ++k) a[j][k] = inner[j - 1][k - 1];
    }
    return det(a);
}

cplx unbordered_det(const std::vector<cplx>& z, const std::vector<cplx>& w, const ModularPoint& m, bool hat) {
    require_sizes(z, w);
    return det(z_matrix(z, w, m, hat));
}

EKExpr That_expr(const std::vector<int>& S, bool hat) {
    EKExpr out;
    if (S.empty()) return EKExpr::constant(1.0);
    for (int j : S) {
        std::vector<int> rest;
        for (int i : S)
            if (i != j) rest.push_back(i);
        for (const auto& p : enumerate_partitions(rest)) out.add(block_product(p, hat));
    }
    return out;
}

EKExpr Ghat_expr(const std::vector<int>& S, bool hat) {
    EKExpr out;
    for (const auto& p : enumerate_partitions(S)) out.add(block_product(p, hat));
    return out;
}

namespace {

std::vector<cplx> slots(const std::vector<cplx>& w) {
    std::vector<cplx> v(w.size() + 1, 0.0);
    std::copy(w.begin(), w.end(), v.begin() + 1);
    return v;
}

void require_indices(const std::vector<int>& S, const std::vector<cplx>& w) {
    for (int k : S)
        if (k < 1 || std::size_t(k) > w.size()) throw DomainError("index set refers to a missing w");
}

}  // namespace

cplx That_closed(const std::vector<int>& S, const std::vector<cplx>& w, const ModularPoint& m, bool hat) {
    require_indices(S, w);
    return numeric_eval(That_expr(S, hat), {}, slots(w), m);
}

cplx Ghat_closed(const std::vector<int>& S, const std::vector<cplx>& w, const ModularPoint& m, bool hat) {
    require_indices(S, w);
    return numeric_eval(Ghat_expr(S, hat), {}, slots(w), m);
}

cplx bell_normalization_residual(int mi, cplx z, const ModularPoint& m) {
    if (mi < 1) throw DomainError("Bell normalization needs m >= 1");
    std::vector<cplx> x;
    for (int k = 1; k <= mi; ++k) x.push_back(ek_series(k, z, m, EKVariant::star_hat));
    cplx B = complete_bell(x, cplx(1.0));
    cplx e = ek_coeffs(z, m, true, mi, EKRoute::jet_extraction)[mi];
    return B / double(mi) - factorial(mi - 1) * e;
}

EKExpr varpi_det_expansion(int n, bool bordered) {
    if (n < 1 || n > 8) throw DomainError("determinant expansion limited to 1 <= n <= 8");
    std::vector<int> ground = range1(n);
    if (bordered) ground.insert(ground.begin(), 0);
    EKExpr out;
    for (const auto& [partition, decomps] : enumerate_permutations_with_partition(ground)) {
        for (const auto& d : decomps) {
            EKMonomial mono{double(d.sign), {}};
            bool zero = false;
            for (const auto& cyc : d.cycles)
                for (std::size_t k = 0; k < cyc.size(); ++k) {
                    int row = cyc[k], col = cyc[(k + 1) % cyc.size()];
                    if (row == 0 && col == 0)
                        zero = true;
                    else if (col == 0)
                        mono.coefficient *= -1.0;
                    else if (row != 0)
                        mono.factors.push_back({1, LinearForm::s(row, col), true});
                }
            if (!zero) out.add(mono);
        }
    }
    return out;
}

EKExpr That_via_engine(int n) { return symbolic_reg_integrate_all(varpi_det_expansion(n, true), n); }

EKExpr Ghat_via_engine(int n) { return symbolic_reg_integrate_all(varpi_det_expansion(n, false), n); }

std::vector<PoleForm> varpi_poles(const std::vector<cplx>& w) {
    std::size_t n = w.size();
    std::vector<PoleForm> out;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            PoleForm p;
            p.coeffs.assign(n, 0);
            p.coeffs[i] = 1;
            p.coeffs[j] = -1;
            p.constant = w[i];
            out.push_back(p);
            p.constant = -w[j];
            out.push_back(p);
        }
    return out;
}

cplx That_numeric(const std::vector<cplx>& w, const ModularPoint& m, const NumericOptions& opt) {
    std::size_t n = w.size();
    if (n < 1 || n > 3) throw DomainError("numeric mode needs 1 <= n <= 3");
    GWPoint point(w, m);
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(w[i].imag()) >= 0.5 * opt.spacing * m.im_tau())
            throw DomainError("numeric mode needs |Im w_" + std::to_string(i + 1) +
                              "| < spacing * Im(tau) / 2 so the contours separate the poles consistently");
    cplx prefactor = theta(std::accumulate(w.begin(), w.end(), cplx(0.0)), m);
    for (cplx wi : w) prefactor /= theta(wi, m);
    MultiFn f = [&](const std::vector<cplx>& z) {
        cplx v = prefactor;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                cplx d = z[i] - z[j];
                v *= theta(d + w[i] - w[j], m) * theta(d, m) / (theta(d + w[i], m) * theta(d - w[j], m));
            }
        return v;
    };
    return averaged_A_integral(f, int(n), opt.node_count, m, varpi_poles(w), opt.spacing);
}

EpsPoly generating_series(const std::vector<cplx>& w, const ModularPoint& m, Series which, bool hat) {
    int n = int(w.size());
    if (n < 1 || n > 12) throw DomainError("generating series needs 1 <= n <= 12");
    GWPoint point(w, m);
    EpsPoly T = EpsPoly::one(), G = EpsPoly::one();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        auto S = subset_of(mask, n);
        if (which != Series::G) T.add(eps_mask(S) | 1u, That_closed(S, w, m, hat));
        if (which != Series::T) G.add(eps_mask(S), Ghat_closed(S, w, m, hat));
    }
    switch (which) {
        case Series::T: return T;
        case Series::G: return G;
        case Series::H: return (T - EpsPoly::one()) + G;
    }
    return {};
}

EpsPoly strip_eps0(const EpsPoly& p) {
    EpsPoly out;
    for (auto [mask, c] : p.terms()) out.add(mask & ~EpsPoly::Mask(1), c);
    return out;
}

EpsPoly H_by_minor_integration(const std::vector<cplx>& w, const ModularPoint& m, const ExcisionSpec& e) {
    int n = int(w.size());
    if (n < 1 || n > 2) throw DomainError("minor integration limited to n <= 2");
    GWPoint point(w, m);
    EpsPoly H = EpsPoly::one();  // empty minor; the corner minor {0} is 0
    for (int i = 0; i < n; ++i) {
        std::vector<cplx> wi{w[i]};
        Fn1 bordered = [&](cplx) { return varpi_det({0.0}, wi, m, true); };
        Fn1 plain = [&](cplx) { return unbordered_det({0.0}, wi, m, true); };
        H.add(eps_mask({i + 1}) | 1u, excised_integral(bordered, m, {}, e));
        H.add(eps_mask({i + 1}), excised_integral(plain, m, {}, e));
    }
    if (n == 2) {
        // both minors depend on x = z_1 - z_2 only; poles at x = -w_1 and x = w_2
        std::vector<cplx> poles{-w[0], w[1]};
        Fn1 bordered = [&](cplx x) { return varpi_det({x, 0.0}, w, m, true); };
        Fn1 plain = [&](cplx x) { return unbordered_det({x, 0.0}, w, m, true); };
        H.add(eps_mask({1, 2}) | 1u, excised_integral(bordered, m, poles, e));
        H.add(eps_mask({1, 2}), excised_integral(plain, m, poles, e));
    }
    return H;
}

ConvolutionReport convolution_report(const std::vector<cplx>& w, const ModularPoint& m, const NumericOptions& opt) {
    int n = int(w.size());
    if (n < 2 || n > 3) throw DomainError("convolution report needs n in {2, 3}");
    GWPoint point(w, m);
    ConvolutionReport r;
    r.n = n;
    r.hat = false;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        auto S = subset_of(mask, n);
        if (S.size() < 2) continue;
        ConvolutionRow row;
        row.S = S;
        row.lhs = That_closed(S, w, m, false);
        row.convolution = 0.0;
        for (unsigned sub = (mask - 1) & mask; sub > 0; sub = (sub - 1) & mask) {
            auto I = subset_of(sub, n), Ic = subset_of(mask & ~sub, n);
            row.convolution += That_closed(I, w, m, false) * Ghat_closed(Ic, w, m, false);
        }
        row.deviation = std::abs(row.lhs - row.convolution);
        r.rows.push_back(row);
    }
    r.closed_full = That_closed(range1(n), w, m, false);
    r.numeric_full = That_numeric(w, m, opt);
    r.numeric_vs_closed = std::abs(r.numeric_full - r.closed_full);
    r.numeric_vs_convolution = std::abs(r.numeric_full - r.rows.back().convolution);
    return r;
}

cplx F_pointwise(const std::vector<cplx>& w, const ModularPoint& m) {
    GWPoint point(w, m);
    cplx T = That_closed(range1(int(w.size())), w, m, false);
    cplx euler = 1.0, qk = 1.0;
    for (int k = 1; k < 100000; ++k) {
        qk *= m.q();
        euler *= 1.0 - qk;
        if (std::abs(qk) < 1e-18) break;
    }
    cplx sw = std::accumulate(w.begin(), w.end(), cplx(0.0));
    return T * euler / theta_checked(sw, m, "sum of w");
}

}  // namespace ekgw
