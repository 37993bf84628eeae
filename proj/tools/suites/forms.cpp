#include <functional>
#include <numeric>

#include "ekgw/kronecker.hpp"
#include "ekgw/quadrature.hpp"
#include "ekgw/symbolic.hpp"
#include "support.hpp"

namespace ekgw::verify {

namespace {

void for_each_weights(int n, int max_total, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> m(n, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == n) {
            fn(m);
            return;
        }
        for (int v = 0; v <= left; ++v) {
            m[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, max_total);
}

std::string weights_string(const std::vector<int>& m) {
    std::string s = "(";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "," : "") + std::to_string(m[i]);
    return s + ")";
}

// prod_{k<n} e_{m_k}(s_{k,k+1}) * e_{m_n}(z_n - z_0)
EKExpr chain(const std::vector<int>& m) {
    int n = int(m.size());
    EKMonomial mono;
    for (int k = 1; k < n; ++k) mono.factors.push_back({m[k - 1], LinearForm::s(k, k + 1), true});
    mono.factors.push_back({m[n - 1], LinearForm::zvar(n) - LinearForm::zvar(0), true});
    return EKExpr(mono);
}

// prod_k e_{m_k}(s_{k,k+1}) with s_{n,n+1} = s_{n,1}; `label` relabels the z-variables
EKExpr loop(const std::vector<int>& m, const std::vector<int>& label = {}) {
    int n = int(m.size());
    auto z = [&](int k) { return label.empty() ? k : label[k - 1]; };
    EKMonomial mono;
    for (int k = 1; k <= n; ++k) {
        int next = k % n + 1;
        mono.factors.push_back({m[k - 1], LinearForm::wvar(k) + LinearForm::zvar(z(k)) - LinearForm::zvar(z(next)), true});
    }
    return EKExpr(mono);
}

EKExpr chain_closed(const std::vector<int>& m) {
    bool all_zero = std::all_of(m.begin(), m.end(), [](int v) { return v == 0; });
    return all_zero ? EKExpr::constant(1.0) : EKExpr();
}

EKExpr loop_closed(const std::vector<int>& m) {
    int n = int(m.size());
    double p0 = 1.0, p1 = 1.0;
    for (int v : m) {
        double d = v == 0 ? 1.0 : 0.0;
        p0 *= d;
        p1 *= d - 1.0;
    }
    double coeff = p0 - p1;
    if (coeff == 0.0) return {};
    LinearForm total;
    for (int k = 1; k <= n; ++k) total += LinearForm::wvar(k);
    int weight = std::accumulate(m.begin(), m.end(), 0);
    return EKExpr::factor(weight, total, true, coeff);
}

EKExpr sequential(EKExpr f, int n) {
    for (int v = 1; v <= n; ++v) f = symbolic_reg_integrate_one(f, v);
    return f.normalized();
}

EKExpr iterated_residue(EKExpr f, int n) {
    for (int v = 1; v <= n && !f.is_zero(); ++v) f = symbolic_residue(f, v);
    return f.normalized();
}

ExcisionSpec excision(const SuiteRun& s) {
    ExcisionSpec e;
    if (s.options().fast()) e.grid_resolution = 200;
    return e;
}

// Integral over z_1 of e_a(c12 + z_1) e_b(c21 - z_1) against the closed form
// (delta_{b,0} - [a >= 1]) e_{a+b}(c12 + c21), at random constants.
void two_factor_samples(CaseContext& c, const ModularPoint& m, int a, int b, int samples, const ExcisionSpec& e) {
    for (int k = 0; k < samples;) {
        cplx c12 = c.point(m), c21 = c.point(m);
        if (m.lattice_distance(c12 + c21) < 0.15) continue;
        Fn1 f = [&](cplx z) { return ek_coeff(a, c12 + z, m, true) * ek_coeff(b, c21 - z, m, true); };
        cplx v = excised_integral(f, m, {-c12, c21}, e);
        double coeff = (b == 0 ? 1.0 : 0.0) - (a >= 1 ? 1.0 : 0.0);
        c.add(v, coeff * ek_coeff(a + b, c12 + c21, m, true));
        ++k;
    }
}

}  // namespace

void suite_residues(SuiteRun& s) {
    const ModularPoint m = s.modular({0.1, 1.1});
    const ExcisionSpec e = excision(s);

    s.check({"circle_trivial", "residues.circle", 1e-6}, [&](CaseContext& c) {
        c.add(circle_residue([](cplx z) { return 1.0 / z; }, 0.0, 0.05), 1.0);
        c.add(circle_residue([](cplx z) { return std::conj(z) / z; }, 0.0, 0.05), 0.0);
    });
    for (int mi = 0; mi <= 4; ++mi) {
        s.check({"circle_e" + std::to_string(mi), "residues.circle", 1e-6}, [&, mi](CaseContext& c) {
            Fn1 f = [&](cplx z) { return ek_coeff(mi, z, m, true); };
            c.add(circle_residue(f, 0.0, 0.05), mi == 1 ? 1.0 : 0.0);
            cplx p = 0.31 + 0.22 * m.tau();  // a translate of the pole
            c.add(circle_residue([&](cplx z) { return ek_coeff(mi, z - p + 1.0 + m.tau(), m, true); }, p, 0.05),
                  mi == 1 ? 1.0 : 0.0);
        });
    }
    for (int mi = 0; mi <= 4; ++mi) {
        s.check({"regularized_e" + std::to_string(mi), "residues.regularized_integral", 1e-4}, [&, mi](CaseContext& c) {
            Fn1 f = [&](cplx z) { return ek_coeff(mi, z, m, true); };
            c.add(excised_integral(f, m, {0.0}, e), mi == 0 ? 1.0 : 0.0);
            c.param("grid", e.grid_resolution);
        });
    }
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b) {
            std::string id = "two_factor_" + std::to_string(a) + "_" + std::to_string(b);
            s.check({id, "residues.two_factor_integral", 1e-3},
                    [&, a, b](CaseContext& c) { two_factor_samples(c, m, a, b, 10, e); });
        }
}

void suite_chain_loop(SuiteRun& s) {
    const ModularPoint m = s.modular({0.1, 1.1});
    const ExcisionSpec e = excision(s);

    s.check({"chain_integral", "chain_loop.chain_integral", 0.0}, [&](CaseContext& c) {
        int total = 0, bad = 0;
        for (int n = 1; n <= 4; ++n)
            for_each_weights(n, 5, [&](const std::vector<int>& w) {
                ++total;
                if (!(symbolic_reg_integrate_all(chain(w), n) == chain_closed(w))) {
                    ++bad;
                    c.note = "first mismatch at m = " + weights_string(w);
                }
            });
        c.add(double(bad), 0.0);
        c.param("monomials", total);
    });
    s.check({"loop_integral", "chain_loop.loop_integral", 0.0}, [&](CaseContext& c) {
        int total = 0, bad = 0;
        for (int n = 2; n <= 4; ++n)
            for_each_weights(n, 5, [&](const std::vector<int>& w) {
                ++total;
                if (!(symbolic_reg_integrate_all(loop(w), n) == loop_closed(w))) {
                    ++bad;
                    c.note = "first mismatch at m = " + weights_string(w);
                }
            });
        c.add(double(bad), 0.0);
        c.param("monomials", total);
    });
    s.check({"sequential_route", "chain_loop.sequential_route", 0.0}, [&](CaseContext& c) {
        int total = 0, bad = 0;
        for (int n = 2; n <= 4; ++n)
            for_each_weights(n, 5, [&](const std::vector<int>& w) {
                total += 2;
                if (!(sequential(chain(w), n) == chain_closed(w))) ++bad;
                if (!(sequential(loop(w), n) == loop_closed(w))) ++bad;
            });
        c.add(double(bad), 0.0);
        c.param("monomials", total);
    });
    s.check({"chain_residue", "chain_loop.chain_residue", 0.0}, [&](CaseContext& c) {
        int total = 0, bad = 0;
        for (int n = 1; n <= 5; ++n)
            for_each_weights(n, 2 * n, [&](const std::vector<int>& w) {
                if (*std::max_element(w.begin(), w.end()) > 2) return;
                ++total;
                bool ones = std::all_of(w.begin(), w.end(), [](int v) { return v == 1; });
                EKExpr expect = ones ? EKExpr::constant(1.0) : EKExpr();
                if (!(iterated_residue(chain(w), n) == expect)) ++bad;
            });
        c.add(double(bad), 0.0);
        c.param("monomials", total);
    });
    s.check({"loop_residue", "chain_loop.loop_residue", 0.0}, [&](CaseContext& c) {
        int total = 0, bad = 0;
        for (int n = 2; n <= 6; ++n) {
            int top = n <= 4 ? 0 : 1;  // entries from {0,1,2} up to n = 4, {1,2} beyond
            std::vector<int> w(n, top);
            std::function<void(int)> rec = [&](int pos) {
                if (pos == n) {
                    ++total;
                    if (!iterated_residue(loop(w), n).is_zero()) ++bad;
                    return;
                }
                for (int v = top; v <= 2; ++v) {
                    w[pos] = v;
                    rec(pos + 1);
                }
            };
            rec(0);
        }
        c.add(double(bad), 0.0);
        c.param("monomials", total);
    });
    s.check({"relabel_invariance", "chain_loop.relabel_invariance", 0.0}, [&](CaseContext& c) {
        int total = 0, bad = 0;
        for (int n = 2; n <= 4; ++n)
            for_each_weights(n, 5, [&](const std::vector<int>& w) {
                EKExpr base = symbolic_reg_integrate_all(loop(w), n);
                std::vector<int> label(n);
                std::iota(label.begin(), label.end(), 1);
                do {
                    ++total;
                    if (!(symbolic_reg_integrate_all(loop(w, label), n) == base)) ++bad;
                } while (std::next_permutation(label.begin(), label.end()));
            });
        c.add(double(bad), 0.0);
        c.param("relabelings", total);
    });
    s.check({"loop_n2_numeric", "chain_loop.loop_numeric", 1e-3}, [&](CaseContext& c) {
        EKExpr f = loop({1, 1});
        EKExpr reduced = symbolic_reg_integrate_all(f, 2);
        c.param("symbolic", reduced.to_string());
        for (int k = 0; k < 2;) {
            std::vector<cplx> wv{0.0, c.point(m), c.point(m)};
            if (m.lattice_distance(wv[1] + wv[2]) < 0.15) continue;
            cplx z2 = c.point(m);
            Fn1 g = [&](cplx x) { return numeric_eval(f, {0.0, x, z2}, wv, m); };
            c.add(excised_integral(g, m, {z2 - wv[1], z2 + wv[2]}, e), numeric_eval(reduced, {}, wv, m));
            ++k;
        }
    });
    for (int a = 1; a <= 4; ++a)
        for (int b = 1; a + b <= 5; ++b) {
            std::string id = "loop_step_" + std::to_string(a) + "_" + std::to_string(b);
            s.check({id, "chain_loop.loop_step_numeric", 1e-3},
                    [&, a, b](CaseContext& c) { two_factor_samples(c, m, a, b, 2, e); });
        }
    s.check({"tree_chain_numeric", "chain_loop.tree_chain_numeric", 1e-3}, [&](CaseContext& c) {
        int symbolic_bad = 0;
        for (int k = 0; k < 10; ++k) {
            int shape = int(c.uniform(0, 4));
            int a = 1 + int(c.uniform(0, 3)), b = 1 + int(c.uniform(0, 3)), d = 1 + int(c.uniform(0, 3));
            EKMonomial mono;
            int n = 3;
            switch (shape) {
                case 0:
                    n = 2;
                    mono.factors = {{a, LinearForm::s(1, 2), true}, {b, LinearForm::zvar(2) - LinearForm::zvar(0), true}};
                    break;
                case 1: mono.factors = {{a, LinearForm::s(1, 2), true}, {b, LinearForm::s(3, 2), true}}; break;
                case 2: mono.factors = {{a, LinearForm::s(1, 2), true}, {b, LinearForm::s(2, 3), true}}; break;
                default:
                    mono.factors = {{a, LinearForm::s(1, 2), true},
                                    {b, LinearForm::s(3, 2), true},
                                    {d, LinearForm::zvar(2) - LinearForm::zvar(0), true}};
            }
            EKExpr f(mono);
            if (!symbolic_reg_integrate_all(f, n).is_zero()) ++symbolic_bad;
            IndicatingGraph g = build_graph(mono, n);
            auto tv = g.total_valency();
            int leaf = 1;
            while (tv[leaf] != 1) ++leaf;
            std::vector<cplx> zv(n + 1), wv(n + 1);
            for (auto& v : zv) v = c.point(m);
            for (auto& v : wv) v = c.point(m);
            // the single factor through the leaf vanishes at one point of its torus
            const EKFactor* through = nullptr;
            for (const auto& fac : mono.factors)
                if (fac.s.zcoeff(leaf) != 0) through = &fac;
            std::vector<cplx> zl = zv;
            zl[leaf] = 0.0;
            cplx pole = -through->s.evaluate(zl, wv) / double(through->s.zcoeff(leaf));
            Fn1 h = [&](cplx x) {
                std::vector<cplx> z = zv;
                z[leaf] = x;
                return numeric_eval(f, z, wv, m);
            };
            c.add(excised_integral(h, m, {pole}, e), 0.0);
        }
        c.add(double(symbolic_bad), 0.0);
    });
}

}  // namespace ekgw::verify
