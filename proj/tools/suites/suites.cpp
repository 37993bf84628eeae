#include "suites.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "ekgw/theta.hpp"
#include "support.hpp"

namespace ekgw::verify {

void Worst::add(cplx l, cplx r) {
    double e = std::abs(l - r);
    if (relative) e /= std::max(1.0, std::abs(r));
    if (count == 0 || std::isnan(e) || (!std::isnan(score) && e > score)) {
        score = e;
        lhs = l;
        rhs = r;
    }
    ++count;
}

std::string fmt(double x) {
    if (x == 0.0) x = 0.0;
    char buf[64];
    auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

std::string fmt(cplx z) { return fmt(z.real()) + (std::signbit(z.imag()) ? "-" : "+") + fmt(std::abs(z.imag())) + "i"; }

void CaseContext::param(const std::string& key, double value) { param(key, fmt(value)); }
void CaseContext::param(const std::string& key, cplx value) { param(key, fmt(value)); }

double CaseContext::uniform(double a, double b) {
    // 53 random bits mapped to [a, b); avoids the implementation-defined distributions
    double u = double(rng() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
}

cplx CaseContext::point(const ModularPoint& m) {
    double x = uniform(-0.5, 0.5), y = uniform(-0.5, 0.5);
    return x + y * m.tau();
}

cplx CaseContext::well_conditioned_point(const ModularPoint& m, double threshold) {
    for (int tries = 0; tries < 10000; ++tries) {
        cplx z = point(m);
        if (std::abs(theta(z, m)) > threshold) return z;
    }
    throw std::runtime_error("no well-conditioned sample point found");
}

double SuiteOptions::tol_scale() const {
    switch (profile) {
        case Profile::strict: return 0.1;
        case Profile::standard: return 1.0;
        case Profile::fast: return 10.0;
    }
    return 1.0;
}

int SuiteRun::nodes(int standard, int fast) const {
    if (opt_.nodes > 0) return opt_.nodes;
    return opt_.fast() ? fast : standard;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

bool known_anchor(const std::string& a) {
    for (const auto& [name, text] : anchor_table())
        if (name == a) return true;
    return false;
}

}  // namespace

void SuiteRun::check(const CaseSpec& spec, const std::function<void(CaseContext&)>& body) {
    if (!known_anchor(spec.anchor)) throw std::logic_error("case " + spec.id + " uses an unregistered anchor");
    CaseResult r;
    r.suite = name_;
    r.id = spec.id;
    r.anchor = spec.anchor;
    r.gating = spec.gating;

    CaseContext ctx;
    ctx.rng.seed(opt_.seed ^ fnv1a(name_ + "/" + spec.id));
    ctx.worst.relative = spec.relative;

    auto t0 = std::chrono::steady_clock::now();
    bool threw = false;
    try {
        body(ctx);
    } catch (const std::exception& e) {
        threw = true;
        ctx.note = e.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    r.runtime_ms = long(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());

    r.lhs = ctx.worst.lhs;
    r.rhs = ctx.worst.rhs;
    r.abs_err = std::abs(r.lhs - r.rhs);
    r.tol = spec.tol > 0 ? spec.tol * opt_.tol_scale() : 0.0;
    if (spec.relative) r.tol *= std::max(1.0, std::abs(r.rhs));
    if (ctx.worst.count == 0 && !threw) {
        threw = true;
        ctx.note = "no samples";
    }
    if (threw) r.abs_err = std::numeric_limits<double>::quiet_NaN();
    r.pass = !threw && r.abs_err <= r.tol;
    if (ctx.worst.count > 1) ctx.param("samples", ctx.worst.count);
    r.params = std::move(ctx.params);
    r.note = std::move(ctx.note);
    rows_.push_back(std::move(r));
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"theta",          "eisenstein", "kronecker",  "residues",
                                                "chain-loop",     "determinant", "gw-closed-form", "ordering",
                                                "generating",     "qexp",        "series-report"};
    return names;
}

bool suite_gates(const std::string& suite) { return suite != "series-report"; }

std::vector<CaseResult> run_suite(const std::string& suite, const SuiteOptions& opt) {
    static const std::map<std::string, void (*)(SuiteRun&)> table{
        {"theta", suite_theta},
        {"eisenstein", suite_eisenstein},
        {"kronecker", suite_kronecker},
        {"residues", suite_residues},
        {"chain-loop", suite_chain_loop},
        {"determinant", suite_determinant},
        {"gw-closed-form", suite_gw_closed_form},
        {"ordering", suite_ordering},
        {"generating", suite_generating},
        {"qexp", suite_qexp},
        {"series-report", suite_series_report},
    };
    std::vector<CaseResult> out;
    auto run_one = [&](const std::string& name) {
        SuiteRun s(name, opt);
        table.at(name)(s);
        for (auto& r : s.take()) out.push_back(std::move(r));
    };
    if (suite == "all") {
        for (const auto& name : suite_names()) run_one(name);
    } else {
        if (!table.count(suite)) throw DomainError("unknown suite '" + suite + "'");
        run_one(suite);
    }
    std::stable_sort(out.begin(), out.end(), [](const CaseResult& a, const CaseResult& b) {
        return std::tie(a.suite, a.id) < std::tie(b.suite, b.id);
    });
    return out;
}

const std::vector<std::pair<std::string, std::string>>& anchor_table() {
    static const std::vector<std::pair<std::string, std::string>> table{
        {"theta.normalization", "theta(0) = 0 and theta'(0) = 1"},
        {"theta.automorphy", "theta(z+1) = -theta(z), theta(z+tau) = -exp(-pi i tau - 2 pi i z) theta(z)"},
        {"theta.dual_representation", "product and exponential-sum forms of theta agree near the origin"},
        {"theta.log_derivative", "(ln theta)' = Z and (ln theta)'' = -wp - 2 G_2 from the Taylor jet"},
        {"theta.Z_quasi_periodicity", "Z(z+1) = Z(z), Z(z+tau) = Z(z) - 2 pi i"},
        {"theta.Zhat_ellipticity", "Zhat is invariant under both lattice translations"},
        {"theta.Zhat_completion", "Zhat - Z equals the completion term A(z)"},
        {"theta.weierstrass", "wp and zeta from theta agree with lattice sums and the zeta pole"},
        {"eisenstein.dual_method", "lattice sums and q-expansions of G_k agree for k = 2, 4, 6"},
        {"eisenstein.odd_weight", "G_k vanishes for odd k"},
        {"eisenstein.cutoff_stability", "doubling the Eisenstein summation cutoff changes nothing"},
        {"eisenstein.summation_order", "the two summation orders of G_2 differ by -pi i / tau"},
        {"eisenstein.eta1", "eta1 = 2 G_2 = minus the A-cycle integral of wp; the completion adds Y and is invariant under tau -> tau + 1"},
        {"modular.A_periods", "A(z + 1) = A(z), A(z + tau) = A(z) + 2 pi i, A(-z) = -A(z)"},
        {"kronecker.three_routes", "jet, Bell-polynomial and binomial-completion routes for ehat_m agree for m <= 8"},
        {"kronecker.low_orders", "ehat_0 = 1, ehat_1 = Zhat, ehat_2 = (Zhat^2 - wp) / 2"},
        {"kronecker.parity_ellipticity", "e_k(-z) = (-1)^k e_k(z) and ehat_k is elliptic"},
        {"kronecker.polar_part", "the leading pole of ehat_m has coefficient Y^(m-1)/(m-1)!"},
        {"kronecker.S_symmetries", "S_c(z) = S_z(c), Shat_c(-z) = -Shat_(-c)(z), Shat_c is elliptic in z"},
        {"kronecker.ek_series", "E*_1 = Z, dE_m/dz = -m E_(m+1), E_2 against its lattice sum"},
        {"kronecker.fay", "the Fay trisecant identity for plain and completed Kronecker functions"},
        {"kronecker.quadratic_relation", "the quadratic relation between products of e_i and e_j"},
        {"kronecker.quadratic_special", "the quadratic relation with one index equal to 1"},
        {"kronecker.addition_formula", "(zeta(x) + zeta(y) + zeta(-x-y))^2 = wp(x) + wp(y) + wp(-x-y)"},
        {"kronecker.dbar_lowering", "the antiholomorphic derivative lowers ehat_m to ehat_(m-1)"},
        {"kronecker.dbar_primitive", "dbar of the constructed primitive reproduces the integrand"},
        {"kronecker.dz_relation", "dehat_m/dz in terms of lower ehat and the completed E*_k"},
        {"residues.circle", "the holomorphic residue of ehat_m dz is 1 for m = 1 and 0 otherwise, at every lattice translate"},
        {"residues.regularized_integral", "the regularized torus integral of ehat_m is 1 for m = 0 and 0 otherwise"},
        {"residues.two_factor_integral", "integrating ehat_a(z + c) ehat_b(z + d) in z matches its closed form"},
        {"chain_loop.chain_integral", "a regularized chain integrates to 1 when every weight is 0 and to 0 otherwise"},
        {"chain_loop.loop_integral", "a regularized loop integrates to (prod delta - prod (delta - 1)) ehat of the total weight at the summed w"},
        {"chain_loop.sequential_route", "one-at-a-time reduction matches the closed chain and loop forms"},
        {"chain_loop.chain_residue", "the iterated residue of a chain is 1 when every weight is 1 and 0 otherwise"},
        {"chain_loop.loop_residue", "the iterated residue of a loop vanishes"},
        {"chain_loop.relabel_invariance", "reductions are invariant under relabelling the vertices"},
        {"chain_loop.loop_numeric", "the two-vertex loop integral against excised quadrature"},
        {"chain_loop.loop_step_numeric", "a two-factor loop step against excised quadrature"},
        {"chain_loop.tree_chain_numeric", "random tree-shaped products against sequential reduction"},
        {"determinant.bordered_determinant", "varpi equals its bordered determinant form"},
        {"determinant.varpi_basic", "varpi normalization, ellipticity and swap symmetry"},
        {"gw.numeric_oracle", "contour integration of varpi reproduces the closed form That"},
        {"gw.determinant_expansion", "symbolic expansion of the determinant matches the partition sum"},
        {"gw.partition_formula", "That and Ghat for small index sets"},
        {"gw.bell_normalization", "complete Bell polynomials of the e_k series give (k-1)! ehat_k"},
        {"gw.block_symmetry", "That and Ghat are symmetric in the w variables"},
        {"ordering.ordering_independence", "iterated contour integrals are independent of the order"},
        {"ordering.completed_factors", "order dependence with completed factors (report only)"},
        {"generating.assembly", "the epsilon generating series assembles That and Ghat"},
        {"generating.examples", "small generating series in closed form"},
        {"generating.minor_integration", "H by integrating minors against the numeric series"},
        {"series_report.coefficient_identity", "the product relation between That and Ghat (report only)"},
        {"series_report.numeric_oracle", "numeric That against the closed form and the convolution"},
        {"qexp.pointwise", "truncated q-expansions agree with direct evaluation"},
        {"qexp.theta_reciprocal", "the theta series times its reciprocal is 1"},
    };
    return table;
}

Profile parse_profile(const std::string& s) {
    if (s == "strict") return Profile::strict;
    if (s == "default" || s == "standard") return Profile::standard;
    if (s == "fast") return Profile::fast;
    throw DomainError("unknown tolerance profile '" + s + "' (strict, default, fast)");
}

std::string profile_name(Profile p) {
    switch (p) {
        case Profile::strict: return "strict";
        case Profile::standard: return "default";
        case Profile::fast: return "fast";
    }
    return "default";
}

}  // namespace ekgw::verify
