#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <ostream>
#include <sstream>

#include "cli.hpp"
#include "ekgw/gw.hpp"
#include "ekgw/kronecker.hpp"
#include "ekgw/qseries.hpp"
#include "ekgw/theta.hpp"
#include "support.hpp"

namespace ekgw::cli {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

namespace {

ordered_json number(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

ordered_json case_json(const verify::CaseResult& r) {
    ordered_json j;
    j["suite"] = r.suite;
    j["case"] = r.id;
    j["anchor"] = r.anchor;
    j["lhs"] = {number(r.lhs.real()), number(r.lhs.imag())};
    j["rhs"] = {number(r.rhs.real()), number(r.rhs.imag())};
    j["abs_err"] = number(r.abs_err);
    j["tol"] = r.tol;
    j["pass"] = r.pass;
    j["gating"] = r.gating;
    j["runtime_ms"] = r.runtime_ms;
    ordered_json p = ordered_json::object();
    for (const auto& [k, v] : r.params) p[k] = v;
    j["params"] = p;
    j["note"] = r.note;
    return j;
}

std::string params_string(const verify::CaseResult& r) {
    std::string s;
    for (const auto& [k, v] : r.params) s += (s.empty() ? "" : ";") + k + "=" + v;
    return s;
}

}  // namespace

void write_report(const std::vector<verify::CaseResult>& rows, const Common& common, const std::string& suite,
                  std::ostream& out) {
    int passed = 0, gating_failures = 0, report_failures = 0;
    for (const auto& r : rows) {
        if (r.pass) ++passed;
        else if (r.gating) ++gating_failures;
        else ++report_failures;
    }
    const std::string format = common.output_format();
    if (format == "json") {
        ordered_json j;
        j["suite"] = suite;
        j["profile"] = common.profile;
        j["seed"] = common.seed;
        j["tau"] = common.tau.empty() ? ordered_json(nullptr) : ordered_json(common.tau);
        j["cases"] = ordered_json::array();
        for (const auto& r : rows) j["cases"].push_back(case_json(r));
        j["summary"] = {{"cases", rows.size()},
                        {"passed", passed},
                        {"gating_failures", gating_failures},
                        {"report_only_failures", report_failures}};
        out << j.dump(2) << "\n";
    } else if (format == "csv") {
        out << "suite,case,anchor,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,tol,pass,gating,runtime_ms,params,note\n";
        for (const auto& r : rows) {
            out << r.suite << "," << r.id << "," << r.anchor << "," << verify::fmt(r.lhs.real()) << ","
                << verify::fmt(r.lhs.imag()) << "," << verify::fmt(r.rhs.real()) << "," << verify::fmt(r.rhs.imag())
                << "," << verify::fmt(r.abs_err) << "," << verify::fmt(r.tol) << "," << (r.pass ? 1 : 0) << ","
                << (r.gating ? 1 : 0) << "," << r.runtime_ms << "," << csv_field(params_string(r)) << ","
                << csv_field(r.note) << "\n";
        }
    } else {
        for (const auto& r : rows) {
            const char* status = r.pass ? "PASS" : r.gating ? "FAIL" : "INFO";
            out << std::left << std::setw(5) << status << std::setw(16) << r.suite << std::setw(32) << r.id
                << "err=" << std::setw(24) << verify::fmt(r.abs_err) << " tol=" << verify::fmt(r.tol);
            if (common.timing) out << "  " << r.runtime_ms << " ms";
            if (!r.note.empty()) out << "  # " << r.note;
            out << "\n";
        }
        out << rows.size() << " cases, " << passed << " passed, " << gating_failures << " gating failures, "
            << report_failures << " report-only deviations\n";
    }
}

int run_verify(const Common& common, const VerifyArgs& a, std::ostream& out) {
    verify::SuiteOptions opt;
    if (!common.tau.empty()) opt.tau = modular_point(common).tau();
    opt.seed = common.seed;
    opt.profile = verify::parse_profile(common.profile);
    opt.n = a.n;
    opt.nodes = common.nodes;
    auto rows = verify::run_suite(a.suite, opt);
    if (!common.timing)
        for (auto& r : rows) r.runtime_ms = 0;
    write_report(rows, common, a.suite, out);
    bool ok = std::all_of(rows.begin(), rows.end(), [](const verify::CaseResult& r) { return r.pass || !r.gating; });
    return ok ? 0 : 1;
}

namespace {

std::string join_ints(const std::vector<int>& v, char sep) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(v[i]);
    return s;
}

std::vector<int> range1(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return v;
}

}  // namespace

int run_qexp(const Common& common, const QexpArgs& a, std::ostream& out) {
    QExpandParams p;
    p.q_order = a.order;
    p.k = a.k;
    p.m = a.m;
    p.n = a.n;
    QTarget target = a.target == "theta" ? QTarget::theta
                     : a.target == "Z"   ? QTarget::Z
                     : a.target == "G2k" ? QTarget::G2k
                     : a.target == "e"   ? QTarget::e_m
                                         : QTarget::T_n;
    QSeries series = qexpand(target, p);
    const auto rows = series.rows();
    const std::string format = common.output_format();

    std::ostringstream body;
    if (format == "json") {
        ordered_json j;
        j["target"] = a.target;
        j["q_order"] = a.order;
        j["nvars"] = series.nvars();
        j["scale"] = series.scale();
        j["denominator"] = series.denominator_string();
        j["rows"] = ordered_json::array();
        for (const auto& r : rows)
            j["rows"].push_back({{"q_exponent_doubled", r.q_exponent_doubled},
                                 {"u_exponents_doubled", r.u_exponents_doubled},
                                 {"numerator", r.numerator},
                                 {"denominator", r.denominator}});
        body << j.dump(2) << "\n";
    } else {
        body << "# target=" << a.target << " q_order=" << a.order << " nvars=" << series.nvars()
             << " scale=" << series.scale() << " denominator=" << series.denominator_string() << "\n";
        body << "q_exponent_doubled,u_exponents_doubled,numerator,denominator\n";
        for (const auto& r : rows)
            body << r.q_exponent_doubled << "," << join_ints(r.u_exponents_doubled, ';') << "," << r.numerator << ","
                 << r.denominator << "\n";
    }
    if (a.out.empty()) {
        out << body.str();
    } else {
        std::ofstream f(a.out);
        if (!f) throw std::runtime_error("cannot open " + a.out);
        f << body.str();
    }
    if (!a.check) return 0;

    // pointwise comparison with direct evaluation
    const ModularPoint m = modular_point(common);
    std::vector<cplx> z = parse_complex_list(a.points);
    static const std::vector<cplx> default_points{{0.21, 0.03}, {0.37, -0.02}, {0.13, 0.01}};
    int need = series.nvars();
    if (z.empty()) z.assign(default_points.begin(), default_points.begin() + need);
    if (int(z.size()) != need)
        throw DomainError("--points needs " + std::to_string(need) + " values for this target");
    cplx direct;
    switch (target) {
        case QTarget::theta: direct = theta(z[0], m); break;
        case QTarget::Z: direct = Z(z[0], m); break;
        case QTarget::G2k: direct = eisenstein_G(a.k, m, EisensteinMethod::lattice_eisenstein_summation); break;
        case QTarget::e_m: direct = ek_coeff(a.m, z[0], m, false); break;
        case QTarget::T_n: direct = That_closed(range1(a.n), z, m, false); break;
    }
    cplx summed = series.evaluate(m.tau(), z);
    double err = std::abs(summed - direct), tol = a.check_tol * std::max(1.0, std::abs(direct));
    std::ostream& log = a.out.empty() ? std::cerr : out;
    log << "check: series=" << verify::fmt(summed) << " direct=" << verify::fmt(direct) << " abs_err=" << verify::fmt(err)
        << " tol=" << verify::fmt(tol) << " |q|=" << verify::fmt(std::abs(m.q())) << (err <= tol ? " PASS" : " FAIL")
        << "\n";
    return err <= tol ? 0 : 1;
}

}  // namespace ekgw::cli
