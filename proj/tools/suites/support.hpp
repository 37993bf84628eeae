#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ekgw/modular.hpp"
#include "suites.hpp"

namespace ekgw::verify {

// Largest discrepancy over a batch of (lhs, rhs) samples; with `relative` the score is
// |lhs - rhs| / max(1, |rhs|).
struct Worst {
    bool relative = false;
    cplx lhs = 0.0, rhs = 0.0;
    double score = -1.0;
    int count = 0;

    void add(cplx l, cplx r);
};

struct CaseContext {
    std::mt19937_64 rng;
    Worst worst;
    std::vector<std::pair<std::string, std::string>> params;
    std::string note;

    void add(cplx lhs, cplx rhs) { worst.add(lhs, rhs); }
    void param(const std::string& key, const std::string& value) { params.emplace_back(key, value); }
    void param(const std::string& key, double value);
    void param(const std::string& key, cplx value);
    void param(const std::string& key, int value) { param(key, std::to_string(value)); }

    double uniform(double a, double b);
    // uniform point of the fundamental parallelogram {x + y tau : |x|, |y| <= 1/2}
    cplx point(const ModularPoint& m);
    // same, rejecting points where |theta| <= threshold
    cplx well_conditioned_point(const ModularPoint& m, double threshold = 1e-3);
};

struct CaseSpec {
    std::string id;
    std::string anchor;
    double tol = 0.0;  // 0 requests exact agreement and is not scaled by the profile
    bool gating = true;
    bool relative = false;
};

class SuiteRun {
public:
    SuiteRun(std::string name, const SuiteOptions& opt) : name_(std::move(name)), opt_(opt) {}

    const SuiteOptions& options() const { return opt_; }
    ModularPoint modular(cplx fallback) const { return ModularPoint(opt_.tau.value_or(fallback)); }
    bool wants_n(int n) const { return opt_.n == 0 || opt_.n == n; }
    int nodes(int standard, int fast) const;

    void check(const CaseSpec& spec, const std::function<void(CaseContext&)>& body);
    std::vector<CaseResult> take() { return std::move(rows_); }

private:
    std::string name_;
    SuiteOptions opt_;
    std::vector<CaseResult> rows_;
};

std::string fmt(double x);
std::string fmt(cplx z);

void suite_theta(SuiteRun& s);
void suite_eisenstein(SuiteRun& s);
void suite_kronecker(SuiteRun& s);
void suite_residues(SuiteRun& s);
void suite_chain_loop(SuiteRun& s);
void suite_determinant(SuiteRun& s);
void suite_gw_closed_form(SuiteRun& s);
void suite_ordering(SuiteRun& s);
void suite_generating(SuiteRun& s);
void suite_series_report(SuiteRun& s);
void suite_qexp(SuiteRun& s);

}  // namespace ekgw::verify
