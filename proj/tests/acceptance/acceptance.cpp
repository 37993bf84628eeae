// One PASS/FAIL line per acceptance criterion. Each criterion runs its suites at the default
// profile and seed, requires every gating case to pass, and checks the runtime budget.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "suites.hpp"

namespace {

using ekgw::verify::CaseResult;

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

struct Criterion {
    int number;
    std::string title;
    std::vector<std::string> suites;
    double budget_s;  // wall-clock limit for the whole criterion
    std::function<void(const std::vector<CaseResult>&, Outcome&)> extra;
};

const CaseResult* find(const std::vector<CaseResult>& rows, const std::string& suite, const std::string& id) {
    for (const auto& r : rows)
        if (r.suite == suite && r.id == id) return &r;
    return nullptr;
}

std::string param(const CaseResult& r, const std::string& key) {
    for (const auto& [k, v] : r.params)
        if (k == key) return v;
    return "";
}

bool finite(std::complex<double> z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {1, "theta layer", {"theta"}, 5, nullptr},
        {2, "Eisenstein layer", {"eisenstein"}, 20,
         [](const std::vector<CaseResult>& rows, Outcome& o) {
             const CaseResult* r = find(rows, "eisenstein", "summation_order_k2");
             o.require(r != nullptr, "summation-order case missing");
             if (r) {
                 double d = std::atof(param(*r, "min_abs_difference").c_str());
                 o.require(d > 1e-3, "reordered G_2 sum differs by only " + param(*r, "min_abs_difference"));
             }
         }},
        {3, "Kronecker layer", {"kronecker"}, 60, nullptr},
        {4, "residues and regularized integrals", {"residues"}, 600, nullptr},
        {5, "chain and loop reductions", {"chain-loop"}, 600,
         [](const std::vector<CaseResult>& rows, Outcome& o) {
             long symbolic_ms = 0;
             for (const auto& r : rows)
                 if (r.tol == 0.0) symbolic_ms += r.runtime_ms;
             o.require(symbolic_ms < 30000, "symbolic cases took " + std::to_string(symbolic_ms) + " ms");
         }},
        {6, "bordered determinant", {"determinant"}, 10, nullptr},
        {7, "closed form of the n-point function", {"gw-closed-form"}, 900, nullptr},
        {8, "ordering independence", {"ordering"}, 120, nullptr},
        {9, "generating series", {"generating", "series-report"}, 900,
         [](const std::vector<CaseResult>& rows, Outcome& o) {
             for (const char* id : {"n3_coefficient_123", "n3_numeric_vs_closed", "n3_numeric_vs_convolution"}) {
                 const CaseResult* r = find(rows, "series-report", id);
                 o.require(r != nullptr, std::string("report row ") + id + " missing");
                 if (r) o.require(finite(r->lhs) && finite(r->rhs), std::string("report row ") + id + " not finite");
             }
         }},
        {10, "q-expansions", {"qexp"}, 30, nullptr},
    };

    ekgw::verify::SuiteOptions opt;
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        std::vector<CaseResult> rows;
        auto t0 = std::chrono::steady_clock::now();
        for (const auto& s : c.suites) {
            try {
                for (auto& r : ekgw::verify::run_suite(s, opt)) rows.push_back(std::move(r));
            } catch (const std::exception& e) {
                o.require(false, "suite " + s + " threw: " + e.what());
            }
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        int gating = 0, passed = 0;
        for (const auto& r : rows) {
            if (!r.gating) continue;
            ++gating;
            if (r.pass) ++passed;
            else o.require(false, r.suite + "/" + r.id + " err=" + std::to_string(r.abs_err) + " tol=" +
                                      std::to_string(r.tol) + (r.note.empty() ? "" : " (" + r.note + ")"));
        }
        o.require(gating > 0, "no gating cases ran");
        o.require(secs < c.budget_s, "runtime " + std::to_string(secs) + " s over budget");
        if (c.extra) c.extra(rows, o);

        std::printf("%s criterion %d: %s (%d/%d gating cases, %.1f s, budget %.0f s)\n", o.pass ? "PASS" : "FAIL",
                    c.number, c.title.c_str(), passed, gating, secs, c.budget_s);
        for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
