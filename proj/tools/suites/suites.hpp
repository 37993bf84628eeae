#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ekgw/types.hpp"

namespace ekgw::verify {

struct CaseResult {
    std::string suite;
    std::string id;
    std::string anchor;
    cplx lhs = 0.0;
    cplx rhs = 0.0;
    double abs_err = 0.0;
    double tol = 0.0;
    bool pass = false;
    bool gating = true;
    long runtime_ms = 0;
    std::vector<std::pair<std::string, std::string>> params;
    std::string note;
};

enum class Profile { strict, standard, fast };

struct SuiteOptions {
    std::optional<cplx> tau;  // overrides each suite's own modular point
    std::uint64_t seed = 1;
    Profile profile = Profile::standard;
    int n = 0;      // restricts size-dependent suites to one n; 0 runs every size
    int nodes = 0;  // contour nodes for the numeric oracles; 0 picks the suite default

    double tol_scale() const;
    bool fast() const { return profile == Profile::fast; }
};

// Gating suites, then the report-only ones.
const std::vector<std::string>& suite_names();
bool suite_gates(const std::string& suite);

// Runs one suite ("all" runs every suite); rows come back sorted by (suite, case).
std::vector<CaseResult> run_suite(const std::string& suite, const SuiteOptions& opt);

// Every anchor a case can carry, with a one-line statement, for the documentation table.
const std::vector<std::pair<std::string, std::string>>& anchor_table();

Profile parse_profile(const std::string& s);
std::string profile_name(Profile p);

}  // namespace ekgw::verify
