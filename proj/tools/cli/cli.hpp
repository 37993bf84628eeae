#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "ekgw/modular.hpp"
#include "suites.hpp"

namespace ekgw::cli {

using nlohmann::ordered_json;

// Options shared by every subcommand; they live on the top-level app so a config file can
// set them with plain `key = value` lines.
struct Common {
    std::string tau;  // empty: the command's own default
    std::uint64_t seed = 1;
    std::string profile = "default";
    int nodes = 0;
    std::string format = "text";  // text, json, csv
    bool json = false;
    bool timing = false;

    std::string output_format() const { return json ? "json" : format; }
};

inline constexpr const char* default_tau = "0.1+1.1i";

// "a+bi", "a-bj", "bi", "a", "i", "-i"
cplx parse_complex(const std::string& s);
std::vector<cplx> parse_complex_list(const std::vector<std::string>& items);
ModularPoint modular_point(const Common& c);

ordered_json to_json(cplx z);

struct EvalArgs {
    std::string fn;
    std::string z = "0";
    std::string c = "0";
    int m = 1;
    int k = 4;
    bool hat = false;
    std::string variant = "raw";
    std::string method = "qseries";
    std::vector<std::string> zs;
    std::vector<std::string> ws;
};
int run_eval(const Common& common, const EvalArgs& a, std::ostream& out);

struct VerifyArgs {
    std::string suite = "all";
    int n = 0;
    std::string out;
};
int run_verify(const Common& common, const VerifyArgs& a, std::ostream& out);

struct GwArgs {
    int n = 2;
    std::vector<std::string> w;
    std::string mode = "closed";
    bool hat = false;
};
int run_gw(const Common& common, const GwArgs& a, std::ostream& out);

struct QexpArgs {
    std::string target = "theta";
    int order = 10;
    int k = 4;
    int m = 1;
    int n = 2;
    std::string out;
    bool check = false;
    double check_tol = 1e-7;
    std::vector<std::string> points;
};
int run_qexp(const Common& common, const QexpArgs& a, std::ostream& out);

std::string csv_field(const std::string& s);
void write_report(const std::vector<verify::CaseResult>& rows, const Common& common, const std::string& suite,
                  std::ostream& out);

}  // namespace ekgw::cli
