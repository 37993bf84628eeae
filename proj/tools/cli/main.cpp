#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "cli.hpp"

namespace {

using namespace ekgw;
using namespace ekgw::cli;

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedError& e) {
        std::cerr << "error: unsupported: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Eisenstein-Kronecker functions, regularized integrals and Gromov-Witten generating series"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key = value config file (also read from EKGW_CONFIG)")->envname("EKGW_CONFIG");

    Common common;
    app.add_option("--tau", common.tau, "modular parameter a+bi with b > 0");
    app.add_option("--seed", common.seed, "seed for the sampled verification points");
    app.add_option("--profile", common.profile, "tolerance profile")
        ->check(CLI::IsMember({"strict", "default", "fast"}));
    app.add_option("--nodes", common.nodes, "contour nodes for numeric integrals (0: default)")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--format", common.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_flag("--json", common.json, "shorthand for --format json");
    app.add_flag("--timing", common.timing, "record wall-clock runtimes in reports");

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "evaluate one function at a point");
    eval->add_option("--fn", ev.fn, "function name")
        ->required()
        ->check(CLI::IsMember({"theta", "thetahat", "Z", "Zhat", "wp", "zeta", "G", "Ghat", "eta1", "A", "ek", "E",
                               "S", "varpi", "varpi_det", "That", "Gn", "F"}));
    eval->add_option("--z", ev.z, "point z");
    eval->add_option("--c", ev.c, "Kronecker parameter c");
    eval->add_option("--m", ev.m, "index of e_m / E_m");
    eval->add_option("--k", ev.k, "Eisenstein weight");
    eval->add_flag("--hat", ev.hat, "completed (almost-holomorphic) version");
    eval->add_option("--variant", ev.variant, "E_m variant")->check(CLI::IsMember({"raw", "star", "star_hat"}));
    eval->add_option("--method", ev.method, "Eisenstein method")->check(CLI::IsMember({"qseries", "lattice"}));
    eval->add_option("--zs", ev.zs, "z-values for varpi")->delimiter(',');
    eval->add_option("--ws", ev.ws, "w-values for varpi, That, Gn, F")->delimiter(',');

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> suites{"all"};
    for (const auto& s : verify::suite_names()) suites.push_back(s);
    verify->add_option("--suite", va.suite, "suite to run")->check(CLI::IsMember(suites));
    verify->add_option("--n", va.n, "restrict size-dependent cases to one n")->check(CLI::NonNegativeNumber);
    verify->add_option("--out", va.out, "write the report to a file instead of stdout");

    GwArgs ga;
    auto* gw = app.add_subcommand("gw", "closed-form and numeric That_n, Ghat_n");
    gw->add_option("--n", ga.n, "number of points")->check(CLI::Range(1, 8));
    gw->add_option("--w", ga.w, "w-values (comma separated)")->delimiter(',');
    gw->add_option("--mode", ga.mode, "closed, numeric or both")->check(CLI::IsMember({"closed", "numeric", "both"}));
    gw->add_flag("--hat", ga.hat, "report the completed closed forms");

    QexpArgs qa;
    auto* qexp = app.add_subcommand("qexp", "exact q-expansions");
    qexp->add_option("--target", qa.target, "series")->check(CLI::IsMember({"theta", "Z", "G2k", "e", "T"}));
    qexp->add_option("--order", qa.order, "truncation order in q")->check(CLI::Range(0, 20));
    qexp->add_option("--k", qa.k, "Eisenstein weight for G2k");
    qexp->add_option("--m", qa.m, "index for e")->check(CLI::Range(1, 8));
    qexp->add_option("--n", qa.n, "number of points for T")->check(CLI::Range(1, 3));
    qexp->add_option("--out", qa.out, "write rows to a file instead of stdout");
    qexp->add_flag("--check", qa.check, "compare the truncated series with direct evaluation");
    qexp->add_option("--check-tol", qa.check_tol, "relative tolerance for --check");
    qexp->add_option("--points", qa.points, "evaluation points for --check")->delimiter(',');

    for (auto* sub : {eval, verify, gw, qexp}) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    return guarded([&] {
        if (*eval) return run_eval(common, ev, std::cout);
        if (*verify) {
            if (va.out.empty()) return run_verify(common, va, std::cout);
            std::ofstream f(va.out);
            if (!f) throw std::runtime_error("cannot open " + va.out);
            return run_verify(common, va, f);
        }
        if (*gw) return run_gw(common, ga, std::cout);
        return run_qexp(common, qa, std::cout);
    });
}
