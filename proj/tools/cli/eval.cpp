#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>

#include "cli.hpp"
#include "ekgw/gw.hpp"
#include "ekgw/kronecker.hpp"
#include "ekgw/theta.hpp"
#include "support.hpp"

namespace ekgw::cli {

namespace {

double parse_real(const std::string& s, const std::string& whole) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::string t = s[0] == '+' ? s.substr(1) : s;
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) throw DomainError("cannot parse complex number '" + whole + "'");
    return v;
}

std::vector<int> range1(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return v;
}

}  // namespace

cplx parse_complex(const std::string& input) {
    std::string s;
    for (char ch : input)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw DomainError("empty complex number");
    char last = s.back();
    if (last != 'i' && last != 'j' && last != 'I' && last != 'J') return {parse_real(s, input), 0.0};
    s.pop_back();
    // split at the last sign that is not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {0.0, parse_real(s, input)};
    return {parse_real(s.substr(0, split), input), parse_real(s.substr(split), input)};
}

std::vector<cplx> parse_complex_list(const std::vector<std::string>& items) {
    std::vector<cplx> out;
    for (const auto& s : items) out.push_back(parse_complex(s));
    return out;
}

ModularPoint modular_point(const Common& c) {
    cplx tau = parse_complex(c.tau.empty() ? default_tau : c.tau);
    if (!(tau.imag() > 0)) throw DomainError("tau must lie in the upper half plane, got " + verify::fmt(tau));
    return ModularPoint(tau);
}

ordered_json to_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

int run_eval(const Common& common, const EvalArgs& a, std::ostream& out) {
    const ModularPoint m = modular_point(common);
    const std::string& fn = a.fn;
    ordered_json args;
    args["tau"] = to_json(m.tau());
    auto z = [&] {
        cplx v = parse_complex(a.z);
        args["z"] = to_json(v);
        return v;
    };
    auto list = [&](const char* key, const std::vector<std::string>& items) {
        auto v = parse_complex_list(items);
        ordered_json j = ordered_json::array();
        for (cplx x : v) j.push_back(to_json(x));
        args[key] = j;
        return v;
    };
    auto hat = [&] {
        args["hat"] = a.hat;
        return a.hat;
    };

    cplx value;
    if (fn == "theta") value = theta(z(), m, hat());
    else if (fn == "thetahat") value = theta(z(), m, true);
    else if (fn == "Z") value = Z(z(), m, hat());
    else if (fn == "Zhat") value = Z(z(), m, true);
    else if (fn == "wp") value = weierstrass_p(z(), m);
    else if (fn == "zeta") value = weierstrass_zeta(z(), m);
    else if (fn == "G" || fn == "Ghat") {
        args["k"] = a.k;
        if (fn == "Ghat") {
            value = eisenstein_G_hat(a.k, m);
        } else {
            args["method"] = a.method;
            value = eisenstein_G(a.k, m,
                                 a.method == "lattice" ? EisensteinMethod::lattice_eisenstein_summation
                                                       : EisensteinMethod::q_series);
        }
    } else if (fn == "eta1") value = eta1(m, hat());
    else if (fn == "A") value = A_of_z(z(), m);
    else if (fn == "ek") {
        args["m"] = a.m;
        value = ek_coeff(a.m, z(), m, hat());
    } else if (fn == "E") {
        args["m"] = a.m;
        args["variant"] = a.variant;
        EKVariant v = a.variant == "star" ? EKVariant::star : a.variant == "star_hat" ? EKVariant::star_hat : EKVariant::raw;
        value = ek_series(a.m, z(), m, v);
    } else if (fn == "S") {
        cplx c = parse_complex(a.c);
        args["c"] = to_json(c);
        value = kronecker_S(c, z(), m, hat());
    } else if (fn == "varpi" || fn == "varpi_det") {
        auto zs = list("zs", a.zs);
        auto ws = list("ws", a.ws);
        if (zs.size() != ws.size() || zs.empty()) throw DomainError("varpi needs --zs and --ws of equal, nonzero length");
        value = fn == "varpi" ? varpi(zs, ws, m) : varpi_det(zs, ws, m, hat());
    } else {
        auto ws = list("ws", a.ws);
        if (ws.empty()) throw DomainError(fn + " needs --ws");
        int n = int(ws.size());
        if (fn == "That") value = That_closed(range1(n), ws, m, hat());
        else if (fn == "Gn") value = Ghat_closed(range1(n), ws, m, hat());
        else value = F_pointwise(ws, m);
    }

    if (common.output_format() == "json") {
        ordered_json j;
        j["fn"] = fn;
        j["args"] = args;
        j["value"] = to_json(value);
        out << j.dump(2) << "\n";
    } else {
        out << verify::fmt(value) << "\n";
    }
    return 0;
}

int run_gw(const Common& common, const GwArgs& a, std::ostream& out) {
    const ModularPoint m = modular_point(common);
    static const std::vector<cplx> default_w{{0.21, 0.03}, {0.37, -0.02}, {0.13, 0.01}};
    std::vector<cplx> w = parse_complex_list(a.w);
    if (w.empty()) {
        if (a.n > int(default_w.size())) throw DomainError("give --w for n > 3");
        w.assign(default_w.begin(), default_w.begin() + a.n);
    }
    if (int(w.size()) != a.n) throw DomainError("--w has " + std::to_string(w.size()) + " values, --n is " + std::to_string(a.n));
    GWPoint point(w, m);  // rejects subset sums on the lattice

    const auto S = range1(a.n);
    const bool closed = a.mode != "numeric", numeric = a.mode != "closed";
    ordered_json j;
    j["n"] = a.n;
    j["tau"] = to_json(m.tau());
    j["w"] = ordered_json::array();
    for (cplx x : w) j["w"].push_back(to_json(x));
    j["hat"] = a.hat;
    j["mode"] = a.mode;
    cplx T_hol = That_closed(S, w, m, false);
    if (closed) {
        j["That"] = to_json(That_closed(S, w, m, a.hat));
        j["Ghat"] = to_json(Ghat_closed(S, w, m, a.hat));
        if (a.hat) j["That_holomorphic"] = to_json(T_hol);
    }
    if (numeric) {
        if (a.n > 3) throw DomainError("numeric mode needs n <= 3");
        NumericOptions opt;
        opt.node_count = common.nodes > 0 ? common.nodes : (a.n == 3 ? 64 : 128);
        cplx v = That_numeric(w, m, opt);
        j["nodes"] = opt.node_count;
        j["That_numeric"] = to_json(v);
        // the contour average computes the holomorphic limit
        j["deviation"] = std::abs(v - T_hol);
    }

    if (common.output_format() == "json") {
        out << j.dump(2) << "\n";
        return 0;
    }
    for (const auto& [key, val] : j.items()) {
        if (key == "w") continue;
        out << key << " = ";
        if (val.is_array() && val.size() == 2 && val[0].is_number()) out << verify::fmt(cplx(val[0], val[1]));
        else if (val.is_number_float()) out << verify::fmt(double(val));
        else if (val.is_string()) out << val.get<std::string>();
        else out << val.dump();
        out << "\n";
    }
    return 0;
}

}  // namespace ekgw::cli
