#include "ekgw/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "ekgw/modular.hpp"

namespace ekgw {

std::string format_complex(cplx z) {
    std::ostringstream os;
    os.precision(17);
    os << z.real() << (z.imag() < 0 || std::signbit(z.imag()) ? "-" : "+") << std::abs(z.imag()) << "i";
    return os.str();
}

ContourSpec a_cycle(const ModularPoint& m, double eps, int node_count) {
    return {(1.0 + eps) * m.tau(), 1.0, node_count, eps};
}

cplx contour_integrate(const Fn1& f, const ContourSpec& c) {
    if (c.node_count < 16) throw DomainError("contour node_count must be at least 16");
    cplx s = 0.0;
    for (int k = 0; k < c.node_count; ++k) {
        cplx z = c.base + (double(k) / c.node_count) * c.direction;
        cplx v = f(z);
        if (!finite(v))
            throw SingularityError("contour hits singularity at node " + std::to_string(k) + " (z = " +
                                   format_complex(z) + ")");
        s += v;
    }
    return s * c.direction / double(c.node_count);
}

cplx circle_integral(const Fn1& f, cplx center, double radius, int node_count) {
    cplx s = 0.0;
    for (int k = 0; k < node_count; ++k) {
        cplx e = std::polar(1.0, 2.0 * pi * (k + 0.5) / node_count);
        cplx v = f(center + radius * e);
        if (!finite(v)) throw SingularityError("circle integrand is not finite");
        s += v * e;
    }
    // (1/2 pi i) * sum f(z) * i r e^{i phi} * (2 pi / N)
    return s * radius / double(node_count);
}

std::vector<cplx> richardson(const std::vector<cplx>& samples, double ratio_pow) {
    std::size_t n = samples.size();
    std::vector<std::vector<cplx>> t(n);
    std::vector<cplx> diag;
    for (std::size_t i = 0; i < n; ++i) {
        t[i].push_back(samples[i]);
        double f = ratio_pow;
        for (std::size_t j = 1; j <= i; ++j) {
            t[i].push_back(t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) / (f - 1.0));
            f *= ratio_pow;
        }
        diag.push_back(t[i][i]);
    }
    return diag;
}

cplx circle_residue(const Fn1& f, cplx center, double radius, const ResidueOptions& opt) {
    std::vector<cplx> s;
    double r = radius;
    for (int l = 0; l < opt.levels; ++l, r *= 0.5) s.push_back(circle_integral(f, center, r, opt.node_count));
    auto d = richardson(s, 4.0);
    if (d.size() >= 2 && std::abs(d.back() - d[d.size() - 2]) > 10.0 * opt.tolerance)
        throw ConvergenceError("residue not converged");
    return d.back();
}

cplx wirtinger_dbar(const Fn1& f, cplx z, double h) {
    if (h < 1e-6 || h > 1e-3) throw DomainError("finite-difference step must lie in [1e-6, 1e-3]");
    auto D = [&](double s) {
        cplx dx = (f(z + s) - f(z - s)) / (2.0 * s);
        cplx dy = (f(z + I * s) - f(z - I * s)) / (2.0 * s);
        return 0.5 * (dx + I * dy);
    };
    return (4.0 * D(h / 2) - D(h)) / 3.0;
}

cplx wirtinger_d(const Fn1& f, cplx z, double h) {
    if (h < 1e-6 || h > 1e-3) throw DomainError("finite-difference step must lie in [1e-6, 1e-3]");
    auto D = [&](double s) {
        cplx dx = (f(z + s) - f(z - s)) / (2.0 * s);
        cplx dy = (f(z + I * s) - f(z - I * s)) / (2.0 * s);
        return 0.5 * (dx - I * dy);
    };
    return (4.0 * D(h / 2) - D(h)) / 3.0;
}

namespace {

// Smooth step: 0 for t <= 0, 1 for t >= 1.
double smooth_step(double t) {
    if (t <= 0) return 0.0;
    if (t >= 1) return 1.0;
    double a = std::exp(-1.0 / t), b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

}  // namespace

cplx excised_integral(const Fn1& f, const ModularPoint& m, const std::vector<cplx>& poles_in,
                      const ExcisionSpec& e, cplx center) {
    const int N = e.grid_resolution;
    if (N < 16) throw DomainError("excision grid too coarse");
    if (e.excision_radii.empty()) throw DomainError("no excision radii");
    for (std::size_t i = 1; i < e.excision_radii.size(); ++i)
        if (!(e.excision_radii[i] < e.excision_radii[i - 1]))
            throw DomainError("excision radii must be strictly decreasing");
    if (e.excision_radii.back() < 4.0 / N) throw DomainError("smallest excision radius below 4 grid spacings");

    const cplx tau = m.tau();
    // distinct poles modulo the lattice, each placed at its translate nearest the center
    std::vector<cplx> poles;
    for (cplx p : poles_in) {
        cplx r = center + m.reduce(p - center);
        bool dup = false;
        for (cplx o : poles) dup = dup || m.lattice_distance(r - o) < 1e-12;
        if (!dup) poles.push_back(r);
    }
    double sep = m.shortest_vector();
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (std::size_t j = i + 1; j < poles.size(); ++j)
            sep = std::min(sep, m.lattice_distance(poles[i] - poles[j]));
    const double R = std::min(0.3 * m.shortest_vector(), 0.45 * sep);
    const double R1 = 0.5 * R;
    double scale = 1.0;
    if (e.excision_radii.front() >= 0.8 * R1) scale = 0.8 * R1 / e.excision_radii.front();
    if (R < 1e-3) throw DomainError("poles too close together for excision");

    auto bump = [&](double r) { return 1.0 - smooth_step((r - R1) / (R - R1)); };
    auto chi = [&](cplx z) {
        double c = 0.0;
        for (cplx p : poles) {
            double r = m.lattice_distance(z - p);
            if (r < R) c += bump(r);
        }
        return c;
    };

    // smooth periodic part: midpoint grid
    cplx grid = 0.0;
    for (int j = 0; j < N; ++j) {
        double y = -0.5 + (j + 0.5) / N;
        cplx row = 0.0;
        for (int i = 0; i < N; ++i) {
            double x = -0.5 + (i + 0.5) / N;
            cplx z = center + x + y * tau;
            double c = chi(z);
            if (c >= 1.0) continue;
            row += f(z) * (1.0 - c);
        }
        grid += row;
    }
    grid /= double(N) * double(N);
    if (!finite(grid)) throw SingularityError("excised integrand is not finite on the grid");

    // polar parts: (1/Im tau) int int f chi r dr dphi over rho <= r <= R
    using GL = boost::math::quadrature::gauss<double, 30>;
    const int M = e.angular_nodes;
    auto ring = [&](cplx p, double r) {
        cplx s = 0.0;
        for (int k = 0; k < M; ++k) s += f(p + std::polar(r, 2.0 * pi * (k + 0.5) / M));
        return s * (2.0 * pi / M);
    };
    cplx outer = 0.0;
    for (cplx p : poles)
        outer += GL::integrate([&](double r) { return ring(p, r) * bump(r) * r; }, R1, R);

    std::vector<cplx> samples;
    std::vector<double> rho2;
    for (double rho0 : e.excision_radii) {
        double rho = rho0 * scale;
        cplx inner = 0.0;
        for (cplx p : poles) inner += GL::integrate([&](double r) { return ring(p, r) * r; }, rho, R1);
        samples.push_back(grid + (inner + outer) / m.im_tau());
        rho2.push_back(rho * rho);
    }
    if (!finite(samples.back())) throw SingularityError("excised integrand is not finite near a pole");

    // Neville extrapolation to rho^2 = 0 on the finest radii; the estimate of one order
    // lower (dropping the coarsest radius) is the convergence witness
    auto neville = [&](std::size_t k0) {
        std::vector<cplx> p(samples.begin() + k0, samples.end());
        std::vector<double> h(rho2.begin() + k0, rho2.end());
        for (std::size_t lvl = 1; lvl < p.size(); ++lvl)
            for (std::size_t i = p.size() - 1; i >= lvl; --i)
                p[i] = (h[i - lvl] * p[i] - h[i] * p[i - 1]) / (h[i - lvl] - h[i]);
        return p.back();
    };
    std::size_t n = samples.size();
    std::size_t order = std::min<std::size_t>(std::max(e.extrapolation_order, 0), n - 1);
    cplx best = neville(n - 1 - order);
    if (order >= 1) {
        cplx lower = neville(n - order);
        if (std::abs(best - lower) > 10.0 * e.tolerance)
            throw ConvergenceError("excised integral not converged: " + format_complex(lower) + " vs " +
                                   format_complex(best));
    }
    return best;
}

}  // namespace ekgw
