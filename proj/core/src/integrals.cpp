#include "ekgw/integrals.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "ekgw/kronecker.hpp"

namespace ekgw {

IteratedContourPlan make_plan(const std::vector<int>& ordering, int node_count, double spacing) {
    IteratedContourPlan plan;
    plan.ordering = ordering;
    plan.node_count = node_count;
    std::size_t n = ordering.size();
    for (std::size_t k = 0; k < n; ++k) plan.offsets.push_back(double(n - k) * spacing);
    return plan;
}

namespace {

void validate(const IteratedContourPlan& plan) {
    std::size_t n = plan.ordering.size();
    if (n == 0 || plan.offsets.size() != n) throw DomainError("contour plan: ordering and offsets differ in length");
    if (plan.node_count < 2) throw DomainError("contour plan: node_count < 2");
    std::vector<int> sorted = plan.ordering;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < n; ++k)
        if (sorted[k] != int(k) + 1) throw DomainError("contour plan: ordering is not a permutation of 1..n");
    for (std::size_t k = 0; k < n; ++k) {
        if (!(plan.offsets[k] > 0)) throw DomainError("contour plan: offsets must be positive");
        if (k > 0 && !(plan.offsets[k] < plan.offsets[k - 1]))
            throw DomainError("contour plan: offsets must strictly decrease along the ordering");
    }
}

// base point of the contour of each variable, indexed by variable - 1
std::vector<cplx> bases(const IteratedContourPlan& plan, const ModularPoint& m) {
    std::vector<cplx> b(plan.ordering.size());
    for (std::size_t k = 0; k < plan.ordering.size(); ++k)
        b[plan.ordering[k] - 1] = (1.0 + plan.offsets[k]) * m.tau();
    return b;
}

}  // namespace

void check_plan(const IteratedContourPlan& plan, const ModularPoint& m, const std::vector<PoleForm>& poles) {
    validate(plan);
    std::size_t n = plan.ordering.size();
    auto b = bases(plan, m);
    int N = plan.node_count;
    for (const auto& p : poles) {
        if (p.coeffs.size() != n) throw DomainError("pole form has the wrong number of coefficients");
        // the form depends on the grid only through sum_k c_k x_k mod 1, which takes
        // values in the multiples of 1/N plus the midpoint shifts
        cplx base = p.constant;
        int shift = 0;
        for (std::size_t k = 0; k < n; ++k) {
            base += double(p.coeffs[k]) * b[k];
            shift += p.coeffs[k];
        }
        for (int j = 0; j < N; ++j) {
            cplx v = base + (double(j) + 0.5 * shift) / N;
            if (m.lattice_distance(v) < pole_clearance)
                throw SingularityError("pole proximity on the contour grid; re-plan with smaller offsets");
        }
    }
}

cplx iterated_A_integral(const MultiFn& f, const IteratedContourPlan& plan, const ModularPoint& m,
                         const std::vector<PoleForm>& poles) {
    check_plan(plan, m, poles);
    std::size_t n = plan.ordering.size();
    auto b = bases(plan, m);
    int N = plan.node_count;
    std::vector<int> idx(n, 0);
    std::vector<cplx> z(n);
    Neumaier sum;
    while (true) {
        for (std::size_t k = 0; k < n; ++k) z[k] = b[k] + (idx[k] + 0.5) / N;
        cplx v = f(z);
        if (!finite(v)) throw SingularityError("integrand not finite on the contour grid");
        sum.add(v);
        std::size_t k = 0;
        while (k < n && ++idx[k] == N) idx[k++] = 0;
        if (k == n) break;
    }
    return sum.value() / std::pow(double(N), double(n));
}

std::vector<cplx> all_orderings(const MultiFn& f, int n, int node_count, const ModularPoint& m,
                                const std::vector<PoleForm>& poles, double spacing) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<std::future<cplx>> jobs;
    do {
        IteratedContourPlan plan = make_plan(perm, node_count, spacing);
        jobs.push_back(std::async(std::launch::deferred, [&f, plan, &m, &poles] {
            return iterated_A_integral(f, plan, m, poles);
        }));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<cplx> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

cplx averaged_A_integral(const MultiFn& f, int n, int node_count, const ModularPoint& m,
                         const std::vector<PoleForm>& poles, double spacing, bool allow_n4) {
    if (n < 1) throw DomainError("averaged_A_integral: n < 1");
    if (n > 4 || (n == 4 && (!allow_n4 || node_count > 32)))
        throw DomainError("averaged_A_integral: n <= 3 (n = 4 needs the explicit flag and node_count <= 32)");
    auto vals = all_orderings(f, n, node_count, m, poles, spacing);
    cplx s = 0.0;
    for (cplx v : vals) s += v;
    return s / double(vals.size());
}

double ordering_independence_check(const std::vector<int>& ms, const std::vector<cplx>& params,
                                   const ModularPoint& m, int node_count, bool hat, double spacing) {
    int n = int(ms.size());
    if (params.size() != ms.size()) throw DomainError("ordering_independence_check: one parameter per factor");
    if (n < 1 || n > 4) throw DomainError("ordering_independence_check: 1 <= n <= 4");
    int max_m = *std::max_element(ms.begin(), ms.end());
    MultiFn f = [&](const std::vector<cplx>& t) {
        cplx v = 1.0;
        for (int k = 0; k < n; ++k) v *= ek_coeffs(t[k] - params[k], m, hat, max_m)[ms[k]];
        return v;
    };
    std::vector<PoleForm> poles;
    for (int k = 0; k < n; ++k) {
        PoleForm p;
        p.coeffs.assign(n, 0);
        p.coeffs[k] = 1;
        p.constant = -params[k];
        poles.push_back(p);
    }
    auto vals = all_orderings(f, n, node_count, m, poles, spacing);
    double dev = 0;
    for (std::size_t a = 0; a < vals.size(); ++a)
        for (std::size_t b = a + 1; b < vals.size(); ++b) dev = std::max(dev, std::abs(vals[a] - vals[b]));
    return dev;
}

cplx A_integral_at_height(const std::function<cplx(cplx)>& f, double t, const ModularPoint& m, int node_count) {
    cplx base = t * m.tau();
    cplx s = 0.0;
    for (int j = 0; j < node_count; ++j) s += f(base + (j + 0.5) / node_count);
    return s / double(node_count);
}

}  // namespace ekgw
