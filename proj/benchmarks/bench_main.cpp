#include <benchmark/benchmark.h>

#include "ekgw/gw.hpp"
#include "ekgw/kronecker.hpp"
#include "ekgw/qseries.hpp"
#include "ekgw/theta.hpp"

namespace {

using namespace ekgw;

const ModularPoint& point() {
    static const ModularPoint m(cplx(0.1, 1.1));
    return m;
}

void BM_theta(benchmark::State& state) {
    cplx z(0.23, 0.17);
    for (auto _ : state) benchmark::DoNotOptimize(theta(z, point()));
}
BENCHMARK(BM_theta);

void BM_ek_coeffs(benchmark::State& state) {
    const int M = int(state.range(0));
    cplx z(0.23, 0.17);
    for (auto _ : state) {
        z += 1e-12;  // defeat the coefficient cache
        benchmark::DoNotOptimize(ek_coeffs(z, point(), true, M));
    }
}
BENCHMARK(BM_ek_coeffs)->Arg(4)->Arg(8);

void BM_excised_integral(benchmark::State& state) {
    ExcisionSpec e;
    e.grid_resolution = int(state.range(0));
    auto f = [](cplx z) { return ek_coeff(2, z, point(), true); };
    for (auto _ : state) benchmark::DoNotOptimize(excised_integral(f, point(), {0.0}, e));
}
BENCHMARK(BM_excised_integral)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_That_numeric(benchmark::State& state) {
    std::vector<cplx> w{{0.21, 0.03}, {0.37, -0.02}};
    for (auto _ : state) benchmark::DoNotOptimize(That_numeric(w, point(), {int(state.range(0))}));
}
BENCHMARK(BM_That_numeric)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_qexpand(benchmark::State& state) {
    QExpandParams p;
    p.q_order = int(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(qexpand(QTarget(state.range(0)), p));
}
BENCHMARK(BM_qexpand)
    ->Args({int(QTarget::theta), 20})
    ->Args({int(QTarget::Z), 10})
    ->Args({int(QTarget::e_m), 10})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
