#include <hosc/distributions.hpp>
#include <hosc/extensions.hpp>
#include <hosc/ode.hpp>
#include <hosc/series.hpp>
#include <hosc/spectrum.hpp>

#include <benchmark/benchmark.h>

#include <numbers>

namespace {

void BM_EvalU(benchmark::State& state)
{
    const double omega = static_cast<double>(state.range(0));
    const auto s = hosc::build_series(omega, hosc::required_terms(omega, 4.0, 1e-15));
    for (auto _ : state) benchmark::DoNotOptimize(hosc::eval_u(s, 4.0));
}
BENCHMARK(BM_EvalU)->Arg(0)->Arg(4)->Arg(16);

void BM_EvalG(benchmark::State& state)
{
    const double omega = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hosc::eval_G(omega));
}
BENCHMARK(BM_EvalG)->Arg(0)->Arg(4)->Arg(16)->Unit(benchmark::kMicrosecond);

void BM_L2Solution(benchmark::State& state)
{
    const double lambda = static_cast<double>(state.range(0)) + 0.5;
    for (auto _ : state) benchmark::DoNotOptimize(hosc::build_l2_solution(lambda, hosc::Side::plus, 1e-10));
}
BENCHMARK(BM_L2Solution)->Arg(0)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_EigenvaluesBTheta(benchmark::State& state)
{
    const hosc::Extension ext = hosc::BTheta{std::numbers::pi / 3.0};
    for (auto _ : state) benchmark::DoNotOptimize(hosc::eigenvalues_in(ext, -1.0, 10.0));
}
BENCHMARK(BM_EigenvaluesBTheta)->Unit(benchmark::kMillisecond);

void BM_DeltaFunctional(benchmark::State& state)
{
    const auto suite = hosc::test_function_suite();
    const auto& f = suite.at(8);
    benchmark::DoNotOptimize(hosc::delta_functional(f));  // builds the w interpolant
    for (auto _ : state) benchmark::DoNotOptimize(hosc::delta_functional(f));
}
BENCHMARK(BM_DeltaFunctional)->Unit(benchmark::kMicrosecond);

} // namespace

BENCHMARK_MAIN();
