#include <benchmark/benchmark.h>

#include <complex>
#include <numbers>

#include "schlicht/decomposition.hpp"
#include "schlicht/loewner.hpp"
#include "schlicht/polyext.hpp"

using namespace schlicht;

namespace {

const OmittedPair kPair({2.0, 0.0}, {-2.0, 0.0});

void BM_BuildTree(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(decomp::build_full_tree(kPair, n));
    state.SetComplexityN(1 << n);
}
BENCHMARK(BM_BuildTree)->DenseRange(2, 10, 2)->Complexity(benchmark::oN);

void BM_LeafEvaluation(benchmark::State& state) {
    const decomp::LeafEvaluator eval(decomp::build_full_tree(kPair, static_cast<int>(state.range(0))));
    const auto path = segment_path(kPair, {0.6, 0.5});
    for (auto _ : state) benchmark::DoNotOptimize(eval.evaluate(path));
}
BENCHMARK(BM_LeafEvaluation)->DenseRange(2, 8, 2);

void BM_OdeSolve(benchmark::State& state) {
    const auto chain = loewner::LoewnerChain::koebe();
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(loewner::ode_solve(chain, {0.5, 0.3}, t));
}
BENCHMARK(BM_OdeSolve)->Arg(1)->Arg(5)->Arg(20)->Arg(40);

void BM_VariationalIntegral(benchmark::State& state) {
    const auto chain = loewner::LoewnerChain::koebe();
    for (auto _ : state) benchmark::DoNotOptimize(loewner::variational_integral(chain, {0.5, 0.3}, 2.0, 27.0));
}
BENCHMARK(BM_VariationalIntegral);

void BM_Certify(benchmark::State& state) {
    const polyext::PolynomialCandidate p(4, {0.2, {0.0, 0.1}, 0.05});
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(polyext::is_univalent(p, m));
    state.SetComplexityN(m);
}
BENCHMARK(BM_Certify)->RangeMultiplier(2)->Range(512, 16384)->Complexity(benchmark::oNSquared);

void BM_BoundaryDerivativeMin(benchmark::State& state) {
    const polyext::PolynomialCandidate p(3, {0.0, -1.0 / 3.0});
    for (auto _ : state) benchmark::DoNotOptimize(polyext::boundary_derivative_min(p, 4096));
}
BENCHMARK(BM_BoundaryDerivativeMin);

}  // namespace

BENCHMARK_MAIN();
