#include "triplel/central.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <map>

using namespace triplel;

namespace {

const NewformData& level11(std::int64_t nmax) {
  static std::map<std::int64_t, NewformData> memo;
  auto it = memo.find(nmax);
  if (it == memo.end()) it = memo.emplace(nmax, enumerate_newforms(11, 2, nmax).at(0)).first;
  return it->second;
}

void BM_ClassEnumeration(benchmark::State& state) {
  const std::int64_t m2 = state.range(0);
  auto alg = make_algebra(11);
  for (auto _ : state) {
    auto cs = right_ideal_classes(eichler_order(alg, 11, m2));
    benchmark::DoNotOptimize(cs.unit_orders.data());
  }
}
BENCHMARK(BM_ClassEnumeration)->Arg(1)->Arg(3)->Arg(2 * 3)->Unit(benchmark::kMillisecond);

void BM_BrandtMatrices(benchmark::State& state) {
  auto cs = std::make_shared<const IdealClassSet>(right_ideal_classes(eichler_order(make_algebra(11), 11, 3)));
  auto space = std::make_shared<const FormSpace>(cs, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    BrandtEngine eng(space, 100);
    benchmark::DoNotOptimize(eng.matrix(97));
  }
}
BENCHMARK(BM_BrandtMatrices)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_NewformCoefficients(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_newforms(33, 2, state.range(0)));
}
BENCHMARK(BM_NewformCoefficients)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_DirichletCoefficients(benchmark::State& state) {
  const auto& f = level11(20000);
  auto t = make_triple(f, f, f);
  for (auto _ : state) benchmark::DoNotOptimize(dirichlet_coeffs(t, state.range(0)));
}
BENCHMARK(BM_DirichletCoefficients)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_CentralLambda(benchmark::State& state) {
  const auto& f = level11(8000);
  auto t = make_triple(f, f, f);
  const double prec = std::pow(10.0, -static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_value(t, cplx(2, 0), prec));
}
BENCHMARK(BM_CentralLambda)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_PeterssonQuadrature(benchmark::State& state) {
  const auto& f = level11(8000);
  for (auto _ : state) benchmark::DoNotOptimize(petersson_quadrature(f, 11));
}
BENCHMARK(BM_PeterssonQuadrature)->Unit(benchmark::kMillisecond);

void BM_HeightPairing(benchmark::State& state) {
  auto f33 = enumerate_newforms(33, 2, 200).at(0);
  auto t = make_triple(level11(200), level11(200), f33);
  auto d = select_decomposition(t);
  auto lambda = lambda_assignment(t);
  for (auto _ : state) benchmark::DoNotOptimize(height_pairing(t, d, lambda));
}
BENCHMARK(BM_HeightPairing)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
