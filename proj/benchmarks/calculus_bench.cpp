#include <benchmark/benchmark.h>

#include "presym/harness/random.hpp"
#include "presym/koszul/linfty.hpp"

using namespace presym;

namespace {

void wedge_product(benchmark::State& state) {
  const Chart chart(static_cast<int>(state.range(0)));
  harness::Random rng(3);
  DifferentialForm a = harness::random_form(rng, chart, 2, {2, 6, 2, 50});
  DifferentialForm b = harness::random_form(rng, chart, 2, {2, 6, 2, 50});
  for (auto _ : state) {
    benchmark::DoNotOptimize(wedge(a, b));
  }
}
BENCHMARK(wedge_product)->DenseRange(4, 8, 2);

void exterior_derivative(benchmark::State& state) {
  const Chart chart(static_cast<int>(state.range(0)));
  harness::Random rng(4);
  DifferentialForm a = harness::random_rational_form(rng, chart, 2, {3, 6, 3, 50});
  for (auto _ : state) {
    benchmark::DoNotOptimize(de_rham(a));
  }
}
BENCHMARK(exterior_derivative)->DenseRange(4, 8, 2);

void schouten_self_bracket(benchmark::State& state) {
  const Chart chart(static_cast<int>(state.range(0)));
  harness::Random rng(5);
  MultivectorField z = harness::random_multivector(rng, chart, 2, {2, 6, 2, 50});
  for (auto _ : state) {
    benchmark::DoNotOptimize(schouten(z, z));
  }
}
BENCHMARK(schouten_self_bracket)->DenseRange(3, 6);

void jacobiator(benchmark::State& state) {
  DegreeCapScope cap(64);
  const Chart chart(4);
  harness::Random rng(6);
  KoszulContext ctx(harness::random_multivector(rng, chart, 2, {2, 3, 2, 50}));
  std::vector<ShiftedForm> xs;
  for (int i = 0; i < state.range(0); ++i) xs.emplace_back(harness::random_form(rng, chart, 1 + i % 2, {2, 2, 2, 50}));
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobiator(xs, ctx));
  }
}
BENCHMARK(jacobiator)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

}  // namespace
