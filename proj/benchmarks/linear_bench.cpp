#include <benchmark/benchmark.h>

#include "presym/harness/random.hpp"

using namespace presym;

namespace {

void bareiss_determinant(benchmark::State& state) {
  harness::Random rng(7);
  const auto n = static_cast<std::size_t>(state.range(0));
  Matrix<Rational> m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.rational(50);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(determinant(m));
  }
}
BENCHMARK(bareiss_determinant)->RangeMultiplier(2)->Range(4, 32);

void pfaffian_of_skew(benchmark::State& state) {
  harness::Random rng(8);
  Matrix<Rational> m = harness::random_skew(rng, static_cast<std::size_t>(state.range(0))).sharp();
  for (auto _ : state) {
    benchmark::DoNotOptimize(pfaffian(m));
  }
}
BENCHMARK(pfaffian_of_skew)->RangeMultiplier(2)->Range(4, 32);

void f_map(benchmark::State& state) {
  harness::Random rng(9);
  const auto n = static_cast<std::size_t>(state.range(0));
  SkewBilinear<Rational> eta = harness::random_rank_skew(rng, n, n - 2 + n % 2, 50);
  Subspace<Rational> k = rank_and_kernel(eta).kernel;
  Subspace<Rational> g = harness::random_complement(rng, k, 50);
  Bivector<Rational> z = Z_from_eta_G(eta, g);
  SkewBilinear<Rational> beta = harness::random_adapted_skew(rng, k, g, true, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(F_map(beta, z));
  }
}
BENCHMARK(f_map)->DenseRange(4, 8, 2);

}  // namespace
