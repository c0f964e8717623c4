#include <benchmark/benchmark.h>

#include "presym/harness/random.hpp"

using namespace presym;

namespace {

Polynomial power(const Polynomial& p, int k) {
  Polynomial out(1);
  for (int i = 0; i < k; ++i) out *= p;
  return out;
}

void polynomial_gcd(benchmark::State& state) {
  const int deg = static_cast<int>(state.range(0));
  DegreeCapScope cap(4 * deg);
  Polynomial g = power(Polynomial::parse("1 + x1 + 2*x2 - x3"), deg);
  Polynomial a = g * power(Polynomial::parse("x1 - x2*x3 + 3"), deg);
  Polynomial b = g * power(Polynomial::parse("x2 + x1*x3 - 1/2"), deg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gcd(a, b));
  }
}
BENCHMARK(polynomial_gcd)->DenseRange(1, 4);

void rational_function_sum(benchmark::State& state) {
  DegreeCapScope cap(64);
  harness::Random rng(2);
  std::vector<Scalar> terms;
  for (int i = 0; i < 8; ++i) {
    terms.emplace_back(rng.polynomial(3, 2, 3, 20), Polynomial::parse("1 + x" + std::to_string(i % 3 + 1) + "^2"));
  }
  for (auto _ : state) {
    Scalar s;
    for (const auto& t : terms) s += t;
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(rational_function_sum);

}  // namespace
