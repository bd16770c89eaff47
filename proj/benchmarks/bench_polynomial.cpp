#include <benchmark/benchmark.h>

#include <random>

#include "dualtaylor/polynomial.hpp"

using dualtaylor::CenteredPolynomial;
using dualtaylor::ComplexScalar;

namespace {

CenteredPolynomial make_poly(int degree) {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<ComplexScalar> coeffs(static_cast<std::size_t>(degree) + 1);
  for (auto& c : coeffs) c = {dist(rng), dist(rng)};
  return CenteredPolynomial({0, 0}, std::move(coeffs));
}

void BM_TaylorShift(benchmark::State& state) {
  const CenteredPolynomial p = make_poly(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.recentered({0.3, -0.4}));
  }
}
BENCHMARK(BM_TaylorShift)->Arg(32)->Arg(128)->Arg(512);

void BM_Evaluate(benchmark::State& state) {
  const CenteredPolynomial p = make_poly(static_cast<int>(state.range(0)));
  const ComplexScalar z{0.7, 0.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.evaluate(z));
  }
}
BENCHMARK(BM_Evaluate)->Arg(32)->Arg(256)->Arg(1024);

}  // namespace
