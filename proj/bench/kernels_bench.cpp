#include <benchmark/benchmark.h>

#include <random>

#include "curvelim/exactpoly/kernels.hpp"
#include "curvelim/exactpoly/resultant.hpp"
#include "curvelim/oracle/spot_check.hpp"
#include "support/random_poly.hpp"

using namespace curvelim;

namespace {

VarTablePtr vars() {
  static const VarTablePtr t = VarTable::make({"H", "K", "R", "c", "s"});
  return t;
}

Polynomial operand(std::uint64_t seed, std::size_t terms) {
  std::mt19937_64 rng(seed);
  testing::RandomPolySpec spec{terms, 8, 1000, false};
  Polynomial p(vars());
  while (p.size() < terms / 2) p += testing::random_poly(rng, vars(), spec);
  return p;
}

void BM_MulSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Polynomial a = operand(1, n), b = operand(2, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mul_serial(a, b));
  state.counters["terms"] = static_cast<double>(a.size() * b.size());
}

void BM_MulParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Polynomial a = operand(1, n), b = operand(2, n);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::mul_parallel(a, b));
  state.counters["terms"] = static_cast<double>(a.size() * b.size());
}

PolyMatrix sylvester(unsigned degree) {
  std::mt19937_64 rng(3);
  testing::RandomPolySpec spec{3, 2, 50, false};
  Polynomial p = testing::random_univariate_dense(rng, vars(), 1, degree, spec);
  Polynomial q = testing::random_univariate_dense(rng, vars(), 1, degree - 1, spec);
  return sylvester_matrix(p, q, 1);
}

void BM_BareissSerial(benchmark::State& state) {
  PolyMatrix m = sylvester(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(determinant_bareiss(m));
}

void BM_BareissParallel(benchmark::State& state) {
  PolyMatrix m = sylvester(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(determinant_bareiss_parallel(m));
}

void spot_check(benchmark::State& state, bool parallel) {
  Polynomial a = operand(4, 60), b = operand(5, 60);
  Polynomial prod = a * b;
  oracle::SpotCheckConfig cfg;
  cfg.trials = static_cast<unsigned>(state.range(0));
  cfg.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(oracle::check_identity(a * b, prod, cfg));
}

void BM_SpotCheckSerial(benchmark::State& state) { spot_check(state, false); }
void BM_SpotCheckParallel(benchmark::State& state) { spot_check(state, true); }

}  // namespace

BENCHMARK(BM_MulSerial)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MulParallel)->Arg(64)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BareissSerial)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BareissParallel)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpotCheckSerial)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpotCheckParallel)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
