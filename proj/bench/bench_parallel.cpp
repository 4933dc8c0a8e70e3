// Serial reference vs OpenMP kernels.
#include <benchmark/benchmark.h>

#include <vector>

#include "lzeros/analysis.hpp"
#include "lzeros/solver.hpp"

using namespace lzeros;

namespace {

const PrecisionPolicy& policy() {
  static const PrecisionPolicy p = [] {
    auto q = PrecisionPolicy::for_digits(10);
    q.initial_delta = 1e-8;
    q.delta_shrink = 1e6;
    return q;
  }();
  return p;
}

// Seeds stand in for zeros; they have the right density and ordering.
const std::vector<Ordinate>& seed_ordinates() {
  static const std::vector<Ordinate> z = [] {
    std::vector<Ordinate> v;
    const auto zeta = LFunctionFamily::zeta();
    for (int64_t n = 1; n <= 20000; ++n) v.push_back({n, seed(zeta, n, Precision::from_digits(17)).to_double()});
    return v;
  }();
  return z;
}

void BM_SolveRangeSerial(benchmark::State& st) {
  const auto zeta = LFunctionFamily::zeta();
  for (auto _ : st) benchmark::DoNotOptimize(solve_range_serial(zeta, 1000, 1000 + st.range(0) - 1, policy(), Mode::Asymptotic));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_SolveRangeOpenMP(benchmark::State& st) {
  const auto zeta = LFunctionFamily::zeta();
  for (auto _ : st)
    benchmark::DoNotOptimize(solve_range(zeta, 1000, 1000 + st.range(0) - 1, policy(), Mode::Asymptotic, 0));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

void BM_PairCorrelationSerial(benchmark::State& st) {
  const auto& z = seed_ordinates();
  for (auto _ : st) benchmark::DoNotOptimize(pair_correlation_serial(z));
}

void BM_PairCorrelationOpenMP(benchmark::State& st) {
  const auto& z = seed_ordinates();
  for (auto _ : st) benchmark::DoNotOptimize(pair_correlation(z, BinSpec{}, 0));
}

}  // namespace

BENCHMARK(BM_SolveRangeSerial)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SolveRangeOpenMP)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairCorrelationSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairCorrelationOpenMP)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
