// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "egeq/crt.hpp"
#include "egeq/enumerate.hpp"
#include "egeq/greedy.hpp"

namespace {

void BM_EnumerateSerial(benchmark::State& state) {
  const auto k = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(egeq::enumerate_solutions_serial(k));
}

void BM_EnumerateOmp(benchmark::State& state) {
  egeq::EnumerateOptions options;
  options.jobs = static_cast<int>(state.range(1));
  const auto k = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(egeq::enumerate_solutions(k, options));
}

void BM_SweepSerial(benchmark::State& state) {
  const auto n_max = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(egeq::sweep_serial(2, n_max));
}

void BM_SweepOmp(benchmark::State& state) {
  const auto n_max = static_cast<std::uint64_t>(state.range(0));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(egeq::sweep(2, n_max, egeq::kDefaultMaxK, jobs));
}

const std::vector<egeq::ProgressionRow>& rows() {
  static const auto all = egeq::table1_rows();
  return all;
}

void BM_SubsetScanSerial(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(egeq::scan_subsets_serial(rows(), m));
}

void BM_SubsetScanOmp(benchmark::State& state) {
  const auto m = static_cast<unsigned>(state.range(0));
  const int jobs = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(egeq::scan_subsets(rows(), m, jobs));
}

void jobs_args(benchmark::internal::Benchmark* b, std::int64_t size) {
  const int max_jobs = omp_get_max_threads();
  for (int jobs = 1; jobs <= max_jobs; jobs *= 2) b->Args({size, jobs});
  if ((max_jobs & (max_jobs - 1)) != 0) b->Args({size, max_jobs});
}

}  // namespace

BENCHMARK(BM_EnumerateSerial)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateOmp)->Apply([](auto* b) { jobs_args(b, 8); jobs_args(b, 10); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepOmp)->Apply([](auto* b) { jobs_args(b, 1000); })->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubsetScanSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SubsetScanOmp)->Apply([](auto* b) { jobs_args(b, 4); jobs_args(b, 8); })->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
