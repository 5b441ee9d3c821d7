#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "dimsum/count_min.hpp"
#include "dimsum/dimsum.hpp"
#include "dimsum/exact_oracle.hpp"
#include "dimsum/imsum.hpp"
#include "dimsum/selection.hpp"
#include "dimsum/space_saving_heap.hpp"
#include "dimsum/trace.hpp"

namespace {

const std::vector<dimsum::TraceRecord>& trace() {
  static const auto records = [] {
    dimsum::ZipfSpec spec;
    spec.universe = 1'000'000;
    spec.skew = 1.0;
    spec.count = 1 << 20;
    spec.seed = 7;
    return dimsum::zipf_stream(spec);
  }();
  return records;
}

// Updates per iteration are the whole trace; items/s is updates/s.
template <typename Make>
void run_trace(benchmark::State& state, Make make) {
  const auto& records = trace();
  for (auto _ : state) {
    auto s = make(static_cast<int>(state.range(0)));
    for (const auto& r : records) s.update(r.id, r.weight);
    benchmark::DoNotOptimize(s.total_weight());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(records.size()));
}

void BM_ImSum(benchmark::State& state) {
  run_trace(state, [](int e) { return dimsum::ImSum(dimsum::Params::from_log2(-e, 4.0)); });
}

void BM_DimSum(benchmark::State& state) {
  run_trace(state, [](int e) { return dimsum::DimSum(dimsum::Params::from_log2(-e, 4.0)); });
}

void BM_SpaceSavingHeap(benchmark::State& state) {
  run_trace(state, [](int e) { return dimsum::SpaceSavingHeap::for_epsilon(std::ldexp(1.0, -e)); });
}

void BM_CountMin(benchmark::State& state) {
  run_trace(state, [](int e) { return dimsum::CountMinSketch(std::ldexp(1.0, -e), 0x1p-10, 1); });
}

void BM_Exact(benchmark::State& state) {
  run_trace(state, [](int) { return dimsum::ExactOracle(); });
}

void BM_ImSumGamma(benchmark::State& state) {
  const double gamma = std::ldexp(1.0, static_cast<int>(state.range(1)));
  run_trace(state, [gamma](int e) { return dimsum::ImSum(dimsum::Params::from_log2(-e, gamma)); });
}

void BM_KthLargest(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<dimsum::Volume> values(static_cast<std::size_t>(state.range(0)));
  for (auto& v : values) v = rng() % 100000;
  for (auto _ : state) benchmark::DoNotOptimize(dimsum::kth_largest(values, values.size() / 5 + 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_QueryImSum(benchmark::State& state) {
  dimsum::ImSum s(dimsum::Params::from_log2(-static_cast<int>(state.range(0)), 4.0));
  for (const auto& r : trace()) s.update(r.id, r.weight);
  std::uint64_t id = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.query(id));
    id = id % 1'000'000 + 1;
  }
}

}  // namespace

BENCHMARK(BM_ImSum)->DenseRange(8, 16, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DimSum)->DenseRange(8, 16, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpaceSavingHeap)->DenseRange(8, 16, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CountMin)->DenseRange(8, 16, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Exact)->Arg(0)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ImSumGamma)->ArgsProduct({{12}, {-2, 0, 1, 2, 3, 4}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KthLargest)->RangeMultiplier(8)->Range(64, 1 << 18);
BENCHMARK(BM_QueryImSum)->Arg(10)->Arg(16);
BENCHMARK_MAIN();
