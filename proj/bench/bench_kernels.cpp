// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "corpusforge/quality_gates.hpp"
#include "corpusforge/report.hpp"
#include "demo_corpus.hpp"

using namespace corpusforge;

namespace {

struct EvalData {
  Manifest m;
  std::vector<EvalPair> pairs;
};

const EvalData& eval_data() {
  static const EvalData d = [] {
    EvalData e;
    demo::CorpusShape shape{"bench", 0, 20, 20, 100, 2.0, 20.0, 1};
    e.m = demo::make_corpus(shape);
    Rng r(2);
    for (const auto& u : e.m.entries) e.pairs.push_back({u.id, u.text, demo::make_text(r, 10 + r.below(40))});
    return e;
  }();
  return d;
}

std::vector<DurationSample> duration_data() {
  Rng r(3);
  std::vector<DurationSample> s(1 << 20);
  for (auto& x : s) x = {0.1 + 20.0 * r.uniform(), 0.1 + 20.0 * r.uniform()};
  return s;
}

void BM_EvaluateSerial(benchmark::State& st) {
  const auto& d = eval_data();
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_serial(d.pairs, d.m));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(d.pairs.size()));
}

void BM_EvaluateParallel(benchmark::State& st) {
  const auto& d = eval_data();
  for (auto _ : st) benchmark::DoNotOptimize(evaluate(d.pairs, d.m, static_cast<int>(st.range(0))));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(d.pairs.size()));
}

void BM_DurationFilterSerial(benchmark::State& st) {
  static const auto s = duration_data();
  for (auto _ : st) benchmark::DoNotOptimize(duration_filter_serial(s, {0.7, 1.5}));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.size()));
}

void BM_DurationFilterParallel(benchmark::State& st) {
  static const auto s = duration_data();
  for (auto _ : st) benchmark::DoNotOptimize(duration_filter(s, {0.7, 1.5}, static_cast<int>(st.range(0))));
  st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(s.size()));
}

}  // namespace

BENCHMARK(BM_EvaluateSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DurationFilterSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DurationFilterParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
