#include <benchmark/benchmark.h>

#include "esqkd/basis.hpp"
#include "esqkd/es_layout.hpp"
#include "esqkd/inference.hpp"
#include "esqkd/measure.hpp"
#include "esqkd/protocols.hpp"

using namespace esqkd;

static void BM_MeasureBell(benchmark::State& state) {
  const auto layout = EsLayout::multiparty(static_cast<unsigned>(state.range(0)));
  const auto initial = prepare_initial_state(layout, EsInitialLabels::zeros(layout));
  RandomSource rng(1, 0);
  for (auto _ : state) {
    auto result = measure_bell(initial, "1", "2", rng);
    benchmark::DoNotOptimize(result);
  }
  state.counters["qubits"] = static_cast<double>(initial.num_qubits());
}
BENCHMARK(BM_MeasureBell)->Arg(3)->Arg(4)->Arg(5);

static void BM_BuildInferenceTable(benchmark::State& state) {
  const auto layout = EsLayout::for_parties(static_cast<unsigned>(state.range(0)));
  const auto labels = EsInitialLabels::zeros(layout);
  for (auto _ : state) {
    auto table = build_inference_table(layout, labels);
    benchmark::DoNotOptimize(table);
  }
}
BENCHMARK(BM_BuildInferenceTable)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_EsRound(benchmark::State& state) {
  const unsigned parties = static_cast<unsigned>(state.range(0));
  const EsSession session(parties);
  EveStrategy eve;
  if (state.range(1) != 0) {
    eve.kind = parties == 2 ? EveKind::two_party_intercept : EveKind::multiparty_intercept;
  }
  std::uint64_t round = 0;
  for (auto _ : state) {
    RandomSource rng(7, round);
    auto record = session.run_round(round++, eve, rng);
    benchmark::DoNotOptimize(record);
  }
}
BENCHMARK(BM_EsRound)->ArgsProduct({{2, 3, 4}, {0, 1}})->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
