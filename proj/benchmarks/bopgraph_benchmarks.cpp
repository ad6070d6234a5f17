#include <benchmark/benchmark.h>

#include "bopgraph/betweenness.hpp"
#include "bopgraph/bop_model.hpp"
#include "bopgraph/classifiers.hpp"
#include "bopgraph/evaluation.hpp"
#include "bopgraph/generators.hpp"

namespace bopgraph {
namespace {

LabeledGraph planted(std::size_t n, std::size_t classes) {
  return generate_planted_partition(classes, n / classes, 0.2, 0.01, 42);
}

LabelAssignment seeds(const LabelAssignment& truth) {
  Rng rng = derive_rng(42, {0});
  return mask_labels(truth, 0.1, rng).train;
}

void BM_BuildModel(benchmark::State& state) {
  const LabeledGraph g = planted(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(build_model(g.graph, 1.0));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BuildModel)->RangeMultiplier(2)->Range(100, 800)->Unit(benchmark::kMillisecond)->Complexity();

void BM_Betweenness(benchmark::State& state) {
  const BopModel m = build_model(planted(static_cast<std::size_t>(state.range(0)), 2).graph, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(bop_betweenness(m));
}
BENCHMARK(BM_Betweenness)->RangeMultiplier(2)->Range(100, 800)->Unit(benchmark::kMillisecond);

void BM_WithinClassBetweenness(benchmark::State& state) {
  const LabeledGraph g = planted(static_cast<std::size_t>(state.range(0)), 2);
  const BopModel m = build_model(g.graph, 1.0);
  const Vector y = g.labels.class_indicator(0);
  for (auto _ : state) benchmark::DoNotOptimize(within_class_betweenness(m, y));
}
BENCHMARK(BM_WithinClassBetweenness)->RangeMultiplier(2)->Range(100, 800)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const auto method = static_cast<Method>(state.range(0));
  const auto classes = static_cast<std::size_t>(state.range(1));
  const LabeledGraph g = planted(400, classes);
  const LabelAssignment train = seeds(g.labels);
  std::optional<double> param;
  if (method_has_parameter(method)) param = default_grid(method)[default_grid(method).size() / 2];
  state.SetLabel(std::string(method_name(method)) + "/" + std::to_string(classes) + " classes");
  for (auto _ : state) benchmark::DoNotOptimize(classify(g.graph, train, {method, param}));
}
BENCHMARK(BM_Classify)
    ->ArgsProduct({benchmark::CreateDenseRange(0, 7, 1), {2, 10}})
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace bopgraph

BENCHMARK_MAIN();
