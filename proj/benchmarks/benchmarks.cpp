#include <benchmark/benchmark.h>

#include <cstdint>
#include <vector>

#include "hsrm/colony.hpp"
#include "hsrm/detector.hpp"
#include "hsrm/graph.hpp"
#include "hsrm/rng.hpp"
#include "hsrm/scenario.hpp"
#include "hsrm/stigmergy.hpp"

namespace {

using namespace hsrm;

void bm_transition_probabilities(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  SensorGraph g = make_complete_graph(n);
  PheromoneField f = init_field(g, 0.1, 0.5);
  Rng rng(17);
  for (EdgeId e = 0; e < f.edge_count(); ++e) {
    f.set_tau(e, 0.01 + rng.uniform_double());
  }
  Robot r;
  r.start_tour(0);
  for (auto _ : state) {
    auto probs = transition_probabilities(g, f, r, 2.0);
    benchmark::DoNotOptimize(probs);
  }
  state.SetItemsProcessed(state.iterations() * (n - 1));
}
BENCHMARK(bm_transition_probabilities)->Arg(10)->Arg(40)->Arg(160);

void bm_global_update(benchmark::State& state) {
  const NodeId n = static_cast<NodeId>(state.range(0));
  SensorGraph g = make_complete_graph(n);
  PheromoneField f = init_field(g, 0.1, 0.5);
  Rng rng(23);
  std::vector<Contribution> contributions;
  for (int c = 0; c < 8; ++c) {
    std::vector<NodeId> walk{static_cast<NodeId>(rng.uniform_index(n))};
    for (int s = 0; s < 10; ++s) {
      const auto& nb = g.neighbors(walk.back());
      walk.push_back(nb[rng.uniform_index(nb.size())]);
    }
    contributions.push_back({walk, 0.5 + rng.uniform_double()});
  }
  for (auto _ : state) {
    f.global_update(contributions);
    benchmark::DoNotOptimize(f.values());
  }
  state.SetItemsProcessed(state.iterations() * f.edge_count());
}
BENCHMARK(bm_global_update)->Arg(10)->Arg(40)->Arg(160);

void bm_full_run(benchmark::State& state) {
  const NodeId side = static_cast<NodeId>(state.range(0));
  SensorGraph g = make_grid_graph(side, side);
  DetectorConfig cfg;
  cfg.m = 20;
  cfg.n_iter = 50;
  cfg.seed = 1;
  AttackScenario sc =
      generate_scenario(g, 1, 6, 5.0, 0.1, 7, cfg.n_iter, cfg.t_c);
  for (auto _ : state) {
    DetectionReport report = run(g, sc, cfg);
    benchmark::DoNotOptimize(report);
  }
  state.SetItemsProcessed(state.iterations() * cfg.m * cfg.n_iter);
}
BENCHMARK(bm_full_run)->Arg(5)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
