#include <benchmark/benchmark.h>

#include <cmath>

#include "gfront/diagnostics.hpp"
#include "gfront/integrator.hpp"
#include "gfront/weno.hpp"

namespace {

using namespace gfront;

ScalarField2D corrugated_field(const Grid& g) {
  auto f = make_field(g, kTwoPi);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = 0; j < g.ny; ++j) {
      f.at(i, j) = 0.4 * std::sin(g.x(i)) * std::cos(g.y(j)) - 0.1 * std::cos(2.0 * g.y(j));
    }
  }
  return f;
}

SolverConfig config_for(int n, bool strain) {
  SolverConfig cfg;
  cfg.grid = make_grid(n, n);
  cfg.flow = {FlowKind::Unsteady, 4.0, 2.0};
  cfg.strain_enabled = strain;
  cfg.markstein = strain ? 0.2 : 0.0;
  return cfg;
}

void BM_Weno5Gradients(benchmark::State& state) {
  const Grid g = make_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const auto f = corrugated_field(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(weno5_one_sided(f));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.cells()));
}
BENCHMARK(BM_Weno5Gradients)->Arg(128)->Arg(256);

void BM_RhsInviscid(benchmark::State& state) {
  const SolverConfig cfg = config_for(static_cast<int>(state.range(0)), false);
  Solver solver(cfg);
  const auto f = corrugated_field(cfg.grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.eval(f, 0.37));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.grid.cells()));
}
BENCHMARK(BM_RhsInviscid)->Arg(128)->Arg(256);

void BM_RhsStrain(benchmark::State& state) {
  const SolverConfig cfg = config_for(static_cast<int>(state.range(0)), true);
  Solver solver(cfg);
  const auto f = corrugated_field(cfg.grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solver.eval(f, 0.37));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.grid.cells()));
}
BENCHMARK(BM_RhsStrain)->Arg(128)->Arg(256);

void BM_Rk3Step(benchmark::State& state) {
  const SolverConfig cfg = config_for(static_cast<int>(state.range(0)), true);
  Solver solver(cfg);
  for (auto _ : state) {
    solver.step_once(solver.current_dt());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(cfg.grid.cells()) * 3);
}
BENCHMARK(BM_Rk3Step)->Arg(128)->Arg(256);

void BM_FrontPosition(benchmark::State& state) {
  const Grid g = make_grid(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
  const auto f = corrugated_field(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(front_position(f));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(g.cells()));
}
BENCHMARK(BM_FrontPosition)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
