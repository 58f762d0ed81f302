#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "ctlab/fields/catalog.hpp"
#include "ctlab/fields/mollifier.hpp"
#include "ctlab/flow/integrate.hpp"
#include "ctlab/measures/weak_metric.hpp"
#include "ctlab/quadrature.hpp"
#include "ctlab/transport/grid_solver.hpp"
#include "ctlab/transport/particle.hpp"
#include "ctlab/transport/weak_residual.hpp"

using namespace ctlab;

namespace {

void BM_IntegrateLogLipschitz(benchmark::State& state) {
  const VectorField v = builtin_field("log_lipschitz");
  IntegrateOptions opt;
  opt.tol = std::pow(10.0, -static_cast<double>(state.range(0)));
  const Point x{0.3, -0.2};
  const std::vector<double> targets{1.0};
  std::size_t nodes = 0;
  for (auto _ : state) {
    const Curve c = integrate(v, 0.0, x, targets, opt);
    nodes = c.size();
    benchmark::DoNotOptimize(c.points().back().data());
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_IntegrateLogLipschitz)->Arg(6)->Arg(9)->Arg(12);

void BM_WeakDistance(benchmark::State& state) {
  const std::size_t atoms = static_cast<std::size_t>(state.range(0));
  const TestFamily family(2);
  std::vector<Atom> a, b;
  for (std::size_t i = 0; i < atoms; ++i) {
    const Point p = halton(i + 1, 2);
    a.push_back({{2 * p[0] - 1, 2 * p[1] - 1}, 1.0 / atoms});
    b.push_back({{2 * p[1] - 1, 2 * p[0] - 1}, 1.0 / atoms});
  }
  const SignedMeasure mu(2, a), eta(2, b);
  for (auto _ : state) benchmark::DoNotOptimize(weak_distance(mu, eta, family).value);
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(2 * atoms));
}
BENCHMARK(BM_WeakDistance)->Arg(16)->Arg(256)->Arg(4096);

void BM_GridSolveQuarterTurn(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const VectorField v = builtin_field("rotation_divfree", {{"horizon", {std::numbers::pi}}});
  const auto g = DensityGrid::from_function(Box::cube(2, 1.0), n, n, [](double x, double y) {
    const double s = std::hypot(x - 0.4, y) / 0.35;
    return s < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
  });
  std::size_t steps = 0;
  for (auto _ : state) {
    const auto sol = grid_solve(v, g, {0.0, std::numbers::pi / 2});
    steps = sol.steps;
    benchmark::DoNotOptimize(sol.slices.back().data());
  }
  state.counters["steps"] = static_cast<double>(steps);
}
BENCHMARK(BM_GridSolveQuarterTurn)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_MollifiedEval(benchmark::State& state) {
  const VectorField w = mollify(builtin_field("log_lipschitz"), static_cast<unsigned>(state.range(0)));
  Point x{0.1, 0.2}, out(2);
  for (auto _ : state) {
    w.eval(0.5, x, out);
    benchmark::DoNotOptimize(out.data());
    x[0] += 1e-9;
  }
}
BENCHMARK(BM_MollifiedEval)->Arg(4)->Arg(64);

void BM_WeakResidualSweep(benchmark::State& state) {
  const VectorField v = builtin_field("linear");
  const auto grid = uniform_grid(0.0, 1.0, static_cast<std::size_t>(state.range(0)));
  const auto mu = particle_solve(v, 0.0, SignedMeasure(1, {{{1.0}, 0.5}, {{-0.5}, 0.5}}), grid);
  const TestFamily family(1);
  const auto windows = canonical_windows(0.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(weak_residual_sweep(mu, v, family, 32, windows).worst);
}
BENCHMARK(BM_WeakResidualSweep)->Arg(41)->Arg(161);

}  // namespace

BENCHMARK_MAIN();
