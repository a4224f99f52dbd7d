// Serial reference kernels against the OpenMP versions, square grids.
#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "antiplane/discretization.hpp"

using namespace antiplane;

namespace {

struct Problem {
  Domain domain;
  Field u;
  MaterialModel model;
};

Problem make_problem(int n) {
  const EdgeCondition zero{NodeKind::Dirichlet, [](double, double) { return 0.0; }};
  const EdgeCondition free_edge{NodeKind::Traction, [](double, double) { return 0.0; }};
  const EdgeCondition load{NodeKind::Traction, [](double, double x2) { return 0.5 + 0.25 * x2; }};
  Domain d = make_rectangle(n, n, 1.0 / (n - 1), EdgeSpec{zero, load, free_edge, free_edge});
  Field u = initial_field(d);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> v(-0.5, 0.5);
  for (std::size_t k = 0; k < u.size(); ++k)
    if (d.is_free(k)) u.values[k] = v(rng);
  return {std::move(d), std::move(u), MaterialModel(MooneyRivlin{0.7, 0.4})};
}

template <auto Kernel>
void energy_bench(benchmark::State& state) {
  const Problem p = make_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(p.u, p.domain, p.model));
  state.SetItemsProcessed(state.iterations() * p.u.size());
}

template <auto Kernel>
void gradient_bench(benchmark::State& state) {
  const Problem p = make_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Field g = Kernel(p.u, p.domain, p.model);
    benchmark::DoNotOptimize(g.values.data());
  }
  state.SetItemsProcessed(state.iterations() * p.u.size());
}

template <auto Kernel>
void divergence_bench(benchmark::State& state) {
  const Problem p = make_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Array2 div = Kernel(p.u, p.domain, p.model);
    benchmark::DoNotOptimize(div.data.data());
  }
  state.SetItemsProcessed(state.iterations() * p.u.size());
}

// grid nodes per side: 2^k + 1
void grid_sizes(benchmark::internal::Benchmark* b) {
  for (int n : {65, 129, 257, 513, 1025}) b->Arg(n);
}

}  // namespace

BENCHMARK(energy_bench<serial::total_potential>)->Name("total_potential/serial")->Apply(grid_sizes);
BENCHMARK(energy_bench<total_potential>)->Name("total_potential/openmp")->Apply(grid_sizes);
BENCHMARK(gradient_bench<serial::potential_gradient>)->Name("potential_gradient/serial")->Apply(grid_sizes);
BENCHMARK(gradient_bench<potential_gradient>)->Name("potential_gradient/openmp")->Apply(grid_sizes);
BENCHMARK(divergence_bench<serial::divergence_field>)->Name("divergence/serial")->Apply(grid_sizes);
BENCHMARK(divergence_bench<divergence_field>)->Name("divergence/openmp")->Apply(grid_sizes);

BENCHMARK_MAIN();
