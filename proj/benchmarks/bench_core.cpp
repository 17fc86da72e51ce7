// Microbenchmarks for the hot kernels: Hessian assembly, Monge-Ampere
// density, envelope projection sweeps, Poisson solves, and the end-to-end
// Dirichlet solve at small resolutions.
#include <benchmark/benchmark.h>

#include "mael/calculus.hpp"
#include "mael/energy.hpp"
#include "mael/envelope.hpp"
#include "mael/families.hpp"
#include "mael/grid_function.hpp"
#include "mael/measures.hpp"
#include "mael/solver.hpp"

namespace {

using namespace mael;

DomainPtr disc(int res) { return build_domain(Preset::Disc, res); }
DomainPtr ball(int res) { return build_domain(Preset::BallC2, res); }

GridFunction seeded_candidate(const DomainPtr& dom, std::uint64_t seed) {
  Rng rng(seed);
  return random_admissible(dom, rng);
}

void BM_ComplexHessianDisc(benchmark::State& state) {
  auto dom = disc(static_cast<int>(state.range(0)));
  GridFunction u = radial_paraboloid(dom, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(complex_hessian(u));
  state.SetItemsProcessed(state.iterations() * dom->node_count());
}

void BM_ComplexHessianBall(benchmark::State& state) {
  auto dom = ball(static_cast<int>(state.range(0)));
  GridFunction u = radial_paraboloid(dom, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(complex_hessian(u));
  state.SetItemsProcessed(state.iterations() * dom->node_count());
}

void BM_MongeAmpereDisc(benchmark::State& state) {
  auto dom = disc(static_cast<int>(state.range(0)));
  GridFunction u = radial_paraboloid(dom, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(monge_ampere(u));
}

void BM_MongeAmpereBall(benchmark::State& state) {
  auto dom = ball(static_cast<int>(state.range(0)));
  GridFunction u = radial_paraboloid(dom, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(monge_ampere(u));
}

void BM_EnergyE1(benchmark::State& state) {
  auto dom = disc(static_cast<int>(state.range(0)));
  GridFunction u = seeded_candidate(dom, 11);
  for (auto _ : state) benchmark::DoNotOptimize(energy_ep(u, 1.0));
}

void BM_EnvelopeProjection(benchmark::State& state) {
  auto dom = disc(static_cast<int>(state.range(0)));
  GridFunction phi = radial_paraboloid(dom, 1.0);
  for (std::int64_t idx : phi.domain->interior()) {
    double q = phi.values[idx];          // r^2 - 1
    phi.values[idx] = -q * q;            // -(1-r^2)^2: not psh, real work
  }
  for (auto _ : state) benchmark::DoNotOptimize(psh_projection(phi));
}

void BM_PoissonSolveDisc(benchmark::State& state) {
  auto dom = disc(static_cast<int>(state.range(0)));
  std::vector<double> rhs(dom->node_count(), 0.0);
  for (std::int64_t idx : dom->interior()) rhs[idx] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(poisson_solve(dom, rhs));
}

void BM_PoissonSolveBall(benchmark::State& state) {
  auto dom = ball(static_cast<int>(state.range(0)));
  std::vector<double> rhs(dom->node_count(), 0.0);
  for (std::int64_t idx : dom->interior()) rhs[idx] = 1.0;
  for (auto _ : state) benchmark::DoNotOptimize(poisson_solve(dom, rhs));
}

void BM_SolveDirichletDisc(benchmark::State& state) {
  auto dom = disc(static_cast<int>(state.range(0)));
  MeasureSpec spec;
  spec.kind = MeasureSpec::Kind::Constant;
  spec.params = {4.0};
  DiscreteMeasure mu = realize(spec, dom);
  for (auto _ : state) benchmark::DoNotOptimize(solve_dirichlet(mu));
}

}  // namespace

BENCHMARK(BM_ComplexHessianDisc)->Arg(65)->Arg(129)->Arg(257);
BENCHMARK(BM_ComplexHessianBall)->Arg(9)->Arg(13)->Arg(17);
BENCHMARK(BM_MongeAmpereDisc)->Arg(65)->Arg(129)->Arg(257);
BENCHMARK(BM_MongeAmpereBall)->Arg(9)->Arg(13)->Arg(17);
BENCHMARK(BM_EnergyE1)->Arg(65)->Arg(129);
BENCHMARK(BM_EnvelopeProjection)->Arg(33)->Arg(65)->Arg(129);
BENCHMARK(BM_PoissonSolveDisc)->Arg(65)->Arg(129);
BENCHMARK(BM_PoissonSolveBall)->Arg(9)->Arg(13);
BENCHMARK(BM_SolveDirichletDisc)->Arg(33)->Arg(65);

BENCHMARK_MAIN();
