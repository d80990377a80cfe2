#include <benchmark/benchmark.h>

#include <vector>

#include "icrt/dimension.hpp"
#include "icrt/measure.hpp"
#include "icrt/rtree.hpp"
#include "icrt/stickbreak.hpp"

using namespace icrt;

namespace {

CutSequence brownian_cuts(std::size_t n, std::uint64_t seed = 1) {
  const auto theta = make_theta(ThetaFamily::brownian(), 0);
  Rng mr = Rng::stream(seed, "mu"), cr = Rng::stream(seed, "cuts");
  const auto mu = sample_mu(theta, mr);
  return sample_cuts_new(mu, StopRule::cuts(n), cr);
}

void BM_SampleMuPowerLaw(benchmark::State& state) {
  const auto theta = make_theta(ThetaFamily::power_law(2.0 / 3.0), static_cast<std::size_t>(state.range(0)));
  Rng rng(1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_mu(theta, rng, 100.0).atoms());
}
BENCHMARK(BM_SampleMuPowerLaw)->Arg(10000)->Arg(1000000);

void BM_SampleCutsNew(benchmark::State& state) {
  const auto theta = make_theta(ThetaFamily::power_law(2.0 / 3.0), 100000);
  Rng mr(2);
  const auto mu = sample_mu(theta, mr);
  Rng rng(3);
  for (auto _ : state)
    benchmark::DoNotOptimize(sample_cuts_new(mu, StopRule::cuts(static_cast<std::size_t>(state.range(0))), rng).size());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleCutsNew)->Arg(1000)->Arg(100000);

void BM_SampleCutsClassical(benchmark::State& state) {
  const auto theta = make_theta(ThetaFamily::power_law(2.0 / 3.0), 10000);
  Rng rng(4);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        sample_cuts_classical(theta, StopRule::cuts(static_cast<std::size_t>(state.range(0))), rng).cuts.size());
}
BENCHMARK(BM_SampleCutsClassical)->Arg(1000);

void BM_BuildTree(benchmark::State& state) {
  const auto cuts = brownian_cuts(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(IcrtTree::build(cuts).segments());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildTree)->Arg(1000)->Arg(100000);

void BM_Distance(benchmark::State& state) {
  const auto tree = IcrtTree::build(brownian_cuts(static_cast<std::size_t>(state.range(0))));
  Rng rng(5);
  std::vector<TreePoint> pts;
  for (int i = 0; i < 1024; ++i) pts.push_back(tree.point(rng.uniform() * tree.extent()));
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tree.distance(pts[k & 1023], pts[(k * 7 + 3) & 1023]));
    ++k;
  }
}
BENCHMARK(BM_Distance)->Arg(1000)->Arg(100000);

void BM_Project(benchmark::State& state) {
  const auto tree = IcrtTree::build(brownian_cuts(100000));
  Rng rng(6);
  std::vector<TreePoint> pts;
  for (int i = 0; i < 1024; ++i) pts.push_back(tree.point(rng.uniform() * tree.extent()));
  const double l = 0.1 * tree.extent();
  std::size_t k = 0;
  for (auto _ : state) benchmark::DoNotOptimize(tree.project(pts[k++ & 1023], l).coord);
}
BENCHMARK(BM_Project);

void BM_BallCover(benchmark::State& state) {
  const auto tree = IcrtTree::build(brownian_cuts(static_cast<std::size_t>(state.range(0))));
  const double l = tree.extent(), eps = tree.diameter(l) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(ball_cover_count(tree, l, eps));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BallCover)->Arg(1000)->Arg(100000);

void BM_Packing(benchmark::State& state) {
  const auto tree = IcrtTree::build(brownian_cuts(10000));
  const double l = tree.extent(), eps = tree.diameter(l) / 100.0;
  for (auto _ : state) benchmark::DoNotOptimize(packing_count(tree, l, 2.0 * eps));
}
BENCHMARK(BM_Packing);

void BM_ExpectedMass(benchmark::State& state) {
  const auto f = ThetaFamily::power_law(2.0 / 3.0);
  double l = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(expected_mass(f, l));
    l = l > 1e6 ? 1.0 : l * 1.7;
  }
}
BENCHMARK(BM_ExpectedMass);

void BM_InverseExpectedMass(benchmark::State& state) {
  const auto f = ThetaFamily::harmonic();
  for (auto _ : state) benchmark::DoNotOptimize(log_inverse_expected_mass(f, 64.0));
}
BENCHMARK(BM_InverseExpectedMass);

}  // namespace

BENCHMARK_MAIN();
