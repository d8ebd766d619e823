#include <benchmark/benchmark.h>

#include <numeric>
#include <vector>

#include "rcl/generators.hpp"
#include "rcl/learner.hpp"
#include "rcl/verify.hpp"

namespace {

// Subset enumeration dominates candidate search as |G| approaches the cap.
void CandidateSearch(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto instance = rcl::make_uniform_threshold_instance(n, 16, 0.0, seed++);
    std::vector<std::size_t> group(n);
    std::iota(group.begin(), group.end(), 0);
    benchmark::DoNotOptimize(
        rcl::candidate_classifier(instance, group, 0.1, 0.02, {}));
  }
}
BENCHMARK(CandidateSearch)->Arg(10)->Arg(16)->Arg(20);

void CollaborativeRun(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    auto instance = rcl::make_uniform_powerset_instance(
        n, static_cast<std::uint32_t>(n), 0.0, seed++);
    benchmark::DoNotOptimize(
        rcl::run_robust_collaborative(instance, 0.1, 0.1, 0.0));
  }
}
BENCHMARK(CollaborativeRun)->Arg(4)->Arg(8)->Arg(16);

void BallsInBinsTrialBatch(benchmark::State& state) {
  rcl::BallsInBinsConfig config;
  config.bins = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(rcl::check_balls_in_bins(config, 100, 3));
  }
}
BENCHMARK(BallsInBinsTrialBatch)->Arg(50)->Arg(200);

}  // namespace
