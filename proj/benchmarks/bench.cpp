#include <benchmark/benchmark.h>

#include <random>

#include "anchorvote/bounds.hpp"
#include "anchorvote/welfare.hpp"

namespace {

using namespace anchorvote;

void BM_NearestReport(benchmark::State& state) {
  const auto menu = ReportMenu::ordinal(static_cast<std::size_t>(state.range(0)));
  std::mt19937_64 rng(1);
  const auto density = DensityModel::uniform(menu.dim());
  std::vector<SimplexPoint> points;
  for (int i = 0; i < 1024; ++i) points.push_back(density.sample(rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(nearest_report(points[i++ & 1023], menu));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_NearestReport)->Arg(3)->Arg(4)->Arg(5);

void BM_LevelSetMeasure(benchmark::State& state) {
  const auto menu = anchor_menu(ReportMenu::ordinal(3), AnchorParams(SimplexPoint({0.5, 0.3, 0.2}), 0.2));
  const auto density = DensityModel::dirichlet({3, 2, 1});
  const auto samples = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(level_set_measure(density, menu, samples, 7));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples));
}
BENCHMARK(BM_LevelSetMeasure)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_ExactMeasure(benchmark::State& state) {
  const auto menu = anchor_menu(ReportMenu::ordinal(3), AnchorParams(SimplexPoint({0.5, 0.3, 0.2}), 0.2));
  for (auto _ : state) benchmark::DoNotOptimize(exact_measure_m3(menu));
}
BENCHMARK(BM_ExactMeasure);

void BM_OutcomeDistribution(benchmark::State& state) {
  const VotingRule rule(static_cast<RuleKind>(state.range(0)), 3);
  const auto p = ReportDistribution::from_probs(Vector(rule.menu().size(), 1.0 / static_cast<double>(rule.menu().size())));
  const auto n = static_cast<std::uint32_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(outcome_distribution(rule, p, n));
  state.SetLabel(to_string(rule.kind()));
}
BENCHMARK(BM_OutcomeDistribution)
    ->Args({static_cast<int>(RuleKind::plurality), 50})
    ->Args({static_cast<int>(RuleKind::borda), 15})
    ->Args({static_cast<int>(RuleKind::irv), 15})
    ->Unit(benchmark::kMillisecond);

void BM_BinomTail(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(binom_tail(n, 0.37, static_cast<std::int64_t>(n / 2)));
}
BENCHMARK(BM_BinomTail)->Arg(10)->Arg(1000)->Arg(100'000);

}  // namespace

BENCHMARK_MAIN();
