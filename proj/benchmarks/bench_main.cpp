#include <pairbundle/classify.hpp>
#include <pairbundle/closure.hpp>
#include <pairbundle/dimension.hpp>
#include <pairbundle/montecarlo.hpp>
#include <pairbundle/search.hpp>
#include <pairbundle/witness.hpp>

#include <benchmark/benchmark.h>

namespace {

using namespace pb;

void BM_ClassifyRandomPair(benchmark::State& st) {
  Rng r = make_stream(kDefaultSeed, "bench/classify", 0);
  std::vector<PairAB> xs;
  for (int k = 0; k < 256; ++k) xs.push_back({random_polydisc(r, 1.0), random_sym_polydisc(r, 1.0)});
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(classify_pair(xs[i++ % xs.size()]));
}
BENCHMARK(BM_ClassifyRandomPair);

void BM_ClassifyRepresentative(benchmark::State& st) {
  const auto& li = taxonomy()[static_cast<std::size_t>(st.range(0))];
  const PairAB x = apply_action(GroupElement{cd(0.6, 0.8), make_mat2(1, 2, 0.5, -1)},
                                representative(li.label, generic_params(li.label)));
  st.SetLabel(li.name);
  for (auto _ : st) benchmark::DoNotOptimize(classify_pair(x));
}
BENCHMARK(BM_ClassifyRepresentative)->Arg(0)->Arg(14)->Arg(28)->Arg(47);

void BM_DimensionReport(benchmark::State& st) {
  const auto& li = taxonomy()[static_cast<std::size_t>(st.range(0))];
  const auto p = generic_params(li.label);
  st.SetLabel(li.name);
  for (auto _ : st) benchmark::DoNotOptimize(dimension_report(li.label, p));
}
BENCHMARK(BM_DimensionReport)->Arg(0)->Arg(47);

void BM_ClosureQuery(benchmark::State& st) {
  const auto& g = ClosureGraph::get();
  const auto& n = g.nodes();
  std::size_t i = 0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(g.is_path(n[i % n.size()], n[(i * 7) % n.size()]));
    ++i;
  }
}
BENCHMARK(BM_ClosureQuery);

void BM_DistanceToBundle(benchmark::State& st) {
  const BundleLabel src = *parse_label("one_theta/zero"), dst = *parse_label("tau_form/zero");
  const PairAB x = representative(src, generic_params(src));
  SearchOptions o;
  o.restarts = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(distance_to_bundle(x, dst, o));
}
BENCHMARK(BM_DistanceToBundle)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_MonteCarloNeighborhood(benchmark::State& st) {
  const BundleLabel l = *parse_label("identity/diag_ad");
  const auto p = generic_params(l);
  for (auto _ : st) benchmark::DoNotOptimize(monte_carlo_neighborhood(l, p, 1e-3, st.range(0), kDefaultSeed));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_MonteCarloNeighborhood)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_WitnessRepair(benchmark::State& st) {
  const auto f = *witness_by_id("W3");
  for (auto _ : st) benchmark::DoNotOptimize(witness_repair(f));
}
BENCHMARK(BM_WitnessRepair)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
