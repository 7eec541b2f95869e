#include <benchmark/benchmark.h>

#include "fkrfe/forest.hpp"
#include "fkrfe/simulate.hpp"

namespace {

void BM_FitForest(benchmark::State& state) {
    auto spec = fkrfe::ExampleSpec::make(4, 100, 22);
    fkrfe::Dataset dataset = fkrfe::gen_example(spec, fkrfe::SeedSpec{3});
    fkrfe::ForestParams params;
    params.n_trees = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(fkrfe::fit_forest(
            dataset, fkrfe::ActiveSet::full(dataset.p), params,
            fkrfe::SeedSpec{11}, /*threads=*/1));
}
BENCHMARK(BM_FitForest)->Arg(100)->Arg(500);

void BM_ImportanceRanking(benchmark::State& state) {
    auto spec = fkrfe::ExampleSpec::make(4, 100, 22);
    fkrfe::Dataset dataset = fkrfe::gen_example(spec, fkrfe::SeedSpec{3});
    fkrfe::ForestParams params;
    params.n_trees = static_cast<int>(state.range(0));
    fkrfe::Forest forest = fkrfe::fit_forest(
        dataset, fkrfe::ActiveSet::full(dataset.p), params, fkrfe::SeedSpec{11});
    for (auto _ : state)
        benchmark::DoNotOptimize(fkrfe::importance_ranking(
            forest, dataset, fkrfe::SeedSpec{5}, /*threads=*/1));
}
BENCHMARK(BM_ImportanceRanking)->Arg(100)->Arg(500);

}  // namespace
