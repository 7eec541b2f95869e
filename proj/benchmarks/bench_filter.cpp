#include <benchmark/benchmark.h>

#include "fkrfe/kolmogorov.hpp"
#include "fkrfe/simulate.hpp"

namespace {

fkrfe::Dataset make_data(std::size_t n, std::size_t p) {
    auto spec = fkrfe::ExampleSpec::make(1, n, p);
    return fkrfe::gen_example(spec, fkrfe::SeedSpec{42});
}

void BM_TwoSampleKs(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    fkrfe::RngStream rng(7);
    std::vector<double> a(n), b(n);
    for (auto& v : a) v = rng.normal();
    for (auto& v : b) v = rng.normal() + 0.3;
    for (auto _ : state)
        benchmark::DoNotOptimize(fkrfe::two_sample_ks(a, b));
}
BENCHMARK(BM_TwoSampleKs)->Arg(50)->Arg(500)->Arg(5000);

void BM_Screen(benchmark::State& state) {
    const std::size_t p = static_cast<std::size_t>(state.range(0));
    fkrfe::Dataset dataset = make_data(100, p);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            fkrfe::screen(dataset, {3, 4}, 22, /*threads=*/1));
}
BENCHMARK(BM_Screen)->Arg(100)->Arg(500)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();
