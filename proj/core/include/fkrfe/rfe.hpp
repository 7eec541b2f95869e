#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "fkrfe/forest.hpp"
#include "fkrfe/kolmogorov.hpp"

namespace fkrfe {

struct RfeConfig {
    std::vector<int> slice_counts{3, 4};
    std::size_t d_n = 0;  // 0 = default_dn(n) capped at p
    double dn_scale = 1.0;
    ForestParams forest;
    int threads = 1;
};

struct TraceStep {
    std::size_t step = 0;
    ActiveSet active_set;
    double oob_perf = 0.0;
    std::vector<std::pair<std::size_t, double>> importances;  // ascending
    long long eliminated = -1;  // -1 on the final (singleton) step
};

struct SelectionResult {
    ActiveSet chosen;
    double chosen_perf = 0.0;
    std::vector<TraceStep> trace;
    FilterRanking filter_ranking;
    RfeConfig config;  // with the resolved d_n
    SeedSpec seed;
};

// Step with the minimal OOB performance; equal minima resolve to the
// smaller active set (the later step).
std::size_t best_step(const std::vector<TraceStep>& trace);

// The full two-phase procedure: screen to d_n features, then refit a fresh
// forest per step, eliminate the least important feature, and keep the
// best-performing active set.
SelectionResult fkrfe_select(const Dataset& dataset, const RfeConfig& config,
                             SeedSpec seed);

}  // namespace fkrfe
