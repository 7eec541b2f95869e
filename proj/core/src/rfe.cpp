#include "fkrfe/rfe.hpp"

#include <algorithm>

namespace fkrfe {

std::size_t best_step(const std::vector<TraceStep>& trace) {
    if (trace.empty()) throw ConfigError("best_step on an empty trace");
    std::size_t best = 0;
    for (std::size_t l = 1; l < trace.size(); ++l) {
        // <= prefers the later (smaller) set on ties
        if (trace[l].oob_perf <= trace[best].oob_perf) best = l;
    }
    return best;
}

SelectionResult fkrfe_select(const Dataset& dataset, const RfeConfig& config,
                             SeedSpec seed) {
    validate(dataset);

    RfeConfig resolved = config;
    if (resolved.d_n == 0)
        resolved.d_n = default_dn(dataset.n, resolved.dn_scale);
    resolved.d_n = std::min(resolved.d_n, dataset.p);
    if (resolved.d_n < 1) throw ConfigError("d_n must be >= 1");

    SelectionResult result;
    result.seed = seed;

    ScreenResult screened = screen(dataset, resolved.slice_counts,
                                   resolved.d_n, resolved.threads);
    result.filter_ranking = std::move(screened.ranking);

    ActiveSet active = std::move(screened.selected);
    for (std::size_t l = 0; active.size() >= 1; ++l) {
        TraceStep step;
        step.step = l;
        step.active_set = active;

        Forest forest = fit_forest(dataset, active, resolved.forest,
                                   derive_seed(seed, "forest", l),
                                   resolved.threads);
        step.oob_perf = oob_performance(forest, dataset);
        step.importances = importance_ranking(
            forest, dataset, derive_seed(seed, "importance", l),
            resolved.threads);

        if (active.size() == 1) {
            result.trace.push_back(std::move(step));
            break;
        }
        const std::size_t eliminated = step.importances.front().first;
        step.eliminated = static_cast<long long>(eliminated);
        result.trace.push_back(std::move(step));
        active = active.without(eliminated);
    }

    const std::size_t best = best_step(result.trace);
    result.chosen = result.trace[best].active_set;
    result.chosen_perf = result.trace[best].oob_perf;
    result.config = std::move(resolved);
    return result;
}

}  // namespace fkrfe
