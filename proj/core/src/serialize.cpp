#include "fkrfe/serialize.hpp"

#include <sstream>

#include <json.hpp>

namespace fkrfe {

using nlohmann::json;

namespace {

json active_set_json(const ActiveSet& set,
                     const std::vector<std::string>& names) {
    json out = json::array();
    for (std::size_t j : set.indices) {
        json entry;
        entry["index"] = j;
        if (j < names.size()) entry["name"] = names[j];
        out.push_back(std::move(entry));
    }
    return out;
}

json metrics_json(const ErrorMetrics& m) {
    return json{{"mse", m.mse},
                {"mae", m.mae},
                {"mape_percent", m.mape_percent},
                {"mape_excluded_rows", m.mape_excluded}};
}

json mean_std_json(const MeanStd& m) {
    return json{{"mean", m.mean}, {"std", m.std}};
}

}  // namespace

std::string selection_to_json(const SelectionResult& result,
                              const std::vector<std::string>& feature_names,
                              int indent) {
    json out;
    out["seed"] = result.seed.master_seed;
    out["config"] = {
        {"slice_counts", result.config.slice_counts},
        {"d_n", result.config.d_n},
        {"n_trees", result.config.forest.n_trees},
        {"mtry", result.config.forest.mtry},
        {"min_node_size", result.config.forest.min_node_size},
        {"max_depth", result.config.forest.max_depth},
        {"importance_permutations", result.config.forest.importance_permutations},
    };
    out["chosen"] = active_set_json(result.chosen, feature_names);
    out["chosen_perf"] = result.chosen_perf;

    json trace = json::array();
    for (const TraceStep& step : result.trace) {
        json s;
        s["step"] = step.step;
        s["active_set"] = step.active_set.indices;
        s["oob_perf"] = step.oob_perf;
        json imps = json::array();
        for (const auto& [feature, value] : step.importances)
            imps.push_back({{"feature", feature}, {"importance", value}});
        s["importances"] = std::move(imps);
        s["eliminated"] = step.eliminated;
        trace.push_back(std::move(s));
    }
    out["trace"] = std::move(trace);

    out["filter"] = {
        {"statistics", result.filter_ranking.statistics},
        {"order", result.filter_ranking.order},
    };
    return out.dump(indent) + "\n";
}

SelectionResult selection_from_json(const std::string& text) {
    const json in = json::parse(text);
    SelectionResult result;
    result.seed.master_seed = in.at("seed").get<std::uint64_t>();

    const json& cfg = in.at("config");
    result.config.slice_counts = cfg.at("slice_counts").get<std::vector<int>>();
    result.config.d_n = cfg.at("d_n").get<std::size_t>();
    result.config.forest.n_trees = cfg.at("n_trees").get<int>();
    result.config.forest.mtry = cfg.at("mtry").get<int>();
    result.config.forest.min_node_size = cfg.at("min_node_size").get<int>();
    result.config.forest.max_depth = cfg.at("max_depth").get<int>();
    result.config.forest.importance_permutations =
        cfg.at("importance_permutations").get<int>();

    std::vector<std::size_t> chosen;
    for (const json& entry : in.at("chosen"))
        chosen.push_back(entry.at("index").get<std::size_t>());
    result.chosen = ActiveSet::of(std::move(chosen));
    result.chosen_perf = in.at("chosen_perf").get<double>();

    for (const json& s : in.at("trace")) {
        TraceStep step;
        step.step = s.at("step").get<std::size_t>();
        step.active_set =
            ActiveSet::of(s.at("active_set").get<std::vector<std::size_t>>());
        step.oob_perf = s.at("oob_perf").get<double>();
        for (const json& imp : s.at("importances"))
            step.importances.emplace_back(imp.at("feature").get<std::size_t>(),
                                          imp.at("importance").get<double>());
        step.eliminated = s.at("eliminated").get<long long>();
        result.trace.push_back(std::move(step));
    }

    result.filter_ranking.statistics =
        in.at("filter").at("statistics").get<std::vector<double>>();
    result.filter_ranking.order =
        in.at("filter").at("order").get<std::vector<std::size_t>>();
    return result;
}

std::string trace_to_csv(const SelectionResult& result) {
    std::ostringstream out;
    out << "step,set_size,oob_perf,eliminated,active_set\n";
    for (const TraceStep& step : result.trace) {
        out << step.step << ',' << step.active_set.size() << ','
            << step.oob_perf << ',' << step.eliminated << ',' << '"';
        for (std::size_t k = 0; k < step.active_set.indices.size(); ++k) {
            if (k) out << ' ';
            out << step.active_set.indices[k];
        }
        out << '"' << '\n';
    }
    return out.str();
}

std::string benchmark_to_json(const MetricRow& row,
                              const std::vector<RepRecord>& records,
                              int example_id, std::size_t n, std::size_t p,
                              int indent) {
    json out;
    out["example"] = example_id;
    out["n"] = n;
    out["p"] = p;
    out["reps"] = row.reps;
    out["balanced_accuracy"] = mean_std_json(row.balanced_accuracy);
    out["model_size"] = mean_std_json(row.model_size);
    out["tpr"] = mean_std_json(row.tpr);
    out["tnr"] = mean_std_json(row.tnr);

    json reps = json::array();
    for (const RepRecord& rec : records) {
        reps.push_back({{"rep", rec.rep},
                        {"selected", rec.selected.indices},
                        {"oob_perf", rec.oob_perf},
                        {"tpr", rec.metrics.tpr},
                        {"tnr", rec.metrics.tnr},
                        {"balanced_accuracy", rec.metrics.balanced_accuracy},
                        {"model_size", rec.metrics.model_size}});
    }
    out["replications"] = std::move(reps);
    return out.dump(indent) + "\n";
}

std::string benchmark_to_table(const MetricRow& row, int example_id,
                               std::size_t p) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "Example %d  p=%zu  BA %.3f (%.2f)  Size %.2f (%.2f)  "
                  "TPR %.3f (%.2f)  TNR %.3f (%.2f)",
                  example_id, p, row.balanced_accuracy.mean,
                  row.balanced_accuracy.std, row.model_size.mean,
                  row.model_size.std, row.tpr.mean, row.tpr.std, row.tnr.mean,
                  row.tnr.std);
    return std::string(buf) + "\n";
}

std::string holdout_to_json(const HoldoutReport& report,
                            const std::vector<std::string>& feature_names,
                            int indent) {
    json out;
    out["chosen"] = active_set_json(report.chosen, feature_names);
    out["model_size"] = report.model_size;
    out["wrong_selection"] = report.wrong_selection;
    out["noise_start_index"] = report.noise_start;
    out["train"] = metrics_json(report.train);
    out["test"] = metrics_json(report.test);
    return out.dump(indent) + "\n";
}

}  // namespace fkrfe
