// fkrfe: two-phase feature selection (fused Kolmogorov filter + random
// forest recursive elimination), plus the simulation and holdout harnesses.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fkrfe/csv.hpp"
#include "fkrfe/parallel.hpp"
#include "fkrfe/serialize.hpp"

namespace {

struct CommonOpts {
    int threads = 0;  // 0 = all cores
    std::uint64_t seed = 0;
    int trees = 500;
    int mtry = 0;
    int min_node = 0;
    int max_depth = 0;
    std::vector<int> slices{3, 4};
    std::size_t dn = 0;  // 0 = auto
    std::string out_path;
};

void add_forest_flags(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--seed", opts.seed, "Master seed")->default_val(0);
    cmd->add_option("--trees", opts.trees, "Trees per forest")->default_val(500);
    cmd->add_option("--mtry", opts.mtry, "Features tried per split (0 = auto)");
    cmd->add_option("--min-node", opts.min_node, "Minimum node size (0 = auto)");
    cmd->add_option("--max-depth", opts.max_depth, "Depth cap (0 = none)");
    cmd->add_option("--slices", opts.slices,
                    "Slice counts for the fused filter")
        ->delimiter(',');
    cmd->add_option("--dn", opts.dn,
                    "Screening size d_n (0 = ceil(n/ln n), capped at p)");
    cmd->add_option("--out", opts.out_path, "Write output here instead of stdout");
}

fkrfe::RfeConfig make_config(const CommonOpts& opts, std::size_t p,
                             std::size_t n) {
    fkrfe::RfeConfig config;
    config.slice_counts = opts.slices;
    config.d_n = opts.dn;
    if (config.d_n > p) {
        std::cerr << "warning: --dn " << config.d_n << " exceeds p=" << p
                  << ", clamping to " << p << "\n";
        config.d_n = p;
    }
    config.forest.n_trees = opts.trees;
    config.forest.mtry = opts.mtry;
    config.forest.min_node_size = opts.min_node;
    config.forest.max_depth = opts.max_depth;
    config.threads = fkrfe::resolve_threads(opts.threads);
    (void)n;
    return config;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw fkrfe::Error("cannot open output file: " + out_path);
    out << text;
}

int run_select(const CommonOpts& opts, const std::string& input,
               const std::string& response, bool categorical,
               const std::string& format) {
    fkrfe::Dataset dataset =
        fkrfe::parse_csv(input, fkrfe::ResponseSelector{response}, categorical);
    fkrfe::RfeConfig config = make_config(opts, dataset.p, dataset.n);
    fkrfe::SelectionResult result =
        fkrfe::fkrfe_select(dataset, config, fkrfe::SeedSpec{opts.seed});
    if (format == "csv")
        emit(fkrfe::trace_to_csv(result), opts.out_path);
    else
        emit(fkrfe::selection_to_json(result, dataset.feature_names),
             opts.out_path);
    return 0;
}

int run_simulate(const CommonOpts& opts, int example, std::size_t n,
                 std::size_t p, std::size_t reps, const std::string& format) {
    fkrfe::ExampleSpec spec = fkrfe::ExampleSpec::make(example, n, p);
    fkrfe::RfeConfig config = make_config(opts, p, n);
    std::vector<fkrfe::RepRecord> records;
    fkrfe::MetricRow row = fkrfe::run_benchmark(
        spec, reps, config, fkrfe::SeedSpec{opts.seed}, &records);

    if (format == "json") {
        emit(fkrfe::benchmark_to_json(row, records, example, n, p),
             opts.out_path);
        return 0;
    }
    std::string text;
    for (const fkrfe::RepRecord& rec : records) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "rep %zu  size=%zu  tpr=%.3f  tnr=%.3f  ba=%.3f\n",
                      rec.rep, rec.metrics.model_size, rec.metrics.tpr,
                      rec.metrics.tnr, rec.metrics.balanced_accuracy);
        text += buf;
    }
    text += fkrfe::benchmark_to_table(row, example, p);
    emit(text, opts.out_path);
    return 0;
}

int run_holdout(const CommonOpts& opts, const std::string& input,
                const std::string& response, bool categorical,
                std::size_t train_n, std::size_t noise_p) {
    fkrfe::Dataset dataset =
        fkrfe::parse_csv(input, fkrfe::ResponseSelector{response}, categorical);
    fkrfe::RfeConfig config =
        make_config(opts, dataset.p + noise_p, dataset.n);
    fkrfe::HoldoutReport report = fkrfe::holdout_protocol(
        dataset, train_n, noise_p, fkrfe::SeedSpec{opts.seed}, config);
    emit(fkrfe::holdout_to_json(report, dataset.feature_names), opts.out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FK-RFE model-free feature selection"};
    app.require_subcommand(1);

    CommonOpts opts;
    app.add_option("--threads", opts.threads,
                   "Worker threads (0 = all cores); never affects results")
        ->envname("FKRFE_THREADS");

    std::string input, response, format = "json";
    bool categorical = false;

    CLI::App* select = app.add_subcommand("select", "Select features from a CSV");
    select->fallthrough();
    select->add_option("--input", input, "Input CSV with header")->required();
    select->add_option("--response", response, "Response column name or index")
        ->required();
    select->add_flag("--categorical", categorical,
                     "Treat the response as categorical");
    select->add_option("--format", format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    add_forest_flags(select, opts);

    int example = 1;
    std::size_t sim_n = 100, sim_p = 100, reps = 50;
    std::string sim_format = "text";
    CLI::App* simulate =
        app.add_subcommand("simulate", "Run a benchmark design");
    simulate->fallthrough();
    simulate->add_option("--example", example, "Design id 1..5")->required();
    simulate->add_option("--n", sim_n, "Sample size")->default_val(100);
    simulate->add_option("--p", sim_p, "Feature count")->default_val(100);
    simulate->add_option("--reps", reps, "Monte-Carlo replications")
        ->default_val(50);
    simulate->add_option("--format", sim_format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    add_forest_flags(simulate, opts);

    std::size_t train_n = 200, noise_p = 0;
    CLI::App* holdout =
        app.add_subcommand("holdout", "Train/test protocol with noise columns");
    holdout->fallthrough();
    holdout->add_option("--input", input, "Input CSV with header")->required();
    holdout->add_option("--response", response, "Response column name or index")
        ->required();
    holdout->add_flag("--categorical", categorical,
                      "Treat the response as categorical");
    holdout->add_option("--train-n", train_n, "Training rows")->required();
    holdout->add_option("--noise-p", noise_p, "Synthetic noise columns")
        ->default_val(0);
    add_forest_flags(holdout, opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*select)
            return run_select(opts, input, response, categorical, format);
        if (*simulate)
            return run_simulate(opts, example, sim_n, sim_p, reps, sim_format);
        if (*holdout) return run_holdout(opts, input, response, categorical,
                                         train_n, noise_p);
    } catch (const fkrfe::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fkrfe::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
