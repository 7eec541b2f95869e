#include "fkrfe/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fkrfe/parallel.hpp"

namespace fkrfe {

namespace {

// Cap for the Poisson linear predictor 0.8*X1 - 0.8*X2 (example 5). The t2
// design is heavy-tailed enough that the uncapped mean exp(arg) regularly
// exceeds any integer count range, and a response spanning hundreds of
// orders of magnitude makes squared-error fits meaningless.
constexpr double kPoissonExponentCap = 3.0;

}  // namespace

ExampleSpec ExampleSpec::make(int example_id, std::size_t n, std::size_t p) {
    ExampleSpec spec;
    spec.example_id = example_id;
    spec.n = n;
    spec.p = p;
    switch (example_id) {
        case 1: spec.truth = ActiveSet::of({0, 1, 2, 3, 4}); break;
        case 2: spec.truth = ActiveSet::of({0, 1}); break;
        case 3: spec.truth = ActiveSet::of({0, 1}); break;
        case 4: spec.truth = ActiveSet::of({0, 1, 2, 3}); break;
        case 5: spec.truth = ActiveSet::of({0, 1}); break;
        default:
            throw ConfigError("example id must be 1..5, got " +
                              std::to_string(example_id));
    }
    if (p < spec.truth.size())
        throw ConfigError("p is smaller than the example's true support");
    return spec;
}

std::vector<double> gen_ar_gaussian(std::size_t n, std::size_t p, double rho,
                                    RngStream& rng) {
    std::vector<double> x(n * p);
    const double scale = std::sqrt(1.0 - rho * rho);
    for (std::size_t i = 0; i < n; ++i) {
        double prev = rng.normal();
        x[i * p] = prev;
        for (std::size_t j = 1; j < p; ++j) {
            prev = rho * prev + scale * rng.normal();
            x[i * p + j] = prev;
        }
    }
    return x;
}

Dataset gen_example(const ExampleSpec& spec, SeedSpec seed) {
    RngStream rng = substream(seed, "gen", spec.example_id);
    const std::size_t n = spec.n;
    const std::size_t p = spec.p;

    Dataset dataset;
    dataset.n = n;
    dataset.p = p;

    std::vector<double> y(n);
    if (spec.example_id == 5) {
        dataset.x.resize(n * p);
        for (double& v : dataset.x) v = rng.student_t2();
        for (std::size_t i = 0; i < n; ++i) {
            // heavy t2 tails make the raw exponent unbounded, which no
            // Poisson sampler can realize; the linear predictor is capped so
            // the count response stays in a well-conditioned regime
            double arg = 0.8 * dataset.x[i * p] - 0.8 * dataset.x[i * p + 1];
            arg = std::clamp(arg, -kPoissonExponentCap, kPoissonExponentCap);
            y[i] = rng.poisson(std::exp(arg));
        }
    } else {
        dataset.x = gen_ar_gaussian(n, p, 0.5, rng);
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = dataset.x.data() + i * p;
            const double eps = rng.normal();
            switch (spec.example_id) {
                case 1:
                    y[i] = std::exp(row[0] + row[1] + row[2] + row[3] + row[4]) +
                           eps;
                    break;
                case 2: {
                    const double lhs = 2.8 * row[0] - 2.8 * row[1] + eps;
                    y[i] = std::pow(std::fabs(lhs), 9.0) *
                           (lhs < 0 ? -1.0 : 1.0);
                    break;
                }
                case 3: {
                    const double s = row[0] + row[1] + 1.0;
                    y[i] = s * s * s + eps;
                    break;
                }
                case 4:
                    y[i] = 2.0 * (row[0] + row[1]) +
                           2.0 * std::tan(std::numbers::pi * row[2] / 2.0) +
                           5.0 * row[3] + eps;
                    break;
            }
        }
    }
    dataset.y = Response::continuous(std::move(y));
    return dataset;
}

SelectionMetrics selection_metrics(const ActiveSet& selected,
                                   const ActiveSet& truth, std::size_t p) {
    if (truth.size() == 0)
        throw ConfigError("selection_metrics needs a nonempty true support");

    std::size_t true_pos = 0;
    for (std::size_t j : selected.indices)
        if (truth.contains(j)) ++true_pos;
    const std::size_t false_pos = selected.size() - true_pos;
    const std::size_t negatives = p - truth.size();

    SelectionMetrics m;
    m.tpr = static_cast<double>(true_pos) / static_cast<double>(truth.size());
    m.tnr = negatives == 0
                ? 1.0
                : static_cast<double>(negatives - false_pos) /
                      static_cast<double>(negatives);
    m.balanced_accuracy = (m.tpr + m.tnr) / 2.0;
    m.model_size = selected.size();
    return m;
}

ErrorMetrics error_metrics(std::span<const double> y_hat,
                           std::span<const double> y) {
    if (y_hat.size() != y.size())
        throw LengthMismatch("prediction and response lengths differ");
    const std::size_t n = y.size();
    if (n == 0) throw EmptySampleSet();

    ErrorMetrics m;
    double ape_sum = 0.0;
    std::size_t ape_n = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = y_hat[i] - y[i];
        m.mse += d * d;
        m.mae += std::fabs(d);
        if (y[i] != 0.0) {
            ape_sum += std::fabs(d) / std::fabs(y[i]);
            ++ape_n;
        }
    }
    m.mse /= static_cast<double>(n);
    m.mae /= static_cast<double>(n);
    m.mape_excluded = n - ape_n;
    if (ape_n == 0) throw AllZeroResponse();
    m.mape_percent = 100.0 * ape_sum / static_cast<double>(ape_n);
    return m;
}

MeanStd mean_std(std::span<const double> values) {
    MeanStd out;
    const std::size_t n = values.size();
    if (n == 0) return out;
    for (double v : values) out.mean += v;
    out.mean /= static_cast<double>(n);
    if (n >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - out.mean) * (v - out.mean);
        out.std = std::sqrt(ss / static_cast<double>(n - 1));
    }
    return out;
}

MetricRow run_benchmark(const ExampleSpec& spec, std::size_t reps,
                        const RfeConfig& config, SeedSpec seed,
                        std::vector<RepRecord>* records) {
    if (reps < 1) throw ConfigError("reps must be >= 1");

    std::vector<RepRecord> local(reps);
    RfeConfig inner = config;
    inner.threads = 1;  // parallelism lives at the replication level

    parallel_for(reps, config.threads, [&](std::size_t r) {
        const SeedSpec rep_seed = derive_seed(seed, "rep", r);
        Dataset dataset = gen_example(spec, derive_seed(rep_seed, "data", 0));
        SelectionResult sel =
            fkrfe_select(dataset, inner, derive_seed(rep_seed, "select", 0));
        RepRecord& rec = local[r];
        rec.rep = r;
        rec.selected = sel.chosen;
        rec.oob_perf = sel.chosen_perf;
        rec.metrics = selection_metrics(sel.chosen, spec.truth, spec.p);
    });

    std::vector<double> ba(reps), size(reps), tpr(reps), tnr(reps);
    for (std::size_t r = 0; r < reps; ++r) {
        ba[r] = local[r].metrics.balanced_accuracy;
        size[r] = static_cast<double>(local[r].metrics.model_size);
        tpr[r] = local[r].metrics.tpr;
        tnr[r] = local[r].metrics.tnr;
    }

    MetricRow row;
    row.reps = reps;
    row.balanced_accuracy = mean_std(ba);
    row.model_size = mean_std(size);
    row.tpr = mean_std(tpr);
    row.tnr = mean_std(tnr);
    if (records) *records = std::move(local);
    return row;
}

namespace {

Dataset subset_rows(const Dataset& dataset,
                    std::span<const std::size_t> rows) {
    Dataset out;
    out.n = rows.size();
    out.p = dataset.p;
    out.feature_names = dataset.feature_names;
    out.x.resize(out.n * out.p);
    for (std::size_t i = 0; i < rows.size(); ++i)
        std::copy_n(dataset.x.data() + rows[i] * dataset.p, dataset.p,
                    out.x.data() + i * out.p);
    if (dataset.y.kind == Response::Kind::Continuous) {
        std::vector<double> y(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            y[i] = dataset.y.values[rows[i]];
        out.y = Response::continuous(std::move(y));
    } else {
        std::vector<int> labels(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            labels[i] = dataset.y.labels[rows[i]];
        out.y = Response::categorical(std::move(labels), dataset.y.n_levels);
    }
    return out;
}

}  // namespace

HoldoutReport holdout_protocol(const Dataset& dataset, std::size_t train_n,
                               std::size_t noise_p, SeedSpec seed,
                               const RfeConfig& config) {
    validate(dataset);
    if (train_n < 2 || train_n >= dataset.n)
        throw ConfigError("train_n must be in 2..n-1");

    // augment with synthetic standard-normal columns
    Dataset augmented;
    augmented.n = dataset.n;
    augmented.p = dataset.p + noise_p;
    augmented.y = dataset.y;
    augmented.x.resize(augmented.n * augmented.p);
    RngStream noise_rng = substream(seed, "noise", 0);
    for (std::size_t i = 0; i < dataset.n; ++i) {
        std::copy_n(dataset.x.data() + i * dataset.p, dataset.p,
                    augmented.x.data() + i * augmented.p);
        for (std::size_t j = 0; j < noise_p; ++j)
            augmented.x[i * augmented.p + dataset.p + j] = noise_rng.normal();
    }
    if (!dataset.feature_names.empty()) {
        augmented.feature_names = dataset.feature_names;
        for (std::size_t j = 0; j < noise_p; ++j)
            augmented.feature_names.push_back("noise_" + std::to_string(j + 1));
    }

    std::vector<std::size_t> perm =
        substream(seed, "split", 0).permutation(dataset.n);
    std::vector<std::size_t> train_rows(perm.begin(), perm.begin() + train_n);
    std::vector<std::size_t> test_rows(perm.begin() + train_n, perm.end());

    Dataset train = subset_rows(augmented, train_rows);
    Dataset test = subset_rows(augmented, test_rows);

    SelectionResult sel =
        fkrfe_select(train, config, derive_seed(seed, "select", 0));

    Forest final_forest = fit_forest(train, sel.chosen, config.forest,
                                     derive_seed(seed, "final", 0),
                                     config.threads);

    HoldoutReport report;
    report.chosen = sel.chosen;
    report.model_size = sel.chosen.size();
    report.noise_start = dataset.p;
    for (std::size_t j : sel.chosen.indices)
        if (j >= dataset.p) ++report.wrong_selection;

    std::vector<double> train_hat(train.n), test_hat(test.n);
    for (std::size_t i = 0; i < train.n; ++i)
        train_hat[i] = final_forest.predict(train, i);
    for (std::size_t i = 0; i < test.n; ++i)
        test_hat[i] = final_forest.predict(test, i);
    report.train = error_metrics(train_hat, train.y.values);
    report.test = error_metrics(test_hat, test.y.values);
    return report;
}

}  // namespace fkrfe
