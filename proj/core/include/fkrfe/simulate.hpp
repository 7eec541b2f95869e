#pragma once

#include <cstddef>
#include <vector>

#include "fkrfe/rfe.hpp"

namespace fkrfe {

// One of the five benchmark designs. The true support is fixed by the
// generating equation.
struct ExampleSpec {
    int example_id = 1;
    std::size_t n = 100;
    std::size_t p = 100;
    ActiveSet truth;

    static ExampleSpec make(int example_id, std::size_t n, std::size_t p);
};

// Rows i.i.d. N(0, Sigma) with sigma_ij = rho^|i-j|, via the AR(1)
// recursion (exact for this covariance, O(np)). Row-major n*p.
std::vector<double> gen_ar_gaussian(std::size_t n, std::size_t p, double rho,
                                    RngStream& rng);

// Deterministic per seed.
Dataset gen_example(const ExampleSpec& spec, SeedSpec seed);

struct SelectionMetrics {
    double tpr = 0.0;
    double tnr = 0.0;
    double balanced_accuracy = 0.0;
    std::size_t model_size = 0;
};

SelectionMetrics selection_metrics(const ActiveSet& selected,
                                   const ActiveSet& truth, std::size_t p);

struct ErrorMetrics {
    double mse = 0.0;
    double mae = 0.0;
    double mape_percent = 0.0;
    std::size_t mape_excluded = 0;  // rows with y == 0, left out of MAPE
};

ErrorMetrics error_metrics(std::span<const double> y_hat,
                           std::span<const double> y);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation; 0 for a single rep
};

struct RepRecord {
    std::size_t rep = 0;
    ActiveSet selected;
    double oob_perf = 0.0;
    SelectionMetrics metrics;
};

struct MetricRow {
    MeanStd balanced_accuracy, model_size, tpr, tnr;
    std::size_t reps = 0;
};

MeanStd mean_std(std::span<const double> values);

// reps independent datasets + selections; per-rep records are kept so the
// aggregate stays auditable. Replications run in parallel, each inner
// pipeline single-threaded.
MetricRow run_benchmark(const ExampleSpec& spec, std::size_t reps,
                        const RfeConfig& config, SeedSpec seed,
                        std::vector<RepRecord>* records = nullptr);

struct HoldoutReport {
    ActiveSet chosen;
    std::size_t model_size = 0;
    std::size_t wrong_selection = 0;  // picks among the synthetic noise columns
    std::size_t noise_start = 0;      // first synthetic column index
    ErrorMetrics train;
    ErrorMetrics test;
};

// Application protocol: append noise_p standard-normal columns, split
// train/test at random, select on the training rows, fit a final forest on
// the chosen features, and report both error triples.
HoldoutReport holdout_protocol(const Dataset& dataset, std::size_t train_n,
                               std::size_t noise_p, SeedSpec seed,
                               const RfeConfig& config);

}  // namespace fkrfe
