#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fkrfe/dataset.hpp"

namespace fkrfe {

// One slicing scheme over the response. Continuous responses are cut at
// empirical quantiles into right-open intervals [a_{l-1}, a_l); categorical
// responses are sliced by level.
struct Partition {
    enum class Kind { QuantileOfY, CategoricalLevels };

    Kind kind = Kind::QuantileOfY;
    int slice_count = 0;
    int requested_slices = 0;           // what the caller asked for
    std::vector<double> boundaries;     // slice_count - 1, strictly increasing
};

struct SliceAssignment {
    std::vector<int> labels;  // n entries in 0..slice_count-1
    std::vector<int> counts;  // per-slice sizes, all >= 1
};

struct FilterRanking {
    std::vector<double> statistics;   // fused statistic per feature
    std::vector<std::size_t> order;   // features sorted by statistic descending,
                                      // ties by smaller index first
};

// Continuous: one partition per requested slice count, interior boundaries
// at the l/g empirical quantiles. Tied response values that would leave a
// slice empty are merged into the neighbouring slice, so the realized
// slice_count can be smaller than requested; fewer than 2 realizable slices
// throws EmptySlice. Categorical: a single partition by level.
std::vector<Partition> build_partitions(const Response& y,
                                        const std::vector<int>& slice_counts);

SliceAssignment assign_slices(const Response& y, const Partition& partition);

// Exact two-sample Kolmogorov-Smirnov distance, sup over the pooled points.
double two_sample_ks(std::span<const double> sample_a,
                     std::span<const double> sample_b);

// Max of two_sample_ks over all unordered slice pairs.
double partition_statistic(std::span<const double> x_col,
                           const SliceAssignment& assignment);

// Sum of partition_statistic over all partitions.
double fused_statistic(std::span<const double> x_col,
                       const std::vector<SliceAssignment>& assignments);

struct ScreenResult {
    ActiveSet selected;  // V_0, the top d_n features
    FilterRanking ranking;
};

ScreenResult screen(const Dataset& dataset, const std::vector<int>& slice_counts,
                    std::size_t d_n, int threads = 1);

// ceil(a * ceil(n / ln n)); callers cap the result at p.
std::size_t default_dn(std::size_t n, double a = 1.0);

}  // namespace fkrfe
