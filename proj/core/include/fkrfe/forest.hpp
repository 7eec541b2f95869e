#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "fkrfe/dataset.hpp"
#include "fkrfe/rng.hpp"

namespace fkrfe {

enum class Task { Regression, Classification };

Task task_for(const Response& y);

struct ForestParams {
    int n_trees = 500;
    int mtry = 0;           // 0 = auto: max(1, p/3) regression, floor(sqrt(p)) classification
    int min_node_size = 0;  // 0 = auto: 5 regression, 1 classification
    int max_depth = 0;      // 0 = unlimited
    int importance_permutations = 1;  // permutation replicates per tree
};

// Flat binary tree. Internal nodes carry a split, leaves carry the
// prediction (mean response or class counts).
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;             // regression leaf
    std::vector<int> class_counts;  // classification leaf

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;

    // row value for feature j is dataset.at(row, j), except when j equals
    // override_feature the override_value is used instead (permutation path)
    std::size_t leaf_for(const Dataset& dataset, std::size_t row,
                         int override_feature = -1,
                         double override_value = 0.0) const;
    double predict_value(const Dataset& dataset, std::size_t row,
                         int override_feature = -1,
                         double override_value = 0.0) const;
    int predict_class(const Dataset& dataset, std::size_t row,
                      int override_feature = -1,
                      double override_value = 0.0) const;
    bool uses_feature(std::size_t j) const;
};

struct Forest {
    std::vector<Tree> trees;
    std::vector<std::vector<std::size_t>> inbag;  // bootstrap rows, with repeats
    std::vector<std::vector<std::size_t>> oob;    // rows absent from inbag, sorted
    ForestParams params;                          // resolved values
    Task task = Task::Regression;
    ActiveSet active_features;
    int n_classes = 0;
    std::size_t n_rows = 0;
    std::size_t n_features = 0;  // dataset p, fixes the permutation stream keys

    double predict(const Dataset& dataset, std::size_t row) const;
};

// Single CART tree on the given rows (greedy, variance / Gini criterion,
// midpoint thresholds, mtry features per node).
Tree fit_tree(const Dataset& dataset, std::span<const std::size_t> rows,
              const ActiveSet& active_features, const ForestParams& params,
              Task task, int n_classes, RngStream& rng);

// M trees on independent bootstrap samples; tree m draws everything from
// substream(seed, "tree", m), so the result is identical for any thread count.
Forest fit_forest(const Dataset& dataset, const ActiveSet& active_features,
                  const ForestParams& params, SeedSpec seed, int threads = 1);

// Mean squared error (regression) or misclassification rate (classification)
// of a single tree over the given rows.
double risk(const Tree& tree, const Dataset& dataset,
            std::span<const std::size_t> rows, Task task);

// Same, for the aggregated forest prediction.
double risk(const Forest& forest, const Dataset& dataset,
            std::span<const std::size_t> rows);

// Error of per-row predictions aggregated over the trees for which the row
// is out-of-bag. Throws RowNeverOob if some row is in-bag everywhere.
double oob_performance(const Forest& forest, const Dataset& dataset);

// Mean over trees of the OOB risk increase after permuting feature j's
// out-of-bag values; tree m uses substream(seed, "perm", m*p + j).
double permutation_importance(const Forest& forest, const Dataset& dataset,
                              std::size_t feature_j, SeedSpec seed);

// Importance of every active feature, sorted ascending; ties place the
// larger feature index first.
std::vector<std::pair<std::size_t, double>> importance_ranking(
    const Forest& forest, const Dataset& dataset, SeedSpec seed,
    int threads = 1);

}  // namespace fkrfe
