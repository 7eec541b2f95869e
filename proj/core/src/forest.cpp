#include "fkrfe/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "fkrfe/parallel.hpp"

namespace fkrfe {

Task task_for(const Response& y) {
    return y.kind == Response::Kind::Categorical ? Task::Classification
                                                 : Task::Regression;
}

namespace {

constexpr double kSplitEps = 1e-12;

double response_value(const Dataset& dataset, std::size_t row) {
    return dataset.y.kind == Response::Kind::Continuous
               ? dataset.y.values[row]
               : static_cast<double>(dataset.y.labels[row]);
}

int argmax_class(const std::vector<int>& counts) {
    int best = 0;
    for (int c = 1; c < static_cast<int>(counts.size()); ++c)
        if (counts[c] > counts[best]) best = c;  // tie keeps the smaller index
    return best;
}

ForestParams resolve_params(const ForestParams& params, Task task,
                            std::size_t n_active) {
    ForestParams out = params;
    if (out.n_trees < 1) throw ConfigError("n_trees must be >= 1");
    if (out.mtry <= 0) {
        out.mtry = task == Task::Regression
                       ? std::max<int>(1, static_cast<int>(n_active / 3))
                       : std::max<int>(1, static_cast<int>(std::sqrt(
                                              static_cast<double>(n_active))));
    }
    out.mtry = std::min<int>(out.mtry, static_cast<int>(n_active));
    if (out.min_node_size <= 0)
        out.min_node_size = task == Task::Regression ? 5 : 1;
    if (out.importance_permutations < 1) out.importance_permutations = 1;
    return out;
}

struct SplitChoice {
    bool found = false;
    std::size_t feature = 0;
    double threshold = 0.0;
    double score = std::numeric_limits<double>::infinity();
};

class TreeBuilder {
  public:
    TreeBuilder(const Dataset& dataset, const ActiveSet& active,
                const ForestParams& params, Task task, int n_classes,
                RngStream& rng)
        : dataset_(dataset), active_(active), params_(params), task_(task),
          n_classes_(n_classes), rng_(rng),
          feature_pool_(active.indices) {}

    Tree build(std::span<const std::size_t> rows) {
        rows_.assign(rows.begin(), rows.end());
        tree_.nodes.clear();
        grow(0, rows_.size(), 0);
        return std::move(tree_);
    }

  private:
    int grow(std::size_t begin, std::size_t end, int depth) {
        const std::size_t size = end - begin;
        const int node_id = static_cast<int>(tree_.nodes.size());
        tree_.nodes.emplace_back();

        bool stop = size < 2 * static_cast<std::size_t>(params_.min_node_size) ||
                    (params_.max_depth > 0 && depth >= params_.max_depth) ||
                    is_pure(begin, end);

        SplitChoice split;
        if (!stop) split = best_split(begin, end);

        if (!split.found) {
            make_leaf(node_id, begin, end);
            return node_id;
        }

        tree_.nodes[node_id].feature = static_cast<int>(split.feature);
        tree_.nodes[node_id].threshold = split.threshold;

        auto mid_it = std::stable_partition(
            rows_.begin() + begin, rows_.begin() + end, [&](std::size_t row) {
                return dataset_.at(row, split.feature) <= split.threshold;
            });
        const std::size_t mid = static_cast<std::size_t>(mid_it - rows_.begin());

        const int left = grow(begin, mid, depth + 1);
        const int right = grow(mid, end, depth + 1);
        tree_.nodes[node_id].left = left;
        tree_.nodes[node_id].right = right;
        return node_id;
    }

    bool is_pure(std::size_t begin, std::size_t end) const {
        const double first = response_value(dataset_, rows_[begin]);
        for (std::size_t i = begin + 1; i < end; ++i)
            if (response_value(dataset_, rows_[i]) != first) return false;
        return true;
    }

    void make_leaf(int node_id, std::size_t begin, std::size_t end) {
        TreeNode& node = tree_.nodes[node_id];
        node.feature = -1;
        if (task_ == Task::Regression) {
            double sum = 0.0;
            for (std::size_t i = begin; i < end; ++i)
                sum += dataset_.y.values[rows_[i]];
            node.value = sum / static_cast<double>(end - begin);
        } else {
            node.class_counts.assign(n_classes_, 0);
            for (std::size_t i = begin; i < end; ++i)
                node.class_counts[dataset_.y.labels[rows_[i]]]++;
        }
    }

    // mtry features drawn without replacement; best candidate minimizes the
    // summed child impurity (SSE for regression, size-weighted Gini for
    // classification), threshold at the midpoint of adjacent distinct values
    SplitChoice best_split(std::size_t begin, std::size_t end) {
        const std::size_t size = end - begin;

        for (int k = 0; k < params_.mtry; ++k) {
            std::size_t pick = k + static_cast<std::size_t>(
                                       rng_.uniform_below(feature_pool_.size() - k));
            std::swap(feature_pool_[k], feature_pool_[pick]);
        }

        order_.resize(size);
        values_.resize(size);
        targets_.resize(size);

        SplitChoice best;
        best.score = parent_impurity(begin, end) - kSplitEps;

        for (int k = 0; k < params_.mtry; ++k) {
            const std::size_t feature = feature_pool_[k];
            for (std::size_t i = 0; i < size; ++i)
                values_[i] = dataset_.at(rows_[begin + i], feature);
            std::iota(order_.begin(), order_.end(), std::size_t{0});
            std::sort(order_.begin(), order_.end(),
                      [&](std::size_t a, std::size_t b) {
                          return values_[a] < values_[b];
                      });
            for (std::size_t i = 0; i < size; ++i)
                targets_[i] = response_value(dataset_, rows_[begin + order_[i]]);

            if (task_ == Task::Regression)
                scan_regression(feature, best);
            else
                scan_classification(feature, best);
        }
        return best;
    }

    double parent_impurity(std::size_t begin, std::size_t end) const {
        const double size = static_cast<double>(end - begin);
        if (task_ == Task::Regression) {
            double sum = 0.0, sumsq = 0.0;
            for (std::size_t i = begin; i < end; ++i) {
                const double y = dataset_.y.values[rows_[i]];
                sum += y;
                sumsq += y * y;
            }
            return sumsq - sum * sum / size;
        }
        std::vector<int> counts(n_classes_, 0);
        for (std::size_t i = begin; i < end; ++i)
            counts[dataset_.y.labels[rows_[i]]]++;
        double sq = 0.0;
        for (int c : counts) sq += static_cast<double>(c) * c;
        return size - sq / size;
    }

    void scan_regression(std::size_t feature, SplitChoice& best) {
        const std::size_t size = order_.size();
        double total = 0.0, total_sq = 0.0;
        for (double y : targets_) {
            total += y;
            total_sq += y * y;
        }
        double left = 0.0, left_sq = 0.0;
        for (std::size_t i = 0; i + 1 < size; ++i) {
            const double y = targets_[i];
            left += y;
            left_sq += y * y;
            const double xv = values_[order_[i]];
            const double xnext = values_[order_[i + 1]];
            if (xv == xnext) continue;
            const double nl = static_cast<double>(i + 1);
            const double nr = static_cast<double>(size - i - 1);
            const double score = (left_sq - left * left / nl) +
                                 ((total_sq - left_sq) -
                                  (total - left) * (total - left) / nr);
            if (score < best.score) {
                best.found = true;
                best.score = score;
                best.feature = feature;
                best.threshold = xv + (xnext - xv) / 2.0;
            }
        }
    }

    void scan_classification(std::size_t feature, SplitChoice& best) {
        const std::size_t size = order_.size();
        std::vector<int> total(n_classes_, 0);
        for (double y : targets_) total[static_cast<int>(y)]++;
        std::vector<int> left(n_classes_, 0);
        for (std::size_t i = 0; i + 1 < size; ++i) {
            left[static_cast<int>(targets_[i])]++;
            const double xv = values_[order_[i]];
            const double xnext = values_[order_[i + 1]];
            if (xv == xnext) continue;
            const double nl = static_cast<double>(i + 1);
            const double nr = static_cast<double>(size - i - 1);
            double left_sq = 0.0, right_sq = 0.0;
            for (int c = 0; c < n_classes_; ++c) {
                left_sq += static_cast<double>(left[c]) * left[c];
                const double rc = static_cast<double>(total[c] - left[c]);
                right_sq += rc * rc;
            }
            const double score = (nl - left_sq / nl) + (nr - right_sq / nr);
            if (score < best.score) {
                best.found = true;
                best.score = score;
                best.feature = feature;
                best.threshold = xv + (xnext - xv) / 2.0;
            }
        }
    }

    const Dataset& dataset_;
    const ActiveSet& active_;
    const ForestParams& params_;
    Task task_;
    int n_classes_;
    RngStream& rng_;

    Tree tree_;
    std::vector<std::size_t> rows_;
    std::vector<std::size_t> feature_pool_;
    std::vector<std::size_t> order_;
    std::vector<double> values_;
    std::vector<double> targets_;
};

}  // namespace

std::size_t Tree::leaf_for(const Dataset& dataset, std::size_t row,
                           int override_feature, double override_value) const {
    std::size_t node = 0;
    while (!nodes[node].is_leaf()) {
        const TreeNode& nd = nodes[node];
        const double v = nd.feature == override_feature
                             ? override_value
                             : dataset.at(row, nd.feature);
        node = v <= nd.threshold ? nd.left : nd.right;
    }
    return node;
}

double Tree::predict_value(const Dataset& dataset, std::size_t row,
                           int override_feature, double override_value) const {
    return nodes[leaf_for(dataset, row, override_feature, override_value)].value;
}

int Tree::predict_class(const Dataset& dataset, std::size_t row,
                        int override_feature, double override_value) const {
    return argmax_class(
        nodes[leaf_for(dataset, row, override_feature, override_value)]
            .class_counts);
}

bool Tree::uses_feature(std::size_t j) const {
    for (const TreeNode& node : nodes)
        if (!node.is_leaf() && node.feature == static_cast<int>(j)) return true;
    return false;
}

double Forest::predict(const Dataset& dataset, std::size_t row) const {
    if (task == Task::Regression) {
        double sum = 0.0;
        for (const Tree& tree : trees) sum += tree.predict_value(dataset, row);
        return sum / static_cast<double>(trees.size());
    }
    std::vector<int> votes(n_classes, 0);
    for (const Tree& tree : trees) votes[tree.predict_class(dataset, row)]++;
    return static_cast<double>(argmax_class(votes));
}

Tree fit_tree(const Dataset& dataset, std::span<const std::size_t> rows,
              const ActiveSet& active_features, const ForestParams& params,
              Task task, int n_classes, RngStream& rng) {
    if (rows.empty()) throw ConfigError("fit_tree needs at least one row");
    ForestParams resolved = resolve_params(params, task, active_features.size());
    TreeBuilder builder(dataset, active_features, resolved, task, n_classes, rng);
    return builder.build(rows);
}

Forest fit_forest(const Dataset& dataset, const ActiveSet& active_features,
                  const ForestParams& params, SeedSpec seed, int threads) {
    if (active_features.size() == 0)
        throw ConfigError("fit_forest needs a nonempty active set");

    Forest forest;
    forest.task = task_for(dataset.y);
    forest.params = resolve_params(params, forest.task, active_features.size());
    forest.active_features = active_features;
    forest.n_classes =
        forest.task == Task::Classification ? dataset.y.n_levels : 0;
    forest.n_rows = dataset.n;
    forest.n_features = dataset.p;

    const std::size_t M = static_cast<std::size_t>(forest.params.n_trees);
    forest.trees.resize(M);
    forest.inbag.resize(M);
    forest.oob.resize(M);

    parallel_for(M, threads, [&](std::size_t m) {
        RngStream rng = substream(seed, "tree", m);
        std::vector<std::size_t>& inbag = forest.inbag[m];
        inbag.resize(dataset.n);
        std::vector<char> seen(dataset.n, 0);
        for (std::size_t i = 0; i < dataset.n; ++i) {
            inbag[i] = static_cast<std::size_t>(rng.uniform_below(dataset.n));
            seen[inbag[i]] = 1;
        }
        for (std::size_t i = 0; i < dataset.n; ++i)
            if (!seen[i]) forest.oob[m].push_back(i);
        forest.trees[m] = fit_tree(dataset, inbag, active_features,
                                   forest.params, forest.task,
                                   forest.n_classes, rng);
    });
    return forest;
}

double risk(const Tree& tree, const Dataset& dataset,
            std::span<const std::size_t> rows, Task task) {
    if (rows.empty()) throw EmptySampleSet();
    double sum = 0.0;
    if (task == Task::Regression) {
        for (std::size_t row : rows) {
            const double d = dataset.y.values[row] -
                             tree.predict_value(dataset, row);
            sum += d * d;
        }
    } else {
        for (std::size_t row : rows)
            sum += tree.predict_class(dataset, row) != dataset.y.labels[row];
    }
    return sum / static_cast<double>(rows.size());
}

double risk(const Forest& forest, const Dataset& dataset,
            std::span<const std::size_t> rows) {
    if (rows.empty()) throw EmptySampleSet();
    double sum = 0.0;
    for (std::size_t row : rows) {
        const double pred = forest.predict(dataset, row);
        if (forest.task == Task::Regression) {
            const double d = dataset.y.values[row] - pred;
            sum += d * d;
        } else {
            sum += static_cast<int>(pred) != dataset.y.labels[row];
        }
    }
    return sum / static_cast<double>(rows.size());
}

double oob_performance(const Forest& forest, const Dataset& dataset) {
    const std::size_t n = dataset.n;
    if (forest.task == Task::Regression) {
        std::vector<double> sums(n, 0.0);
        std::vector<int> counts(n, 0);
        for (std::size_t m = 0; m < forest.trees.size(); ++m) {
            for (std::size_t row : forest.oob[m]) {
                sums[row] += forest.trees[m].predict_value(dataset, row);
                counts[row]++;
            }
        }
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (counts[i] == 0) throw RowNeverOob(i);
            const double d = dataset.y.values[i] - sums[i] / counts[i];
            sum += d * d;
        }
        return sum / static_cast<double>(n);
    }

    std::vector<std::vector<int>> votes(n, std::vector<int>(forest.n_classes, 0));
    std::vector<int> counts(n, 0);
    for (std::size_t m = 0; m < forest.trees.size(); ++m) {
        for (std::size_t row : forest.oob[m]) {
            votes[row][forest.trees[m].predict_class(dataset, row)]++;
            counts[row]++;
        }
    }
    double errors = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (counts[i] == 0) throw RowNeverOob(i);
        errors += argmax_class(votes[i]) != dataset.y.labels[i];
    }
    return errors / static_cast<double>(n);
}

namespace {

// Eq.-style per-tree contribution: permuted OOB risk minus plain OOB risk.
double tree_importance(const Forest& forest, const Dataset& dataset,
                       std::size_t m, std::size_t feature_j, SeedSpec seed) {
    const std::vector<std::size_t>& oob = forest.oob[m];
    if (oob.empty()) throw EmptyOob(m);

    const Tree& tree = forest.trees[m];
    const double base = risk(tree, dataset, oob, forest.task);

    RngStream rng =
        substream(seed, "perm", m * forest.n_features + feature_j);
    const int reps = forest.params.importance_permutations;
    const int jf = static_cast<int>(feature_j);

    double permuted_sum = 0.0;
    for (int r = 0; r < reps; ++r) {
        std::vector<std::size_t> perm = rng.permutation(oob.size());
        double sum = 0.0;
        for (std::size_t i = 0; i < oob.size(); ++i) {
            const std::size_t row = oob[i];
            const double value = dataset.at(oob[perm[i]], feature_j);
            if (forest.task == Task::Regression) {
                const double d = dataset.y.values[row] -
                                 tree.predict_value(dataset, row, jf, value);
                sum += d * d;
            } else {
                sum += tree.predict_class(dataset, row, jf, value) !=
                       dataset.y.labels[row];
            }
        }
        permuted_sum += sum / static_cast<double>(oob.size());
    }
    return permuted_sum / reps - base;
}

}  // namespace

double permutation_importance(const Forest& forest, const Dataset& dataset,
                              std::size_t feature_j, SeedSpec seed) {
    if (!forest.active_features.contains(feature_j))
        throw ConfigError("feature " + std::to_string(feature_j) +
                          " is not in the forest's active set");
    double sum = 0.0;
    for (std::size_t m = 0; m < forest.trees.size(); ++m)
        sum += tree_importance(forest, dataset, m, feature_j, seed);
    return sum / static_cast<double>(forest.trees.size());
}

std::vector<std::pair<std::size_t, double>> importance_ranking(
    const Forest& forest, const Dataset& dataset, SeedSpec seed, int threads) {
    const auto& active = forest.active_features.indices;
    std::vector<std::pair<std::size_t, double>> out(active.size());
    parallel_for(active.size(), threads, [&](std::size_t k) {
        out[k] = {active[k],
                  permutation_importance(forest, dataset, active[k], seed)};
    });
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second < b.second;
        return a.first > b.first;  // ties: larger index eliminated first
    });
    return out;
}

}  // namespace fkrfe
