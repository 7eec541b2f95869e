#include "fkrfe/kolmogorov.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fkrfe/parallel.hpp"

namespace fkrfe {

std::vector<Partition> build_partitions(const Response& y,
                                        const std::vector<int>& slice_counts) {
    std::vector<Partition> out;

    if (y.kind == Response::Kind::Categorical) {
        Partition part;
        part.kind = Partition::Kind::CategoricalLevels;
        part.slice_count = y.n_levels;
        part.requested_slices = y.n_levels;
        out.push_back(std::move(part));
        return out;
    }

    const std::size_t n = y.values.size();
    std::vector<double> sorted(y.values);
    std::sort(sorted.begin(), sorted.end());

    for (int g : slice_counts) {
        if (g < 2) throw ConfigError("slice count must be >= 2");

        // Slice l covers sample ranks ceil(n(l-1)/g)+1 .. ceil(nl/g); the
        // boundary value is the first order statistic of the next slice.
        std::vector<double> bounds;
        for (int l = 1; l < g; ++l) {
            std::size_t rank = static_cast<std::size_t>(
                std::ceil(static_cast<double>(n) * l / g));
            if (rank >= n) continue;
            bounds.push_back(sorted[rank]);  // rank is the 0-based index of rank+1
        }
        bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());
        // a boundary equal to the minimum would leave the bottom slice empty
        while (!bounds.empty() && bounds.front() <= sorted.front())
            bounds.erase(bounds.begin());

        if (bounds.empty()) throw EmptySlice(g);

        Partition part;
        part.kind = Partition::Kind::QuantileOfY;
        part.slice_count = static_cast<int>(bounds.size()) + 1;
        part.requested_slices = g;
        part.boundaries = std::move(bounds);
        out.push_back(std::move(part));
    }
    return out;
}

SliceAssignment assign_slices(const Response& y, const Partition& partition) {
    SliceAssignment assignment;
    assignment.counts.assign(partition.slice_count, 0);

    if (partition.kind == Partition::Kind::CategoricalLevels) {
        assignment.labels = y.labels;
        for (int l : assignment.labels) assignment.counts[l]++;
        return assignment;
    }

    const auto& b = partition.boundaries;
    assignment.labels.resize(y.values.size());
    for (std::size_t i = 0; i < y.values.size(); ++i) {
        // right-open intervals: label = number of boundaries <= y_i
        int label = static_cast<int>(
            std::upper_bound(b.begin(), b.end(), y.values[i]) - b.begin());
        assignment.labels[i] = label;
        assignment.counts[label]++;
    }
    return assignment;
}

double two_sample_ks(std::span<const double> sample_a,
                     std::span<const double> sample_b) {
    if (sample_a.empty() || sample_b.empty()) throw EmptySample();

    std::vector<double> a(sample_a.begin(), sample_a.end());
    std::vector<double> b(sample_b.begin(), sample_b.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());

    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double sup = 0.0;
    while (ia < a.size() && ib < b.size()) {
        // advance both samples through all copies of the smaller value
        // before reading the CDF difference
        const double v = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] == v) ++ia;
        while (ib < b.size() && b[ib] == v) ++ib;
        sup = std::max(sup, std::fabs(ia / na - ib / nb));
    }
    // once either sample is exhausted its CDF sits at 1 and the gap can
    // only shrink, so the loop has already seen the sup
    return sup;
}

double partition_statistic(std::span<const double> x_col,
                           const SliceAssignment& assignment) {
    const int g = static_cast<int>(assignment.counts.size());
    std::vector<std::vector<double>> groups(g);
    for (int l = 0; l < g; ++l) groups[l].reserve(assignment.counts[l]);
    for (std::size_t i = 0; i < x_col.size(); ++i)
        groups[assignment.labels[i]].push_back(x_col[i]);

    double best = 0.0;
    for (int l = 0; l < g; ++l)
        for (int m = l + 1; m < g; ++m)
            best = std::max(best, two_sample_ks(groups[l], groups[m]));
    return best;
}

double fused_statistic(std::span<const double> x_col,
                       const std::vector<SliceAssignment>& assignments) {
    double sum = 0.0;
    for (const auto& assignment : assignments)
        sum += partition_statistic(x_col, assignment);
    return sum;
}

ScreenResult screen(const Dataset& dataset, const std::vector<int>& slice_counts,
                    std::size_t d_n, int threads) {
    if (d_n < 1 || d_n > dataset.p)
        throw ConfigError("d_n must be in 1..p");

    const auto partitions = build_partitions(dataset.y, slice_counts);
    std::vector<SliceAssignment> assignments;
    assignments.reserve(partitions.size());
    for (const auto& part : partitions)
        assignments.push_back(assign_slices(dataset.y, part));

    ScreenResult result;
    result.ranking.statistics.resize(dataset.p);
    parallel_for(dataset.p, threads, [&](std::size_t j) {
        result.ranking.statistics[j] =
            fused_statistic(dataset.column(j), assignments);
    });

    result.ranking.order.resize(dataset.p);
    std::iota(result.ranking.order.begin(), result.ranking.order.end(), 0);
    std::sort(result.ranking.order.begin(), result.ranking.order.end(),
              [&](std::size_t a, std::size_t b) {
                  double sa = result.ranking.statistics[a];
                  double sb = result.ranking.statistics[b];
                  if (sa != sb) return sa > sb;
                  return a < b;
              });

    result.selected = ActiveSet::of(std::vector<std::size_t>(
        result.ranking.order.begin(), result.ranking.order.begin() + d_n));
    return result;
}

std::size_t default_dn(std::size_t n, double a) {
    const double base = std::ceil(static_cast<double>(n) / std::log(static_cast<double>(n)));
    return static_cast<std::size_t>(std::ceil(a * base));
}

}  // namespace fkrfe
