#include "fkrfe/dataset.hpp"

#include <algorithm>
#include <cmath>

namespace fkrfe {

Response Response::continuous(std::vector<double> v) {
    Response r;
    r.kind = Kind::Continuous;
    r.values = std::move(v);
    return r;
}

Response Response::categorical(std::vector<int> labels, int n_levels) {
    Response r;
    r.kind = Kind::Categorical;
    r.labels = std::move(labels);
    r.n_levels = n_levels;
    return r;
}

std::vector<double> Dataset::column(std::size_t col) const {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = at(i, col);
    return out;
}

ActiveSet ActiveSet::full(std::size_t p) {
    ActiveSet s;
    s.indices.resize(p);
    for (std::size_t j = 0; j < p; ++j) s.indices[j] = j;
    return s;
}

ActiveSet ActiveSet::of(std::vector<std::size_t> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    ActiveSet s;
    s.indices = std::move(idx);
    return s;
}

bool ActiveSet::contains(std::size_t j) const {
    return std::binary_search(indices.begin(), indices.end(), j);
}

ActiveSet ActiveSet::without(std::size_t j) const {
    ActiveSet s;
    s.indices.reserve(indices.size());
    for (std::size_t k : indices)
        if (k != j) s.indices.push_back(k);
    return s;
}

const Dataset& validate(const Dataset& dataset) {
    if (dataset.n < 2) throw TooFewRows("dataset needs at least 2 rows");
    if (dataset.p < 1) throw LengthMismatch("dataset needs at least 1 predictor");
    if (dataset.x.size() != dataset.n * dataset.p)
        throw LengthMismatch("predictor matrix size does not match n*p");
    if (dataset.y.size() != dataset.n)
        throw LengthMismatch("response length does not match row count");
    if (!dataset.feature_names.empty() &&
        dataset.feature_names.size() != dataset.p)
        throw LengthMismatch("feature_names length does not match p");

    for (std::size_t i = 0; i < dataset.n; ++i)
        for (std::size_t j = 0; j < dataset.p; ++j)
            if (!std::isfinite(dataset.at(i, j))) throw NonFiniteValue(i, j);

    if (dataset.y.kind == Response::Kind::Continuous) {
        for (std::size_t i = 0; i < dataset.n; ++i)
            if (!std::isfinite(dataset.y.values[i]))
                throw NonFiniteValue(i, dataset.p);
    } else {
        if (dataset.y.n_levels < 2)
            throw ValidationError("categorical response needs at least 2 levels");
        std::vector<int> seen(dataset.y.n_levels, 0);
        for (std::size_t i = 0; i < dataset.n; ++i) {
            int l = dataset.y.labels[i];
            if (l < 0 || l >= dataset.y.n_levels)
                throw ValidationError("label out of range at row " +
                                      std::to_string(i));
            seen[l] = 1;
        }
        for (int l = 0; l < dataset.y.n_levels; ++l)
            if (!seen[l]) throw EmptyLevel(l);
    }
    return dataset;
}

}  // namespace fkrfe
