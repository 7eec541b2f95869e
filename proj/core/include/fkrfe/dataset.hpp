#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fkrfe/errors.hpp"

namespace fkrfe {

// Response vector: continuous values or categorical labels in 0..n_levels-1.
struct Response {
    enum class Kind { Continuous, Categorical };

    Kind kind = Kind::Continuous;
    std::vector<double> values;  // continuous
    std::vector<int> labels;     // categorical
    int n_levels = 0;

    static Response continuous(std::vector<double> v);
    static Response categorical(std::vector<int> labels, int n_levels);

    std::size_t size() const {
        return kind == Kind::Continuous ? values.size() : labels.size();
    }
};

// Immutable after validate(); safe to share across threads.
struct Dataset {
    std::vector<double> x;  // row-major, n * p
    Response y;
    std::vector<std::string> feature_names;  // empty or size p
    std::size_t n = 0;
    std::size_t p = 0;

    double at(std::size_t row, std::size_t col) const { return x[row * p + col]; }

    std::vector<double> column(std::size_t col) const;
};

// Sorted, duplicate-free subset of 0..p-1.
struct ActiveSet {
    std::vector<std::size_t> indices;

    static ActiveSet full(std::size_t p);
    static ActiveSet of(std::vector<std::size_t> idx);  // sorts + dedups

    std::size_t size() const { return indices.size(); }
    bool contains(std::size_t j) const;
    ActiveSet without(std::size_t j) const;

    bool operator==(const ActiveSet&) const = default;
};

// Checks every structural invariant; returns its argument unchanged.
// Throws NonFiniteValue / LengthMismatch / EmptyLevel / TooFewRows.
const Dataset& validate(const Dataset& dataset);

}  // namespace fkrfe
