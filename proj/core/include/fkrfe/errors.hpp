#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fkrfe {

// Base for everything the library throws on bad input or bad state.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input that fails a structural invariant (caller's data is wrong).
struct ValidationError : Error {
    using Error::Error;
};

struct NonFiniteValue : ValidationError {
    std::size_t row, col;
    NonFiniteValue(std::size_t r, std::size_t c)
        : ValidationError("non-finite value at row " + std::to_string(r) +
                          ", column " + std::to_string(c)),
          row(r), col(c) {}
};

struct LengthMismatch : ValidationError {
    using ValidationError::ValidationError;
};

struct TooFewRows : ValidationError {
    using ValidationError::ValidationError;
};

struct EmptyLevel : ValidationError {
    int level;
    explicit EmptyLevel(int l)
        : ValidationError("categorical level " + std::to_string(l) +
                          " has no observations"),
          level(l) {}
};

// Quantile slicing could not produce at least two nonempty slices.
struct EmptySlice : Error {
    int slice_count;
    explicit EmptySlice(int g)
        : Error("response ties leave fewer than 2 nonempty slices for g=" +
                std::to_string(g)),
          slice_count(g) {}
};

struct EmptySample : Error {
    EmptySample() : Error("empty sample in two-sample statistic") {}
};

struct EmptySampleSet : Error {
    EmptySampleSet() : Error("risk evaluated on an empty sample set") {}
};

struct RowNeverOob : Error {
    std::size_t row;
    explicit RowNeverOob(std::size_t r)
        : Error("row " + std::to_string(r) +
                " is in-bag for every tree; increase the tree count"),
          row(r) {}
};

struct EmptyOob : Error {
    std::size_t tree;
    explicit EmptyOob(std::size_t m)
        : Error("tree " + std::to_string(m) + " has no out-of-bag rows"),
          tree(m) {}
};

struct ConfigError : Error {
    using Error::Error;
};

struct AllZeroResponse : Error {
    AllZeroResponse() : Error("MAPE undefined: every response value is zero") {}
};

// CSV ingestion problems; row/col are 1-based as shown to the user.
struct CsvError : ValidationError {
    using ValidationError::ValidationError;
};

struct NonNumericCell : CsvError {
    std::size_t row, col;
    NonNumericCell(std::size_t r, std::size_t c, const std::string& text)
        : CsvError("non-numeric cell \"" + text + "\" at row " +
                   std::to_string(r) + ", column " + std::to_string(c)),
          row(r), col(c) {}
};

struct DuplicateHeader : CsvError {
    explicit DuplicateHeader(const std::string& name)
        : CsvError("duplicate column name \"" + name + "\" in header") {}
};

struct EmptyFile : CsvError {
    using CsvError::CsvError;
};

}  // namespace fkrfe
