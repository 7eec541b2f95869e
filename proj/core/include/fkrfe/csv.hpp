#pragma once

#include <iosfwd>
#include <string>

#include "fkrfe/dataset.hpp"

namespace fkrfe {

// Picks the response column by header name or 0-based index (a selector
// that parses as an integer and is not a header name is taken as an index).
struct ResponseSelector {
    std::string selector;
};

// RFC-4180-style CSV with a header row; all predictor cells must be numeric.
// Categorical responses map distinct labels to 0..g-1 in first-appearance
// order. The returned dataset is already validated.
Dataset parse_csv(const std::string& path, const ResponseSelector& response,
                  bool categorical);

Dataset parse_csv_stream(std::istream& in, const ResponseSelector& response,
                         bool categorical);

}  // namespace fkrfe
