#pragma once

#include <string>
#include <vector>

#include "fkrfe/rfe.hpp"
#include "fkrfe/simulate.hpp"

namespace fkrfe {

// JSON is the primary machine format. Feature identity always carries the
// 0-based index; names are added when the dataset has a header.
std::string selection_to_json(const SelectionResult& result,
                              const std::vector<std::string>& feature_names,
                              int indent = 2);

// Inverse of selection_to_json; feature names are ignored on the way in.
SelectionResult selection_from_json(const std::string& text);

// Flat per-step trace for spreadsheet inspection:
// step,set_size,oob_perf,eliminated,active_set
std::string trace_to_csv(const SelectionResult& result);

std::string benchmark_to_json(const MetricRow& row,
                              const std::vector<RepRecord>& records,
                              int example_id, std::size_t n, std::size_t p,
                              int indent = 2);

// One "mean (std)" summary table row.
std::string benchmark_to_table(const MetricRow& row, int example_id,
                               std::size_t p);

std::string holdout_to_json(const HoldoutReport& report,
                            const std::vector<std::string>& feature_names,
                            int indent = 2);

}  // namespace fkrfe
