#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "shapfold/common.hpp"

namespace shapfold {

enum class ColumnKind { Numeric, Categorical };

// Cell value standing in for an empty / "?" entry. Missing values form their
// own category so induced rules can test for "value unknown".
inline constexpr const char* kMissingValue = "missing";

// Tabular data as loaded from CSV, before binarization. Feature columns keep
// their original names and values so rules render in source vocabulary.
struct RawTable {
    std::vector<std::string> column_names;
    std::vector<ColumnKind> column_kinds;
    std::vector<std::vector<std::string>> rows;
    std::string label_column;
    std::string positive_label;

    std::size_t label_index() const;
    std::size_t feature_count() const { return column_names.empty() ? 0 : column_names.size() - 1; }
};

enum class Polarity { Present, Absent };

// One binary feature: the test feature(X,value) (or its negation for
// Polarity::Absent).
struct Item {
    std::string feature;
    std::string value;
    Polarity polarity = Polarity::Present;

    bool operator==(const Item&) const = default;
};

struct Example {
    std::vector<std::uint8_t> bits;  // one per item, 0/1
    int label = 0;                   // +1 / -1
    int id = 0;                      // index within the owning dataset
};

struct Dataset {
    std::vector<Item> items;
    std::vector<Example> examples;

    std::size_t item_count() const { return items.size(); }

    std::string to_json_string() const;
    static Dataset from_json_string(const std::string& text);
};

// Loads an RFC-4180-style CSV with header row. Column kinds are inferred:
// numeric iff every non-missing cell parses as a number. Cells that are empty
// or "?" are recorded as kMissingValue.
RawTable load_csv(const std::string& path, const std::string& label_column,
                  const std::string& positive_label);

// Replaces every numeric column with equal-width interval labels. Bin edges
// are computed from the rows listed in stat_rows (pass all row indices for
// whole-table statistics); out-of-range values clamp into the end bins.
RawTable discretize(const RawTable& table, int n_bins, const std::vector<int>& stat_rows);
RawTable discretize(const RawTable& table, int n_bins);

// One-hot expansion of an all-categorical table. Item order is deterministic:
// column order, then value lexicographic.
Dataset binarize(const RawTable& table);

// Stratified test-row selection from labels alone; split() and the pipeline's
// discretization statistics both derive from this so they agree.
std::vector<int> stratified_test_ids(const std::vector<int>& labels, double test_fraction,
                                     std::uint64_t seed);

// (train, test); deterministic per seed, disjoint, union = input. Examples
// are re-indexed 0..n within each side.
std::pair<Dataset, Dataset> split(const Dataset& dataset, double test_fraction,
                                  std::uint64_t seed);

}  // namespace shapfold
