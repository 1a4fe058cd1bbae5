#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "shapfold/dataset.hpp"
#include "shapfold/explainer.hpp"

namespace shapfold {

enum class Orientation { TowardPositive, TowardNegative };

inline Orientation flip(Orientation o) {
    return o == Orientation::TowardPositive ? Orientation::TowardNegative
                                            : Orientation::TowardPositive;
}

struct TransactionEntry {
    int item = 0;
    long long utility = 0;  // quantized, in [1, utility_scale]
};

struct Transaction {
    int example_id = 0;
    std::vector<TransactionEntry> entries;  // sorted by item, no duplicates

    long long total_utility() const;
};

struct TransactionDB {
    std::vector<Transaction> transactions;
    int item_count = 0;
    long long utility_scale = 1000000;
    std::vector<std::string> item_names;  // render names; empty -> use indices

    // Text layout: `items : total-utility : per-item-utilities`, one line per
    // transaction, items as names (or indices).
    void dump(std::ostream& os) const;
    static TransactionDB parse(std::istream& is);
    static TransactionDB parse_file(const std::string& path);
};

inline constexpr long long kUtilityScale = 1000000;

// For each listed example: keep the present items whose oriented attribution
// is strictly positive, normalize by the largest kept attribution in the
// whole DB, quantize to utility_scale. Entries quantizing to 0 are dropped;
// examples with nothing kept still produce an (empty) transaction so example
// indexing stays aligned. Throws DegenerateAttributionError when no oriented
// attribution in the whole subset is positive.
TransactionDB build_transactions(const std::vector<int>& example_ids, const Dataset& dataset,
                                 const ShapMatrix& shap, Orientation orientation);

}  // namespace shapfold
