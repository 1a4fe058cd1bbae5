#pragma once

// Shared fixture builders for the unit and acceptance suites.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "shapfold/common.hpp"
#include "shapfold/dataset.hpp"
#include "shapfold/model.hpp"
#include "shapfold/transact.hpp"

namespace testutil {

inline std::string data_file(const std::string& name) {
    return std::string(SHAPFOLD_DATA_DIR) + "/" + name;
}

// Writes `text` to a fresh file under the system temp dir and returns its path.
inline std::string write_temp(const std::string& stem, const std::string& text) {
    static int counter = 0;
    const auto path = std::filesystem::temp_directory_path() /
                      (stem + "." + std::to_string(++counter) + ".tmp");
    std::ofstream os(path, std::ios::binary);
    os << text;
    return path.string();
}

inline std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    return text;
}

// Dataset from explicit bit patterns; labels +1/-1. Items are named
// f0="true", f1="true", ... so induced literals render as unary tests.
inline shapfold::Dataset make_dataset(const std::vector<std::vector<std::uint8_t>>& patterns,
                                      const std::vector<int>& labels) {
    shapfold::Dataset ds;
    const std::size_t width = patterns.empty() ? 0 : patterns[0].size();
    for (std::size_t i = 0; i < width; ++i)
        ds.items.push_back(shapfold::Item{"f" + std::to_string(i), "true",
                                          shapfold::Polarity::Present});
    for (std::size_t r = 0; r < patterns.size(); ++r) {
        shapfold::Example ex;
        ex.bits = patterns[r];
        ex.label = labels[r];
        ex.id = static_cast<int>(r);
        ds.examples.push_back(std::move(ex));
    }
    return ds;
}

inline std::unique_ptr<shapfold::TreeNode> leaf(double score) {
    auto n = std::make_unique<shapfold::TreeNode>();
    n->item = -1;
    n->score = score;
    return n;
}

inline std::unique_ptr<shapfold::TreeNode> stump(int item, double on_present,
                                                 double on_absent) {
    auto n = std::make_unique<shapfold::TreeNode>();
    n->item = item;
    n->present = leaf(on_present);
    n->absent = leaf(on_absent);
    return n;
}

// Random transaction DB: up to max_items distinct items, up to max_transactions
// rows, per-item utilities in [1, max_utility].
inline shapfold::TransactionDB random_db(std::uint64_t seed, int max_items,
                                         int max_transactions, long long max_utility) {
    shapfold::Rng rng(seed);
    shapfold::TransactionDB db;
    db.item_count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_items)));
    const int rows = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_transactions)));
    for (int r = 0; r < rows; ++r) {
        shapfold::Transaction t;
        t.example_id = r;
        for (int i = 0; i < db.item_count; ++i) {
            if (rng.below(3) == 0) continue;  // ~2/3 presence
            t.entries.push_back({i, 1 + static_cast<long long>(rng.below(
                                        static_cast<std::uint64_t>(max_utility)))});
        }
        db.transactions.push_back(std::move(t));
    }
    return db;
}

}  // namespace testutil
