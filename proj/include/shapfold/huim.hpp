#pragma once

#include <vector>

#include "shapfold/transact.hpp"

namespace shapfold {

struct MinedItemset {
    std::vector<int> items;  // sorted ascending
    long long utility = 0;
    int support = 0;
};

// Canonical result order: utility desc, then size asc, then lexicographic on
// the sorted item indices.
bool mined_before(const MinedItemset& a, const MinedItemset& b);

// Exactly the itemsets with utility >= min_util. TWU-pruned projection search.
std::vector<MinedItemset> mine_min_util(const TransactionDB& db, long long min_util);

// The k highest-utility itemsets under the canonical order, found by raising
// an internal threshold from 0 to the current k-th best utility.
std::vector<MinedItemset> mine_top_k(const TransactionDB& db, int k);

// Exhaustive enumeration oracles (testing only; distinct item count <= 20).
std::vector<MinedItemset> brute_force_min_util(const TransactionDB& db, long long min_util);
std::vector<MinedItemset> brute_force_top_k(const TransactionDB& db, int k);

}  // namespace shapfold
