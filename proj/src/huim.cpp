#include "shapfold/huim.hpp"

#include <algorithm>

namespace shapfold {

bool mined_before(const MinedItemset& a, const MinedItemset& b) {
    if (a.utility != b.utility) return a.utility > b.utility;
    if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
    return a.items < b.items;
}

namespace {

// Projection of a transaction onto the current prefix: utility the prefix
// earns in this transaction plus the entries still extendable (items after
// the prefix's last item).
struct Projection {
    int trans = 0;       // index into db.transactions
    int next = 0;        // first entry index not yet consumed
    long long prefix_util = 0;
};

struct Miner {
    const TransactionDB& db;
    // Results are collected through this interface so min-util and top-k
    // share one search.
    long long threshold = 0;
    std::vector<MinedItemset>* all = nullptr;  // min-util mode
    std::vector<MinedItemset>* best = nullptr; // top-k mode (kept sorted, size <= k)
    int k = 0;

    void offer(MinedItemset&& ms) {
        if (all) {
            if (ms.utility >= threshold) all->push_back(std::move(ms));
            return;
        }
        if (static_cast<int>(best->size()) < k) {
            best->insert(std::upper_bound(best->begin(), best->end(), ms, mined_before),
                         std::move(ms));
        } else if (mined_before(ms, best->back())) {
            best->insert(std::upper_bound(best->begin(), best->end(), ms, mined_before),
                         std::move(ms));
            best->pop_back();
        }
        if (static_cast<int>(best->size()) == k)
            threshold = std::max(threshold, best->back().utility);
    }

    void search(std::vector<int>& prefix, const std::vector<Projection>& proj) {
        // Candidate extensions: any item appearing after the consumed prefix.
        // Process in ascending item order for determinism.
        const int first_item = prefix.empty() ? 0 : prefix.back() + 1;
        for (int item = first_item; item < db.item_count; ++item) {
            std::vector<Projection> sub;
            long long util = 0;
            long long bound = 0;
            for (const Projection& p : proj) {
                const auto& entries = db.transactions[static_cast<std::size_t>(p.trans)].entries;
                // entries sorted by item; advance to `item`
                int idx = p.next;
                while (idx < static_cast<int>(entries.size()) && entries[idx].item < item) ++idx;
                if (idx >= static_cast<int>(entries.size()) || entries[idx].item != item) continue;
                Projection np{p.trans, idx + 1, p.prefix_util + entries[idx].utility};
                util += np.prefix_util;
                long long remaining = 0;
                for (int j = np.next; j < static_cast<int>(entries.size()); ++j)
                    remaining += entries[j].utility;
                bound += np.prefix_util + remaining;
                sub.push_back(np);
            }
            if (sub.empty()) continue;
            if (util >= threshold) {
                prefix.push_back(item);
                offer(MinedItemset{prefix, util, static_cast<int>(sub.size())});
                prefix.pop_back();
            }
            // Any superset of prefix+item has utility <= bound.
            if (bound >= threshold && bound > 0) {
                prefix.push_back(item);
                search(prefix, sub);
                prefix.pop_back();
            }
        }
    }

    void run() {
        // TWU phase: items whose transaction-weighted utilization is below the
        // threshold cannot occur in any qualifying itemset. Only applicable
        // when the threshold is fixed up front (min-util mode).
        std::vector<Projection> roots;
        for (std::size_t t = 0; t < db.transactions.size(); ++t)
            if (!db.transactions[t].entries.empty())
                roots.push_back({static_cast<int>(t), 0, 0});
        std::vector<int> prefix;
        search(prefix, roots);
    }
};

}  // namespace

std::vector<MinedItemset> mine_min_util(const TransactionDB& db, long long min_util) {
    std::vector<MinedItemset> out;
    Miner m{db};
    m.threshold = min_util;
    m.all = &out;
    m.run();
    std::sort(out.begin(), out.end(), mined_before);
    return out;
}

std::vector<MinedItemset> mine_top_k(const TransactionDB& db, int k) {
    if (k < 1) throw ConfigError("mine_top_k: k must be >= 1");
    std::vector<MinedItemset> out;
    Miner m{db};
    m.threshold = 0;
    m.best = &out;
    m.k = k;
    m.run();
    return out;  // kept sorted by mined_before throughout
}

namespace {

std::vector<MinedItemset> brute_force_all(const TransactionDB& db) {
    std::vector<int> present;
    {
        std::vector<char> seen(static_cast<std::size_t>(db.item_count), 0);
        for (const auto& tr : db.transactions)
            for (const auto& e : tr.entries) seen[static_cast<std::size_t>(e.item)] = 1;
        for (int i = 0; i < db.item_count; ++i)
            if (seen[static_cast<std::size_t>(i)]) present.push_back(i);
    }
    if (present.size() > 20)
        throw DataError("brute_force: " + std::to_string(present.size()) +
                        " distinct items exceeds cap of 20");

    std::vector<MinedItemset> out;
    const std::uint32_t subsets = 1u << present.size();
    for (std::uint32_t mask = 1; mask < subsets; ++mask) {
        MinedItemset ms;
        for (std::size_t j = 0; j < present.size(); ++j)
            if (mask >> j & 1u) ms.items.push_back(present[j]);
        for (const auto& tr : db.transactions) {
            long long part = 0;
            std::size_t found = 0;
            for (const auto& e : tr.entries) {
                if (std::binary_search(ms.items.begin(), ms.items.end(), e.item)) {
                    part += e.utility;
                    ++found;
                }
            }
            if (found == ms.items.size()) {
                ms.utility += part;
                ms.support += 1;
            }
        }
        // item combinations that co-occur in no transaction are not itemsets
        if (ms.support > 0) out.push_back(std::move(ms));
    }
    std::sort(out.begin(), out.end(), mined_before);
    return out;
}

}  // namespace

std::vector<MinedItemset> brute_force_min_util(const TransactionDB& db, long long min_util) {
    auto all = brute_force_all(db);
    std::erase_if(all, [min_util](const MinedItemset& m) { return m.utility < min_util; });
    return all;
}

std::vector<MinedItemset> brute_force_top_k(const TransactionDB& db, int k) {
    auto all = brute_force_all(db);
    if (static_cast<int>(all.size()) > k) all.resize(static_cast<std::size_t>(k));
    return all;
}

}  // namespace shapfold
