#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "shapfold/common.hpp"
#include "shapfold/dataset.hpp"
#include "shapfold/model.hpp"

namespace shapfold {

struct ShapConfig {
    int exact_cap = 15;      // exhaustive enumeration up to this many items
    int permutations = 2048; // sampled mode
    int background_size = 128;
    std::uint64_t seed = 0;
};

struct ShapResult {
    std::vector<double> phi;  // one per item of the full schema; zero outside the game
    double base = 0.0;        // value of the empty coalition under this estimator
};

struct ShapMatrix {
    std::vector<std::vector<double>> attributions;  // (num_examples, num_items)
    double base_value = 0.0;  // mean model output over the background sample
    bool exact = false;
    int permutations = 0;
    std::uint64_t seed = 0;

    std::string to_csv() const;
    static ShapMatrix from_csv(const std::string& text);
};

using BitRow = std::vector<std::uint8_t>;

namespace detail {

// x on the coalition (mask over `game`), b elsewhere within the game;
// items outside the game always keep x's bits.
inline void compose(const BitRow& x, const BitRow& b, const std::vector<int>& game,
                    std::uint32_t mask, BitRow& out) {
    out = x;
    for (std::size_t j = 0; j < game.size(); ++j)
        if (!(mask >> j & 1u)) out[game[j]] = b[game[j]];
}

}  // namespace detail

// Exact interventional Shapley values: the value of a coalition S is the model
// output with S taken from the example and the rest marginalized over the
// background rows. Satisfies the efficiency identity
//   sum(phi) + base == f(x)   (x restricted to the game items)
// up to floating-point roundoff.
template <typename Oracle>
ShapResult shapley_exact(const Oracle& f, const BitRow& example,
                         const std::vector<BitRow>& background,
                         const std::vector<int>& game, int exact_cap = 15) {
    const int n = static_cast<int>(game.size());
    if (n > exact_cap)
        throw DataError("shapley_exact: " + std::to_string(n) + " items exceeds exact cap " +
                        std::to_string(exact_cap));
    if (background.empty()) throw DataError("shapley_exact: empty background");

    const std::uint32_t subsets = 1u << n;
    std::vector<double> value(subsets, 0.0);
    BitRow scratch;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        double acc = 0.0;
        for (const BitRow& b : background) {
            detail::compose(example, b, game, mask, scratch);
            acc += f(scratch.data());
        }
        value[mask] = acc / static_cast<double>(background.size());
    }

    // Shapley weights w(|S|) = |S|! (n-|S|-1)! / n!
    std::vector<double> weight(n, 0.0);
    {
        double log_nfact = 0.0;
        for (int i = 2; i <= n; ++i) log_nfact += std::log(static_cast<double>(i));
        for (int s = 0; s < n; ++s) {
            double lw = -log_nfact;
            for (int i = 2; i <= s; ++i) lw += std::log(static_cast<double>(i));
            for (int i = 2; i <= n - s - 1; ++i) lw += std::log(static_cast<double>(i));
            weight[s] = std::exp(lw);
        }
    }

    ShapResult out;
    out.phi.assign(example.size(), 0.0);
    out.base = value[0];
    for (int j = 0; j < n; ++j) {
        const std::uint32_t bit = 1u << j;
        double phi = 0.0;
        for (std::uint32_t mask = 0; mask < subsets; ++mask) {
            if (mask & bit) continue;
            const int s = std::popcount(mask);
            phi += weight[s] * (value[mask | bit] - value[mask]);
        }
        out.phi[game[j]] = phi;
    }
    return out;
}

// Permutation-sampling estimate of the same quantity. Each permutation draws
// one background row and accumulates the telescoping marginal contributions,
// so sum(phi) + base == f(x) holds exactly for any permutation count.
template <typename Oracle>
ShapResult shapley_sampled(const Oracle& f, const BitRow& example,
                           const std::vector<BitRow>& background,
                           const std::vector<int>& game, int permutations,
                           std::uint64_t seed) {
    if (permutations < 1) throw DataError("shapley_sampled: permutations must be >= 1");
    if (background.empty()) throw DataError("shapley_sampled: empty background");

    const int n = static_cast<int>(game.size());
    ShapResult out;
    out.phi.assign(example.size(), 0.0);

    Rng rng(seed);
    std::vector<int> order(game.size());
    for (int j = 0; j < n; ++j) order[j] = j;

    BitRow cur;
    double base_acc = 0.0;
    for (int p = 0; p < permutations; ++p) {
        const BitRow& b = background[rng.below(background.size())];
        // Fisher-Yates
        for (int j = n - 1; j > 0; --j)
            std::swap(order[j], order[static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1))]);

        detail::compose(example, b, game, 0, cur);
        double prev = f(cur.data());
        base_acc += prev;
        for (int j = 0; j < n; ++j) {
            const int item = game[order[j]];
            cur[item] = example[item];
            const double now = f(cur.data());
            out.phi[item] += now - prev;
            prev = now;
        }
    }
    const double inv = 1.0 / static_cast<double>(permutations);
    for (double& v : out.phi) v *= inv;
    out.base = base_acc * inv;
    return out;
}

// One attribution row per example over all items; exact mode when the item
// count fits under the cap, sampled otherwise with per-example seeds derived
// from (config.seed, example id).
ShapMatrix explain_dataset(const TreeEnsemble& model, const Dataset& dataset,
                           const ShapConfig& config);

// The background rows explain_dataset uses (up to config.background_size rows
// drawn deterministically from the dataset).
std::vector<BitRow> sample_background(const Dataset& dataset, int background_size,
                                      std::uint64_t seed);

}  // namespace shapfold
