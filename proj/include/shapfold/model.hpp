#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "shapfold/dataset.hpp"

namespace shapfold {

// Binary split tree over item presence. item < 0 marks a leaf.
struct TreeNode {
    int item = -1;
    double score = 0.0;
    std::unique_ptr<TreeNode> present;
    std::unique_ptr<TreeNode> absent;

    bool is_leaf() const { return item < 0; }
};

struct BoostConfig {
    int rounds = 50;
    int max_depth = 3;
    double learning_rate = 0.3;
    double min_child_weight = 1.0;
    std::uint64_t seed = 0;
};

class TreeEnsemble {
public:
    double base_score = 0.0;  // log-odds
    double learning_rate = 0.3;
    int item_count = 0;
    std::vector<std::unique_ptr<TreeNode>> trees;

    double margin(const std::uint8_t* bits) const;
    // Margin using only the first n trees; lets tests replay the boosting
    // trajectory round by round.
    double margin_prefix(const std::uint8_t* bits, std::size_t n_trees) const;
    double predict_proba(std::span<const std::uint8_t> bits) const;

    bool splits_on(int item) const;

    TreeEnsemble clone() const;
};

// Gradient boosting with logistic loss, second-order leaf weights and greedy
// exact split search over binary items. Deterministic for a given config.
TreeEnsemble train(const Dataset& train_set, const BoostConfig& config);

// Versioned JSON persistence; the item table is embedded for self-description.
void save_model(const TreeEnsemble& model, const std::vector<Item>& items,
                const std::string& path);
struct LoadedModel {
    TreeEnsemble model;
    std::vector<Item> items;
};
LoadedModel load_model(const std::string& path);

double sigmoid(double x);

}  // namespace shapfold
