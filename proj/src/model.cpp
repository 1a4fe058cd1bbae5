#include "shapfold/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace shapfold {

using json = nlohmann::json;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double TreeEnsemble::margin(const std::uint8_t* bits) const {
    double sum = 0.0;
    for (const auto& tree : trees) {
        const TreeNode* node = tree.get();
        while (!node->is_leaf())
            node = bits[node->item] ? node->present.get() : node->absent.get();
        sum += node->score;
    }
    return base_score + learning_rate * sum;
}

double TreeEnsemble::margin_prefix(const std::uint8_t* bits, std::size_t n_trees) const {
    double sum = 0.0;
    for (std::size_t t = 0; t < n_trees && t < trees.size(); ++t) {
        const TreeNode* node = trees[t].get();
        while (!node->is_leaf())
            node = bits[node->item] ? node->present.get() : node->absent.get();
        sum += node->score;
    }
    return base_score + learning_rate * sum;
}

double TreeEnsemble::predict_proba(std::span<const std::uint8_t> bits) const {
    if (static_cast<int>(bits.size()) != item_count)
        throw DataError("predict_proba: bit-vector length " + std::to_string(bits.size()) +
                        " != item count " + std::to_string(item_count));
    return sigmoid(margin(bits.data()));
}

namespace {

bool node_splits_on(const TreeNode* node, int item) {
    if (node->is_leaf()) return false;
    return node->item == item || node_splits_on(node->present.get(), item) ||
           node_splits_on(node->absent.get(), item);
}

std::unique_ptr<TreeNode> clone_node(const TreeNode* node) {
    auto out = std::make_unique<TreeNode>();
    out->item = node->item;
    out->score = node->score;
    if (!node->is_leaf()) {
        out->present = clone_node(node->present.get());
        out->absent = clone_node(node->absent.get());
    }
    return out;
}

struct SplitStats {
    double g = 0.0, h = 0.0;
    int count = 0;
};

std::unique_ptr<TreeNode> grow(const std::vector<const Example*>& rows,
                               const std::vector<double>& grad, const std::vector<double>& hess,
                               std::size_t item_count, int depth, const BoostConfig& cfg) {
    double g_sum = 0.0, h_sum = 0.0;
    for (const Example* ex : rows) {
        g_sum += grad[static_cast<std::size_t>(ex->id)];
        h_sum += hess[static_cast<std::size_t>(ex->id)];
    }

    auto make_leaf = [&] {
        auto leaf = std::make_unique<TreeNode>();
        leaf->score = h_sum > 0.0 ? -g_sum / h_sum : 0.0;
        return leaf;
    };
    if (depth >= cfg.max_depth || rows.size() < 2) return make_leaf();

    const double parent_obj = h_sum > 0.0 ? g_sum * g_sum / h_sum : 0.0;
    double best_gain = 1e-12;  // require strictly positive gain
    int best_item = -1;

    for (std::size_t item = 0; item < item_count; ++item) {
        SplitStats on;
        for (const Example* ex : rows) {
            if (ex->bits[item]) {
                on.g += grad[static_cast<std::size_t>(ex->id)];
                on.h += hess[static_cast<std::size_t>(ex->id)];
                ++on.count;
            }
        }
        const int off_count = static_cast<int>(rows.size()) - on.count;
        if (on.count == 0 || off_count == 0) continue;
        const double off_g = g_sum - on.g;
        const double off_h = h_sum - on.h;
        if (on.h < cfg.min_child_weight || off_h < cfg.min_child_weight) continue;
        const double gain =
            (on.h > 0.0 ? on.g * on.g / on.h : 0.0) + (off_h > 0.0 ? off_g * off_g / off_h : 0.0) -
            parent_obj;
        if (gain > best_gain) {
            best_gain = gain;
            best_item = static_cast<int>(item);
        }
    }
    if (best_item < 0) return make_leaf();

    std::vector<const Example*> on_rows, off_rows;
    for (const Example* ex : rows)
        (ex->bits[static_cast<std::size_t>(best_item)] ? on_rows : off_rows).push_back(ex);

    auto node = std::make_unique<TreeNode>();
    node->item = best_item;
    node->present = grow(on_rows, grad, hess, item_count, depth + 1, cfg);
    node->absent = grow(off_rows, grad, hess, item_count, depth + 1, cfg);
    return node;
}

}  // namespace

bool TreeEnsemble::splits_on(int item) const {
    return std::any_of(trees.begin(), trees.end(),
                       [item](const auto& t) { return node_splits_on(t.get(), item); });
}

TreeEnsemble TreeEnsemble::clone() const {
    TreeEnsemble out;
    out.base_score = base_score;
    out.learning_rate = learning_rate;
    out.item_count = item_count;
    for (const auto& t : trees) out.trees.push_back(clone_node(t.get()));
    return out;
}

TreeEnsemble train(const Dataset& train_set, const BoostConfig& cfg) {
    const std::size_t n = train_set.examples.size();
    if (n == 0) throw DataError("train: empty training set");
    std::size_t n_pos = 0;
    for (const auto& ex : train_set.examples) n_pos += ex.label > 0;
    if (n_pos == 0 || n_pos == n) throw DataError("train: training set has a single class");

    TreeEnsemble model;
    model.item_count = static_cast<int>(train_set.item_count());
    model.learning_rate = cfg.learning_rate;
    model.base_score =
        std::log(static_cast<double>(n_pos) / static_cast<double>(n - n_pos));

    std::vector<double> margin(n, model.base_score);
    std::vector<double> grad(n), hess(n);
    std::vector<const Example*> rows(n);
    for (std::size_t i = 0; i < n; ++i) rows[i] = &train_set.examples[i];

    for (int round = 0; round < cfg.rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = sigmoid(margin[i]);
            const double y = train_set.examples[i].label > 0 ? 1.0 : 0.0;
            grad[i] = p - y;
            hess[i] = p * (1.0 - p);
        }
        auto tree = grow(rows, grad, hess, train_set.item_count(), 0, cfg);
        for (std::size_t i = 0; i < n; ++i) {
            const TreeNode* node = tree.get();
            while (!node->is_leaf())
                node = train_set.examples[i].bits[static_cast<std::size_t>(node->item)]
                           ? node->present.get()
                           : node->absent.get();
            margin[i] += cfg.learning_rate * node->score;
        }
        model.trees.push_back(std::move(tree));
    }
    return model;
}

namespace {

constexpr int kModelVersion = 1;
constexpr const char* kModelFormat = "shapfold-model";

json node_to_json(const TreeNode* node) {
    if (node->is_leaf()) return json{{"leaf", node->score}};
    return json{{"split", node->item},
                {"present", node_to_json(node->present.get())},
                {"absent", node_to_json(node->absent.get())}};
}

std::unique_ptr<TreeNode> node_from_json(const json& j, int item_count) {
    auto node = std::make_unique<TreeNode>();
    if (j.contains("leaf")) {
        node->score = j.at("leaf").get<double>();
        return node;
    }
    node->item = j.at("split").get<int>();
    if (node->item < 0 || node->item >= item_count)
        throw ParseError("model: split item index out of range");
    node->present = node_from_json(j.at("present"), item_count);
    node->absent = node_from_json(j.at("absent"), item_count);
    return node;
}

}  // namespace

void save_model(const TreeEnsemble& model, const std::vector<Item>& items,
                const std::string& path) {
    json j;
    j["format"] = kModelFormat;
    j["version"] = kModelVersion;
    j["base_score"] = model.base_score;
    j["learning_rate"] = model.learning_rate;
    j["item_count"] = model.item_count;
    j["items"] = json::array();
    for (const auto& it : items)
        j["items"].push_back({{"feature", it.feature},
                              {"value", it.value},
                              {"polarity", it.polarity == Polarity::Present ? "present" : "absent"}});
    j["trees"] = json::array();
    for (const auto& t : model.trees) j["trees"].push_back(node_to_json(t.get()));

    std::ofstream os(path, std::ios::binary);
    if (!os) throw DataError("cannot write '" + path + "'");
    os << j.dump(2) << '\n';
}

LoadedModel load_model(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DataError("cannot read '" + path + "'");
    std::stringstream buf;
    buf << is.rdbuf();
    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::exception& e) {
        throw ParseError("model '" + path + "': " + e.what());
    }
    if (j.value("format", "") != kModelFormat)
        throw ParseError("model '" + path + "': unknown format tag");
    if (j.value("version", -1) != kModelVersion)
        throw ParseError("model '" + path + "': unsupported version " +
                         std::to_string(j.value("version", -1)));

    LoadedModel out;
    out.model.base_score = j.at("base_score").get<double>();
    out.model.learning_rate = j.at("learning_rate").get<double>();
    out.model.item_count = j.at("item_count").get<int>();
    for (const auto& it : j.at("items"))
        out.items.push_back(Item{it.at("feature"), it.at("value"),
                                 it.at("polarity") == "absent" ? Polarity::Absent
                                                               : Polarity::Present});
    if (static_cast<int>(out.items.size()) != out.model.item_count)
        throw ParseError("model '" + path + "': item table size mismatch");
    for (const auto& t : j.at("trees"))
        out.model.trees.push_back(node_from_json(t, out.model.item_count));
    return out;
}

}  // namespace shapfold
