#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "shapfold/huim.hpp"
#include "shapfold/runner.hpp"

namespace sf = shapfold;

namespace {

struct KeyValues {
    std::map<std::string, std::string> kv;
    void set(const std::string& key, const std::string& value) {
        if (!value.empty()) kv[key] = value;
    }
};

sf::RunConfig build_config(const std::string& config_path, const KeyValues& overrides) {
    sf::RunConfig cfg;
    if (!config_path.empty()) cfg = sf::RunConfig::from_file(config_path);
    cfg.apply(overrides.kv);
    return cfg;
}

void add_pipeline_flags(CLI::App* cmd, std::string& config_path, KeyValues& kv) {
    cmd->add_option("-c,--config", config_path, "flat key=value config file");
    static const char* keys[] = {
        "data",        "label_column",   "positive_label", "target_name",
        "n_bins",      "test_fraction",  "seed",           "rounds",
        "max_depth",   "learning_rate",  "min_child_weight",
        "exact_cap",   "permutations",   "background",     "accuracy_gate",
        "max_exception_depth", "max_clauses",
        "out_theory",  "out_model",      "out_metrics",    "out_shap"};
    for (const char* key : keys) {
        std::string flag = "--" + std::string(key);
        for (auto& ch : flag)
            if (ch == '_') ch = '-';
        cmd->add_option_function<std::string>(
            flag, [&kv, key](const std::string& v) { kv.set(key, v); },
            std::string("config key ") + key + " (overrides the file)");
    }
}

int run_main(const std::string& config_path, const KeyValues& kv) {
    sf::RunConfig cfg = build_config(config_path, kv);
    sf::RunOutcome out = sf::run_pipeline(cfg);
    std::cout << sf::render_theory(out.theory);
    std::cout << out.metrics.to_table();
    if (!out.message.empty()) std::cerr << "warning: " << out.message << '\n';
    return out.exit_code;
}

std::string itemset_to_string(const sf::MinedItemset& ms, const sf::TransactionDB& db) {
    std::string line = "{";
    for (std::size_t i = 0; i < ms.items.size(); ++i) {
        if (i) line += ",";
        line += db.item_names.empty() ? std::to_string(ms.items[i])
                                      : db.item_names[static_cast<std::size_t>(ms.items[i])];
    }
    line += "}:" + std::to_string(ms.utility);
    return line;
}

int mine_main(const std::string& db_path, long long min_util, int k) {
    sf::TransactionDB db = sf::TransactionDB::parse_file(db_path);
    const auto result = k > 0 ? sf::mine_top_k(db, k) : sf::mine_min_util(db, min_util);
    for (const auto& ms : result) std::cout << itemset_to_string(ms, db) << '\n';
    return 0;
}

int eval_main(const std::string& theory_path, const std::string& config_path,
              const KeyValues& kv, const std::string& subset) {
    sf::RunConfig cfg = build_config(config_path, kv);
    if (cfg.data_path.empty()) throw sf::ConfigError("data path is required");
    if (cfg.label_column.empty() || cfg.positive_label.empty())
        throw sf::ConfigError("label_column and positive_label are required");

    sf::DefaultTheory theory = sf::parse_theory_file(theory_path);

    sf::RawTable raw = sf::load_csv(cfg.data_path, cfg.label_column, cfg.positive_label);
    sf::Dataset data;
    if (subset == "all") {
        data = sf::binarize(sf::discretize(raw, cfg.n_bins));
    } else {
        if (!cfg.seed.has_value()) throw sf::ConfigError("seed is required to reproduce a split");
        std::vector<int> labels;
        const std::size_t label_idx = raw.label_index();
        for (const auto& row : raw.rows)
            labels.push_back(row[label_idx] == cfg.positive_label ? 1 : -1);
        const auto test_ids = sf::stratified_test_ids(labels, cfg.test_fraction, *cfg.seed);
        std::vector<int> train_ids;
        std::vector<std::uint8_t> is_test(raw.rows.size(), 0);
        for (int id : test_ids) is_test[static_cast<std::size_t>(id)] = 1;
        for (std::size_t i = 0; i < raw.rows.size(); ++i)
            if (!is_test[i]) train_ids.push_back(static_cast<int>(i));
        sf::Dataset full = sf::binarize(sf::discretize(raw, cfg.n_bins, train_ids));
        auto [train_set, test_set] = sf::split(full, cfg.test_fraction, *cfg.seed);
        data = subset == "train" ? std::move(train_set) : std::move(test_set);
    }

    const auto binding = sf::bind_items(theory, data.items);
    sf::Metrics m = sf::evaluate(theory, data, binding);
    std::cout << m.to_table();
    std::cout << m.to_json_string() << '\n';
    return 0;
}

int explain_main(const std::string& config_path, const KeyValues& kv) {
    sf::RunConfig cfg = build_config(config_path, kv);
    if (cfg.out_shap.empty()) cfg.out_shap = "shap.csv";
    sf::RunOutcome out = sf::run_pipeline(cfg);
    std::cout << "attributions written to " << cfg.out_shap << '\n';
    return out.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SHAP-driven induction of default theories from tree ensembles"};
    app.require_subcommand(1);

    std::string config_path, eval_config_path, explain_config_path;
    KeyValues run_kv, eval_kv, explain_kv;

    auto* run = app.add_subcommand("run", "full pipeline: train, explain, induce, evaluate");
    add_pipeline_flags(run, config_path, run_kv);

    auto* mine = app.add_subcommand("mine", "standalone high-utility itemset mining");
    std::string db_path;
    long long min_util = -1;
    int top_k = -1;
    mine->add_option("--db", db_path, "transaction DB file")->required();
    auto* opt_mu = mine->add_option("--min-util", min_util, "minimum utility threshold");
    auto* opt_k = mine->add_option("-k,--top-k", top_k, "number of itemsets to mine");
    opt_mu->excludes(opt_k);

    auto* eval = app.add_subcommand("eval", "evaluate a theory file against a dataset");
    std::string theory_path, subset = "all";
    eval->add_option("--theory", theory_path, "theory file (Prolog-style)")->required();
    eval->add_option("--split", subset, "all | train | test (default all)")
        ->check(CLI::IsMember({"all", "train", "test"}));
    add_pipeline_flags(eval, eval_config_path, eval_kv);

    auto* explain = app.add_subcommand("explain", "dump the attribution matrix as CSV");
    add_pipeline_flags(explain, explain_config_path, explain_kv);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return run_main(config_path, run_kv);
        if (mine->parsed()) {
            if (min_util < 0 && top_k < 0)
                throw sf::ConfigError("mine: provide --min-util or --top-k");
            return mine_main(db_path, min_util, top_k);
        }
        if (eval->parsed()) return eval_main(theory_path, eval_config_path, eval_kv, subset);
        if (explain->parsed()) return explain_main(explain_config_path, explain_kv);
    } catch (const sf::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return sf::kExitConfig;
    } catch (const sf::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return sf::kExitData;
    } catch (const sf::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return sf::kExitData;
    } catch (const sf::DegenerateAttributionError& e) {
        std::cerr << "degenerate attributions: " << e.what() << '\n';
        return sf::kExitStall;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return sf::kExitData;
    }
    return 0;
}
