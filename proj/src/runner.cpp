#include "shapfold/runner.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace shapfold {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long out = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
    }
}

double parse_real(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double out = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
    }
}

void ensure_parent_dir(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

}  // namespace

void RunConfig::validate() const {
    if (data_path.empty()) throw ConfigError("data path is required");
    if (label_column.empty()) throw ConfigError("label_column is required");
    if (positive_label.empty()) throw ConfigError("positive_label is required");
    if (!seed.has_value()) throw ConfigError("seed is required (reproducible runs only)");
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw ConfigError("test_fraction must be in (0,1)");
    if (n_bins < 2) throw ConfigError("n_bins must be >= 2");
    if (model.rounds < 0) throw ConfigError("rounds must be >= 0");
    if (model.max_depth < 1) throw ConfigError("max_depth must be >= 1");
    if (!(model.learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
    if (shap.exact_cap < 1) throw ConfigError("exact_cap must be >= 1");
    if (shap.permutations < 1) throw ConfigError("permutations must be >= 1");
    if (shap.background_size < 1) throw ConfigError("background must be >= 1");
    if (out_theory.empty() || out_model.empty() || out_metrics.empty())
        throw ConfigError("output paths must be non-empty");
    induce.validate();
}

void RunConfig::apply(const std::map<std::string, std::string>& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "data") data_path = value;
        else if (key == "label_column") label_column = value;
        else if (key == "positive_label") positive_label = value;
        else if (key == "target_name") target_name = value;
        else if (key == "n_bins") n_bins = static_cast<int>(parse_int(key, value));
        else if (key == "test_fraction") test_fraction = parse_real(key, value);
        else if (key == "seed") seed = static_cast<std::uint64_t>(parse_int(key, value));
        else if (key == "rounds") model.rounds = static_cast<int>(parse_int(key, value));
        else if (key == "max_depth") model.max_depth = static_cast<int>(parse_int(key, value));
        else if (key == "learning_rate") model.learning_rate = parse_real(key, value);
        else if (key == "min_child_weight") model.min_child_weight = parse_real(key, value);
        else if (key == "exact_cap") shap.exact_cap = static_cast<int>(parse_int(key, value));
        else if (key == "permutations") shap.permutations = static_cast<int>(parse_int(key, value));
        else if (key == "background") shap.background_size = static_cast<int>(parse_int(key, value));
        else if (key == "accuracy_gate") induce.accuracy_gate = parse_real(key, value);
        else if (key == "max_exception_depth")
            induce.max_exception_depth = static_cast<int>(parse_int(key, value));
        else if (key == "max_clauses") induce.max_clauses = static_cast<int>(parse_int(key, value));
        else if (key == "out_theory") out_theory = value;
        else if (key == "out_model") out_model = value;
        else if (key == "out_metrics") out_metrics = value;
        else if (key == "out_shap") out_shap = value;
        else throw ConfigError("unknown config key '" + key + "'");
    }
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config '" + path + "'");
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config '" + path + "' line " + std::to_string(lineno) +
                              ": expected `key = value`");
        kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
    }
    RunConfig cfg;
    cfg.apply(kv);
    return cfg;
}

RunOutcome run_pipeline(const RunConfig& config) {
    config.validate();
    const std::uint64_t seed = *config.seed;

    RawTable raw = load_csv(config.data_path, config.label_column, config.positive_label);

    // Split membership is a function of (labels, seed) alone, so the same
    // partition can drive both discretization statistics and the later split.
    std::vector<int> labels;
    labels.reserve(raw.rows.size());
    const std::size_t label_idx = raw.label_index();
    for (const auto& row : raw.rows)
        labels.push_back(row[label_idx] == config.positive_label ? 1 : -1);
    const auto test_ids = stratified_test_ids(labels, config.test_fraction, seed);
    std::vector<int> train_ids;
    {
        std::vector<std::uint8_t> is_test(raw.rows.size(), 0);
        for (int id : test_ids) is_test[static_cast<std::size_t>(id)] = 1;
        for (std::size_t i = 0; i < raw.rows.size(); ++i)
            if (!is_test[i]) train_ids.push_back(static_cast<int>(i));
    }

    RawTable discretized = discretize(raw, config.n_bins, train_ids);
    Dataset full = binarize(discretized);
    auto [train_set, test_set] = split(full, config.test_fraction, seed);

    BoostConfig model_cfg = config.model;
    model_cfg.seed = seed;
    TreeEnsemble model = train(train_set, model_cfg);

    ensure_parent_dir(config.out_model);
    save_model(model, train_set.items, config.out_model);

    ShapConfig shap_cfg = config.shap;
    shap_cfg.seed = seed;
    const auto t0 = std::chrono::steady_clock::now();
    ShapMatrix shap = explain_dataset(model, train_set, shap_cfg);
    if (!config.out_shap.empty()) {
        ensure_parent_dir(config.out_shap);
        std::ofstream os(config.out_shap, std::ios::binary);
        os << shap.to_csv();
    }

    const std::string target =
        config.target_name.empty() ? config.positive_label : config.target_name;

    RunOutcome out;
    InduceResult induced = induce_theory(train_set, shap, config.induce, target);
    const auto t1 = std::chrono::steady_clock::now();
    const double induce_time = std::chrono::duration<double>(t1 - t0).count();

    out.theory = std::move(induced.theory);
    out.uncovered_pos = std::move(induced.uncovered_pos);

    ensure_parent_dir(config.out_theory);
    {
        std::ofstream os(config.out_theory, std::ios::binary);
        if (!os) throw DataError("cannot write '" + config.out_theory + "'");
        os << render_theory(out.theory);
    }

    const auto binding = identity_binding(test_set.items.size());
    out.metrics = evaluate(out.theory, test_set, binding, induce_time);
    ensure_parent_dir(config.out_metrics);
    {
        std::ofstream os(config.out_metrics, std::ios::binary);
        if (!os) throw DataError("cannot write '" + config.out_metrics + "'");
        os << out.metrics.to_json_string() << '\n';
    }

    if (induced.stalled || out.theory.defaults.empty()) {
        out.exit_code = kExitStall;
        std::ostringstream msg;
        msg << "induction stalled: " << out.uncovered_pos.size()
            << " positive example(s) uncovered (ids:";
        for (std::size_t i = 0; i < out.uncovered_pos.size() && i < 20; ++i)
            msg << ' ' << out.uncovered_pos[i];
        if (out.uncovered_pos.size() > 20) msg << " ...";
        msg << ")";
        out.message = msg.str();
    }
    return out;
}

}  // namespace shapfold
