#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "shapfold/explainer.hpp"
#include "shapfold/induce.hpp"
#include "shapfold/metrics.hpp"
#include "shapfold/model.hpp"

namespace shapfold {

struct RunConfig {
    std::string data_path;
    std::string label_column;
    std::string positive_label;
    std::string target_name;  // defaults to sanitized positive_label
    int n_bins = 5;
    double test_fraction = 0.2;
    std::optional<std::uint64_t> seed;  // mandatory: no entropy-based default

    BoostConfig model;
    ShapConfig shap;
    InduceConfig induce;

    std::string out_theory = "theory.pl";
    std::string out_model = "model.json";
    std::string out_metrics = "metrics.json";
    std::string out_shap;  // optional attribution CSV dump

    void validate() const;  // throws ConfigError

    // Flat `key = value` document; unknown keys are an error.
    static RunConfig from_file(const std::string& path);
    void apply(const std::map<std::string, std::string>& overrides);
};

// Exit codes shared by the library pipeline and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitStall = 3;

struct RunOutcome {
    int exit_code = kExitOk;
    DefaultTheory theory;
    Metrics metrics;
    std::vector<int> uncovered_pos;
    std::string message;
};

// load -> discretize -> binarize -> split -> train -> explain -> induce ->
// evaluate; writes model, theory and metrics files. A stall still writes the
// partial theory and reports uncovered positives.
RunOutcome run_pipeline(const RunConfig& config);

}  // namespace shapfold
