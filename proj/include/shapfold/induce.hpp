#pragma once

#include <string>
#include <vector>

#include "shapfold/explainer.hpp"
#include "shapfold/theory.hpp"
#include "shapfold/transact.hpp"

namespace shapfold {

struct InduceConfig {
    double accuracy_gate = 0.85;  // strict `<` triggers exception learning
    int max_exception_depth = 3;
    int max_clauses = 50;

    void validate() const;
};

struct FoilResult {
    std::vector<Clause> clauses;
    std::vector<int> uncovered;
    bool stalled = false;
};

struct InduceResult {
    DefaultTheory theory;
    std::vector<int> uncovered_pos;  // positives no clause covers
    bool stalled = false;
};

// Sequential covering driven by top-1 high-utility itemset mining over the
// precomputed attribution matrix, with recursive exception learning.
class Inducer {
public:
    Inducer(const Dataset& train, const ShapMatrix& shap, const InduceConfig& config,
            std::string target_name);

    InduceResult run();

    // Exposed for tests.
    FoilResult foil(std::vector<int> pos, const std::vector<int>& neg,
                    Orientation orientation, int depth);
    bool learn_one_rule(const std::vector<int>& pos, const std::vector<int>& neg,
                        Orientation orientation, int depth, Clause& out);
    void learn_exceptions(Clause& clause, const std::vector<int>& false_positives,
                          const std::vector<int>& true_positives, Orientation orientation,
                          int depth);

    const DefaultTheory& theory() const { return theory_; }

private:
    const Dataset& train_;
    const ShapMatrix& shap_;
    InduceConfig config_;
    DefaultTheory theory_;
    std::vector<int> binding_;
};

InduceResult induce_theory(const Dataset& train, const ShapMatrix& shap,
                           const InduceConfig& config, const std::string& target_name);

}  // namespace shapfold
