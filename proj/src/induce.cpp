#include "shapfold/induce.hpp"

#include <algorithm>

#include "shapfold/huim.hpp"

namespace shapfold {

void InduceConfig::validate() const {
    if (!(accuracy_gate > 0.5 && accuracy_gate <= 1.0))
        throw ConfigError("accuracy_gate must be in (0.5, 1]");
    if (max_exception_depth < 0) throw ConfigError("max_exception_depth must be >= 0");
    if (max_clauses < 1) throw ConfigError("max_clauses must be >= 1");
}

Inducer::Inducer(const Dataset& train, const ShapMatrix& shap, const InduceConfig& config,
                 std::string target_name)
    : train_(train), shap_(shap), config_(config) {
    config_.validate();
    if (shap_.attributions.size() != train_.examples.size())
        throw DataError("induce: attribution matrix rows != training examples");
    theory_.target_name = sanitize_atom(std::move(target_name));
    theory_.items = train_.items;
    binding_ = identity_binding(train_.items.size());
}

bool Inducer::learn_one_rule(const std::vector<int>& pos, const std::vector<int>& neg,
                             Orientation orientation, int depth, Clause& out) {
    TransactionDB db;
    try {
        db = build_transactions(pos, train_, shap_, orientation);
    } catch (const DegenerateAttributionError&) {
        return false;
    }
    auto mined = mine_top_k(db, 1);
    if (mined.empty()) return false;

    out = Clause{};
    out.head = ClauseHead{true, -1};
    for (int item : mined.front().items)
        out.body.push_back(Literal{Literal::Kind::ItemTest, item});

    const auto covered_pos = covers(theory_, out, pos, train_, binding_);
    if (covered_pos.empty()) return false;
    const auto covered_neg = covers(theory_, out, neg, train_, binding_);

    const double precision =
        static_cast<double>(covered_pos.size()) /
        static_cast<double>(covered_pos.size() + covered_neg.size());
    if (precision < config_.accuracy_gate && !covered_neg.empty() &&
        depth < config_.max_exception_depth)
        learn_exceptions(out, covered_neg, covered_pos, orientation, depth);
    return true;
}

void Inducer::learn_exceptions(Clause& clause, const std::vector<int>& false_positives,
                               const std::vector<int>& true_positives, Orientation orientation,
                               int depth) {
    // Swap: the negatives this clause wrongly covers become the positives of
    // a recursive induction run, with attribution orientation flipped.
    FoilResult sub = foil(false_positives, true_positives, flip(orientation), depth + 1);
    if (sub.clauses.empty()) {
        clause.low_precision = true;  // exception learning abandoned
        return;
    }
    const int ab = theory_.allocate_ab();
    for (Clause& c : sub.clauses) {
        c.head = ClauseHead{false, ab};
        theory_.abnormals[static_cast<std::size_t>(ab)].push_back(std::move(c));
    }
    clause.body.push_back(Literal{Literal::Kind::NafAb, ab});
}

FoilResult Inducer::foil(std::vector<int> pos, const std::vector<int>& neg,
                         Orientation orientation, int depth) {
    FoilResult result;
    while (!pos.empty() && static_cast<int>(result.clauses.size()) < config_.max_clauses) {
        Clause clause;
        if (!learn_one_rule(pos, neg, orientation, depth, clause)) {
            result.stalled = true;
            break;
        }
        const auto covered = covers(theory_, clause, pos, train_, binding_);
        if (covered.empty()) {
            // exceptions may have eaten every remaining positive
            result.stalled = true;
            break;
        }
        std::vector<int> remaining;
        std::set_difference(pos.begin(), pos.end(), covered.begin(), covered.end(),
                            std::back_inserter(remaining));
        pos = std::move(remaining);
        result.clauses.push_back(std::move(clause));
    }
    result.uncovered = std::move(pos);
    return result;
}

InduceResult Inducer::run() {
    std::vector<int> pos, neg;
    for (const auto& ex : train_.examples) (ex.label > 0 ? pos : neg).push_back(ex.id);
    if (pos.empty()) throw DataError("induce: no positive examples");

    FoilResult top = foil(std::move(pos), neg, Orientation::TowardPositive, 0);
    theory_.defaults = std::move(top.clauses);
    theory_.prune_unused_abnormals();

    InduceResult out;
    out.theory = theory_;
    out.uncovered_pos = std::move(top.uncovered);
    out.stalled = top.stalled || !out.uncovered_pos.empty();
    return out;
}

InduceResult induce_theory(const Dataset& train, const ShapMatrix& shap,
                           const InduceConfig& config, const std::string& target_name) {
    Inducer inducer(train, shap, config, target_name);
    return inducer.run();
}

}  // namespace shapfold
