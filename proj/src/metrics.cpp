#include "shapfold/metrics.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace shapfold {

Metrics compute_metrics(long tp, long fp, long tn, long fn) {
    Metrics m;
    m.tp = tp;
    m.fp = fp;
    m.tn = tn;
    m.fn = fn;
    const long total = tp + fp + tn + fn;
    if (tp + fp > 0)
        m.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    else
        m.precision_defined = false;
    if (tp + fn > 0)
        m.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    else
        m.recall_defined = false;
    if (m.precision_defined && m.recall_defined && m.precision + m.recall > 0.0)
        m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
    else
        m.f1_defined = false;
    m.accuracy = total > 0 ? static_cast<double>(tp + tn) / static_cast<double>(total) : 0.0;
    return m;
}

Metrics evaluate(const DefaultTheory& theory, const Dataset& test_set,
                 const std::vector<int>& binding, double induction_time_s) {
    if (test_set.examples.empty()) throw DataError("evaluate: empty test set");
    long tp = 0, fp = 0, tn = 0, fn = 0;
    for (const auto& ex : test_set.examples) {
        const bool predicted = classify(theory, ex.bits, binding);
        const bool actual = ex.label > 0;
        if (predicted && actual) ++tp;
        else if (predicted && !actual) ++fp;
        else if (!predicted && !actual) ++tn;
        else ++fn;
    }
    Metrics m = compute_metrics(tp, fp, tn, fn);
    m.clause_count = theory.clause_count();
    m.time_s = induction_time_s;
    return m;
}

std::string Metrics::to_json_string() const {
    nlohmann::ordered_json j;
    j["precision"] = precision;
    j["recall"] = recall;
    j["accuracy"] = accuracy;
    j["f1"] = f1;
    j["clause_count"] = clause_count;
    j["time_s"] = time_s;
    j["tp"] = tp;
    j["fp"] = fp;
    j["tn"] = tn;
    j["fn"] = fn;
    if (!precision_defined || !recall_defined || !f1_defined) {
        j["undefined"] = nlohmann::ordered_json::array();
        if (!precision_defined) j["undefined"].push_back("precision");
        if (!recall_defined) j["undefined"].push_back("recall");
        if (!f1_defined) j["undefined"].push_back("f1");
    }
    return j.dump(2);
}

std::string Metrics::to_table() const {
    std::ostringstream os;
    os.precision(4);
    os << std::fixed;
    os << "precision  " << precision << (precision_defined ? "" : " (undefined)") << '\n'
       << "recall     " << recall << (recall_defined ? "" : " (undefined)") << '\n'
       << "accuracy   " << accuracy << '\n'
       << "f1         " << f1 << (f1_defined ? "" : " (undefined)") << '\n'
       << "clauses    " << clause_count << '\n'
       << "time_s     " << time_s << '\n'
       << "confusion  tp=" << tp << " fp=" << fp << " tn=" << tn << " fn=" << fn << '\n';
    return os.str();
}

}  // namespace shapfold
