#pragma once

#include <string>
#include <vector>

#include "shapfold/dataset.hpp"
#include "shapfold/theory.hpp"

namespace shapfold {

struct Metrics {
    double precision = 0.0;
    double recall = 0.0;
    double accuracy = 0.0;
    double f1 = 0.0;
    long tp = 0, fp = 0, tn = 0, fn = 0;
    int clause_count = 0;
    double time_s = 0.0;  // induction wall time, not evaluation
    // Zero-denominator metrics are reported as 0 with the flag cleared.
    bool precision_defined = true;
    bool recall_defined = true;
    bool f1_defined = true;

    std::string to_json_string() const;
    std::string to_table() const;
};

Metrics compute_metrics(long tp, long fp, long tn, long fn);

Metrics evaluate(const DefaultTheory& theory, const Dataset& test_set,
                 const std::vector<int>& binding, double induction_time_s = 0.0);

}  // namespace shapfold
