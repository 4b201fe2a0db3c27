#pragma once

#include <cstddef>

#include "alsvm/dataset.hpp"
#include "alsvm/svm.hpp"

namespace alsvm {

struct EvalMetrics {
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    friend bool operator==(const EvalMetrics&, const EvalMetrics&) = default;
};

// Fills precision/recall/F1 from the confusion counts. Zero denominators give 0.
EvalMetrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn);

// Confusion counts of predict() over `test`. Throws ArgumentError if empty.
EvalMetrics evaluate(const LinearModel& model, std::span<const LabeledExample> test);
inline EvalMetrics evaluate(const LinearModel& model, const Dataset& test) {
    return evaluate(model, test.examples());
}

}  // namespace alsvm
