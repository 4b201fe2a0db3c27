#include "alsvm/metrics.hpp"

#include "alsvm/error.hpp"

namespace alsvm {

EvalMetrics metrics_from_counts(std::size_t tp, std::size_t fp, std::size_t fn, std::size_t tn) {
    EvalMetrics m{tp, fp, fn, tn};
    auto ratio = [](std::size_t num, std::size_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    m.precision = ratio(tp, tp + fp);
    m.recall = ratio(tp, tp + fn);
    const double pr = m.precision + m.recall;
    m.f1 = pr == 0.0 ? 0.0 : 2.0 * m.precision * m.recall / pr;
    return m;
}

EvalMetrics evaluate(const LinearModel& model, std::span<const LabeledExample> test) {
    if (test.empty()) throw ArgumentError("evaluate: empty test set");
    std::size_t tp = 0, fp = 0, fn = 0, tn = 0;
    for (const auto& e : test) {
        const bool predicted_pos = predict(model, e.features) == Label::Positive;
        const bool actual_pos = e.label == Label::Positive;
        if (predicted_pos)
            ++(actual_pos ? tp : fp);
        else
            ++(actual_pos ? fn : tn);
    }
    return metrics_from_counts(tp, fp, fn, tn);
}

}  // namespace alsvm
