#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "alsvm/dataset.hpp"

namespace alsvm {

// Slack penalties C+ and C-. Both strictly positive and finite.
class CostFactors {
public:
    // Throws ArgumentError on non-positive or non-finite input.
    CostFactors(double cost_pos, double cost_neg);

    // C- fixed, C+ = pa * C-.
    static CostFactors from_pa(double pa, double cost_neg);

    double cost_pos() const noexcept { return cost_pos_; }
    double cost_neg() const noexcept { return cost_neg_; }
    double pa() const noexcept { return cost_pos_ / cost_neg_; }
    double cost_for(Label y) const noexcept { return y == Label::Positive ? cost_pos_ : cost_neg_; }

    friend bool operator==(const CostFactors&, const CostFactors&) = default;

private:
    double cost_pos_;
    double cost_neg_;
};

struct SolverOptions {
    double tolerance = 1e-6;       // on (primal - dual) / (1 + |primal|)
    double kkt_tolerance = 1e-5;   // on max |projected gradient|, in margin units
    std::size_t max_epochs = 10000;
    std::uint64_t shuffle_seed = 1;
};

struct SolverDiagnostics {
    std::size_t epochs = 0;
    bool converged = false;
    double duality_gap = 0.0;
    double relative_gap = 0.0;
    double kkt_violation = 0.0;

    friend bool operator==(const SolverDiagnostics&, const SolverDiagnostics&) = default;
};

// Hyperplane (w, b) plus the dual solution that produced it.
//
// weights()[j-1] is the weight of feature j. The bias is trained as the weight
// of a constant feature with value 1, so it enters the regularizer as b^2/2.
struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;
    std::vector<double> duals;  // one per training example, in input order
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    SolverDiagnostics diagnostics;

    FeatureIndex dimension() const noexcept { return static_cast<FeatureIndex>(weights.size()); }
};

// SVM-light's default C: 1 / mean(x.x) over the examples (bias feature excluded).
// Returns 1.0 if every vector is empty. Throws ArgumentError on empty input.
double default_cost_neg(std::span<const LabeledExample> data);

// Trains a cost-weighted soft-margin linear SVM by dual coordinate descent.
//
// Minimizes (|w|^2 + b^2)/2 + C+ sum_{y=+1} xi + C- sum_{y=-1} xi. Each epoch
// visits the examples in a fresh permutation drawn from opts.shuffle_seed and
// then checks the relative duality gap and the largest KKT violation. Throws ArgumentError on empty data and
// TrainingError("single-class training set") when one class is missing.
LinearModel train(std::span<const LabeledExample> data, const CostFactors& costs,
                  const SolverOptions& opts = {});
inline LinearModel train(const Dataset& data, const CostFactors& costs, const SolverOptions& opts = {}) {
    return train(data.examples(), costs, opts);
}

// w.x + b. Features beyond the model dimension contribute 0.
double decision_value(const LinearModel& model, const SparseVector& x);

// +1 when decision_value >= 0, else -1.
Label predict(const LinearModel& model, const SparseVector& x);

// max(0, 1 - y (w.x + b))
double slack(const LinearModel& model, const LabeledExample& example);

// (|w|^2 + b^2)/2 + C+ sum_{y=+1} xi + C- sum_{y=-1} xi, evaluated for `model`.
double primal_objective(const LinearModel& model, std::span<const LabeledExample> data,
                        const CostFactors& costs);

// sum(alpha) - (|w(alpha)|^2 + b(alpha)^2)/2, with (w, b) rebuilt from `duals`.
double dual_objective(std::span<const double> duals, std::span<const LabeledExample> data);

// Dense (w, b) = sum_i alpha_i y_i (x_i, 1) at the given dimension.
std::vector<double> reconstruct_weights(std::span<const double> duals,
                                        std::span<const LabeledExample> data,
                                        FeatureIndex dimension, double* bias_out);

}  // namespace alsvm
