#include "alsvm/svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "alsvm/error.hpp"
#include "alsvm/kernels.hpp"

namespace alsvm {

CostFactors::CostFactors(double cost_pos, double cost_neg) : cost_pos_(cost_pos), cost_neg_(cost_neg) {
    if (!(cost_pos > 0.0) || !(cost_neg > 0.0) || !std::isfinite(cost_pos) || !std::isfinite(cost_neg) ||
        !std::isfinite(cost_pos / cost_neg))
        throw ArgumentError("cost factors must be finite and strictly positive");
}

CostFactors CostFactors::from_pa(double pa, double cost_neg) { return CostFactors(pa * cost_neg, cost_neg); }

double default_cost_neg(std::span<const LabeledExample> data) {
    if (data.empty()) throw ArgumentError("default_cost_neg: empty data");
    double sum = 0.0;
    for (const auto& e : data) sum += e.features.squared_norm();
    double mean = sum / static_cast<double>(data.size());
    return mean > 0.0 ? 1.0 / mean : 1.0;
}

namespace {

FeatureIndex max_dimension(std::span<const LabeledExample> data) {
    FeatureIndex d = 0;
    for (const auto& e : data) d = std::max(d, e.features.max_index());
    return d;
}

struct Objectives {
    double primal;
    double dual;
    double kkt_violation;  // max |projected gradient|
};

// Primal and dual objective and KKT violation for the current iterate; w and b
// must equal sum alpha_i y_i (x_i, 1).
Objectives objectives(const simd::KernelTable& k, std::span<const LabeledExample> data,
                      std::span<const double> alpha, std::span<const double> w, double b,
                      const CostFactors& costs) {
    double half_norm = 0.5 * (k.dot_dense(w, w) + b * b);
    double slack_pos = 0.0, slack_neg = 0.0, alpha_sum = 0.0, violation = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto& x = data[i].features;
        double margin = sign(data[i].label) * (k.dot_sparse(w, x.indices(), x.values()) + b);
        double xi = std::max(0.0, 1.0 - margin);
        (data[i].label == Label::Positive ? slack_pos : slack_neg) += xi;
        alpha_sum += alpha[i];

        double grad = margin - 1.0;
        if (alpha[i] == 0.0)
            grad = std::min(grad, 0.0);
        else if (alpha[i] == costs.cost_for(data[i].label))
            grad = std::max(grad, 0.0);
        violation = std::max(violation, std::abs(grad));
    }
    return {half_norm + costs.cost_pos() * slack_pos + costs.cost_neg() * slack_neg, alpha_sum - half_norm,
            violation};
}

}  // namespace

LinearModel train(std::span<const LabeledExample> data, const CostFactors& costs, const SolverOptions& opts) {
    if (data.empty()) throw ArgumentError("train: empty training set");
    if (!(opts.tolerance > 0.0) || !(opts.kkt_tolerance > 0.0) || opts.max_epochs == 0)
        throw ArgumentError("train: tolerances must be > 0 and max_epochs >= 1");
    auto counts = class_counts(data);
    if (counts.n_pos == 0 || counts.n_neg == 0) throw TrainingError("single-class training set");

    const auto& k = simd::active_kernels();
    const std::size_t n = data.size();
    const FeatureIndex dim = max_dimension(data);

    std::vector<double> w(dim, 0.0);
    double b = 0.0;
    std::vector<double> alpha(n, 0.0);
    std::vector<double> diag(n), upper(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        diag[i] = data[i].features.squared_norm() + 1.0;  // +1 from the bias feature
        upper[i] = costs.cost_for(data[i].label);
        y[i] = sign(data[i].label);
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(opts.shuffle_seed);

    LinearModel model;
    Objectives obj{0.0, 0.0, 0.0};
    for (std::size_t epoch = 1; epoch <= opts.max_epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t i : order) {
            const auto& x = data[i].features;
            double grad = y[i] * (k.dot_sparse(w, x.indices(), x.values()) + b) - 1.0;
            double projected = grad;
            if (alpha[i] == 0.0)
                projected = std::min(grad, 0.0);
            else if (alpha[i] == upper[i])
                projected = std::max(grad, 0.0);
            if (projected == 0.0) continue;

            double next = std::clamp(alpha[i] - grad / diag[i], 0.0, upper[i]);
            double step = (next - alpha[i]) * y[i];
            alpha[i] = next;
            if (step != 0.0) {
                k.axpy_sparse(step, x.indices(), x.values(), w);
                b += step;
            }
        }

        obj = objectives(k, data, alpha, w, b, costs);
        double gap = obj.primal - obj.dual;
        model.diagnostics.epochs = epoch;
        model.diagnostics.duality_gap = gap;
        model.diagnostics.relative_gap = gap / (1.0 + std::abs(obj.primal));
        model.diagnostics.kkt_violation = obj.kkt_violation;
        if (model.diagnostics.relative_gap <= opts.tolerance && obj.kkt_violation <= opts.kkt_tolerance) {
            model.diagnostics.converged = true;
            break;
        }
    }

    model.weights = std::move(w);
    model.bias = b;
    model.duals = std::move(alpha);
    model.primal_objective = obj.primal;
    model.dual_objective = obj.dual;
    return model;
}

double decision_value(const LinearModel& model, const SparseVector& x) {
    return simd::dot_clipped(simd::active_kernels(), model.weights, x) + model.bias;
}

Label predict(const LinearModel& model, const SparseVector& x) {
    return decision_value(model, x) >= 0.0 ? Label::Positive : Label::Negative;
}

double slack(const LinearModel& model, const LabeledExample& example) {
    return std::max(0.0, 1.0 - sign(example.label) * decision_value(model, example.features));
}

double primal_objective(const LinearModel& model, std::span<const LabeledExample> data,
                        const CostFactors& costs) {
    const auto& k = simd::active_kernels();
    double slack_pos = 0.0, slack_neg = 0.0;
    for (const auto& e : data) (e.label == Label::Positive ? slack_pos : slack_neg) += slack(model, e);
    double half_norm = 0.5 * (k.dot_dense(model.weights, model.weights) + model.bias * model.bias);
    return half_norm + costs.cost_pos() * slack_pos + costs.cost_neg() * slack_neg;
}

std::vector<double> reconstruct_weights(std::span<const double> duals, std::span<const LabeledExample> data,
                                        FeatureIndex dimension, double* bias_out) {
    if (duals.size() != data.size()) throw ArgumentError("reconstruct_weights: size mismatch");
    const auto& k = simd::active_kernels();
    std::vector<double> w(dimension, 0.0);
    double b = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (duals[i] == 0.0) continue;
        const auto& x = data[i].features;
        if (x.max_index() > dimension) throw ArgumentError("reconstruct_weights: dimension too small");
        double coef = duals[i] * sign(data[i].label);
        k.axpy_sparse(coef, x.indices(), x.values(), w);
        b += coef;
    }
    if (bias_out != nullptr) *bias_out = b;
    return w;
}

double dual_objective(std::span<const double> duals, std::span<const LabeledExample> data) {
    double b = 0.0;
    auto w = reconstruct_weights(duals, data, max_dimension(data), &b);
    double alpha_sum = std::accumulate(duals.begin(), duals.end(), 0.0);
    const auto& k = simd::active_kernels();
    return alpha_sum - 0.5 * (k.dot_dense(w, w) + b * b);
}

}  // namespace alsvm
