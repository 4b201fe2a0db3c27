#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "alsvm/cost_policy.hpp"
#include "alsvm/dataset.hpp"
#include "alsvm/metrics.hpp"
#include "alsvm/svm.hpp"

namespace alsvm {

struct ALConfig {
    std::size_t batch_size = 20;
    std::size_t seed_size = 100;
    std::optional<std::size_t> max_rounds;  // selection rounds; unbounded if empty
    // When false, rounds continue after the pool is exhausted (with empty
    // selections) until max_rounds, which must then be set.
    bool stop_when_pool_empty = true;
    CostPolicy sampling_policy = CostPolicy::init_pa();
    std::optional<CostPolicy> prediction_policy;  // defaults to sampling_policy
    std::uint64_t rng_seed = 0;
    SolverOptions solver;
    std::optional<double> cost_neg;  // C-; SVM-light default over the seed set if empty
    std::size_t eval_stride = 1;     // evaluate every n-th round (and the last)
    bool keep_round_models = false;
    // Train the prediction model separately even when it shares the sampling
    // policy. Results must not change; used to check that equivalence.
    bool always_train_prediction_model = false;

    const CostPolicy& effective_prediction_policy() const noexcept {
        return prediction_policy ? *prediction_policy : sampling_policy;
    }

    // Throws ConfigError on invalid combinations.
    void validate() const;
};

// Simulated annotator answering from withheld labels.
class Oracle {
public:
    explicit Oracle(const Dataset& truth);
    Label query(std::size_t id) const;
    std::size_t size() const noexcept { return labels_.size(); }

private:
    std::vector<Label> labels_;
};

struct RoundRecord {
    std::size_t round = 0;
    std::size_t labeled_size = 0;
    double pa_sampling = 1.0;
    double pa_prediction = 1.0;
    double cost_neg = 1.0;
    std::size_t n_pos_labeled = 0;
    std::size_t n_neg_labeled = 0;
    double labeled_pos_fraction = 0.0;
    bool pa_fallback = false;
    std::vector<std::size_t> selected;  // pool ids queried at the end of this round
    std::optional<EvalMetrics> metrics;
    SolverDiagnostics sampling_solver;
    SolverDiagnostics prediction_solver;

    friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

struct ALTrace {
    ALConfig config;
    std::vector<RoundRecord> rounds;
    std::vector<std::size_t> seed_ids;
    std::shared_ptr<const LinearModel> final_model;          // last prediction model
    std::vector<std::shared_ptr<const LinearModel>> round_models;  // if keep_round_models
};

// Pool ids of the min(k, |candidates|) points with the smallest |w.x + b|;
// ties go to the earlier candidate. Throws ArgumentError on an empty pool.
std::vector<std::size_t> select_batch(const LinearModel& model, const Dataset& pool,
                                      std::span<const std::size_t> candidates, std::size_t k);
std::vector<std::size_t> select_batch(const LinearModel& model, const Dataset& pool, std::size_t k);

// Pool-based active learning with margin sampling.
//
// Round 0 trains on the uniform random seed. Each round sets PA from the
// sampling policy, trains the sampling model (on a duplicated-positives copy of
// L for OversampleDuplicate), trains the prediction model if its policy differs,
// evaluates on `test`, then moves the batch closest to the sampling hyperplane
// from U to L. The last record is the round in which nothing more is selected.
ALTrace run_al(const Dataset& pool_with_truth, const ALConfig& config, const Dataset* test = nullptr);

// (round, labeled positive fraction) per record.
std::vector<std::pair<std::size_t, double>> skew_series(const ALTrace& trace);

}  // namespace alsvm
