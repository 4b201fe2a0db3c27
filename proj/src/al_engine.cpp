#include "alsvm/al_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "alsvm/error.hpp"

namespace alsvm {

void ALConfig::validate() const {
    if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (seed_size < 2) throw ConfigError("seed_size must be >= 2");
    if (eval_stride < 1) throw ConfigError("eval_stride must be >= 1");
    if (!stop_when_pool_empty && !max_rounds)
        throw ConfigError("max_rounds is required when stop_when_pool_empty is off");
    if (cost_neg && !(*cost_neg > 0.0 && std::isfinite(*cost_neg))) throw ConfigError("cost_neg must be > 0");
    if (!(solver.tolerance > 0.0) || !(solver.kkt_tolerance > 0.0) || solver.max_epochs < 1) throw ConfigError("invalid solver options");
    if (sampling_policy.kind() == PolicyKind::InitPA && sampling_policy.frozen_pa())
        throw ConfigError("sampling policy is already initialized");
}

Oracle::Oracle(const Dataset& truth) {
    labels_.reserve(truth.size());
    for (const auto& e : truth.examples()) labels_.push_back(e.label);
}

Label Oracle::query(std::size_t id) const {
    if (id >= labels_.size()) throw ArgumentError("Oracle: unknown example id " + std::to_string(id));
    return labels_[id];
}

std::vector<std::size_t> select_batch(const LinearModel& model, const Dataset& pool,
                                      std::span<const std::size_t> candidates, std::size_t k) {
    if (candidates.empty()) throw ArgumentError("select_batch: empty pool");
    struct Scored {
        double distance;
        std::size_t position;
    };
    std::vector<Scored> scored;
    scored.reserve(candidates.size());
    for (std::size_t p = 0; p < candidates.size(); ++p)
        scored.push_back({std::abs(decision_value(model, pool[candidates[p]].features)), p});

    const std::size_t take = std::min(k, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(),
                      [](const Scored& a, const Scored& b) {
                          return a.distance != b.distance ? a.distance < b.distance : a.position < b.position;
                      });
    std::vector<std::size_t> ids;
    ids.reserve(take);
    for (std::size_t i = 0; i < take; ++i) ids.push_back(candidates[scored[i].position]);
    return ids;
}

std::vector<std::size_t> select_batch(const LinearModel& model, const Dataset& pool, std::size_t k) {
    std::vector<std::size_t> all(pool.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return select_batch(model, pool, all, k);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Trains the model a policy asks for on the current labeled set.
LinearModel train_for_policy(const CostPolicy& policy, const Dataset& labeled, double pa, double cost_neg,
                             const ALConfig& config, std::size_t round) {
    try {
        auto costs = CostFactors::from_pa(pa, cost_neg);
        if (policy.kind() == PolicyKind::OversampleDuplicate) {
            auto resampled = oversample_duplicate(labeled, splitmix64(config.rng_seed ^ splitmix64(round)));
            return train(resampled, costs, config.solver);
        }
        return train(labeled, costs, config.solver);
    } catch (const Error& e) {
        throw TrainingError("round " + std::to_string(round) + ": " + e.what());
    }
}

}  // namespace

ALTrace run_al(const Dataset& pool_with_truth, const ALConfig& config, const Dataset* test) {
    config.validate();
    if (pool_with_truth.size() < config.seed_size)
        throw ConfigError("pool has " + std::to_string(pool_with_truth.size()) + " examples, fewer than seed_size " +
                          std::to_string(config.seed_size));
    if (test != nullptr && test->empty()) throw ArgumentError("run_al: empty test set");

    const Oracle oracle(pool_with_truth);
    auto split = split_initial_indices(pool_with_truth.size(), config.seed_size, config.rng_seed);

    Dataset labeled;
    labeled.reserve(pool_with_truth.size());
    for (std::size_t id : split.seed) labeled.push_back({pool_with_truth[id].features, oracle.query(id)});
    std::vector<std::size_t> unlabeled = std::move(split.pool);

    auto seed_counts = class_counts(labeled);
    if (seed_counts.n_pos == 0 || seed_counts.n_neg == 0)
        throw ConfigError("single-class seed set (" + std::to_string(seed_counts.n_pos) + " pos, " +
                          std::to_string(seed_counts.n_neg) + " neg); increase seed_size or change rng_seed");

    const CostPolicy sampling = config.sampling_policy.initialized(labeled);
    const CostPolicy prediction = config.effective_prediction_policy().initialized(labeled);
    const bool dual = config.always_train_prediction_model || !(sampling == prediction);
    const double cost_neg = config.cost_neg ? *config.cost_neg : default_cost_neg(labeled.examples());

    ALTrace trace;
    trace.config = config;
    trace.seed_ids = split.seed;

    std::optional<double> prev_sampling, prev_prediction;
    for (std::size_t round = 0;; ++round) {
        const auto counts = class_counts(labeled);
        RoundRecord rec;
        rec.round = round;
        rec.labeled_size = labeled.size();
        rec.n_pos_labeled = counts.n_pos;
        rec.n_neg_labeled = counts.n_neg;
        rec.labeled_pos_fraction = static_cast<double>(counts.n_pos) / static_cast<double>(counts.total());
        rec.cost_neg = cost_neg;

        auto pa_s = policy_pa(sampling, counts, round, prev_sampling);
        rec.pa_sampling = pa_s.pa;
        rec.pa_fallback = pa_s.fallback;
        prev_sampling = pa_s.pa;
        auto sampling_model = std::make_shared<const LinearModel>(
            train_for_policy(sampling, labeled, pa_s.pa, cost_neg, config, round));
        rec.sampling_solver = sampling_model->diagnostics;

        std::shared_ptr<const LinearModel> prediction_model = sampling_model;
        rec.pa_prediction = rec.pa_sampling;
        if (dual) {
            auto pa_p = policy_pa(prediction, counts, round, prev_prediction);
            rec.pa_prediction = pa_p.pa;
            rec.pa_fallback = rec.pa_fallback || pa_p.fallback;
            prev_prediction = pa_p.pa;
            prediction_model = std::make_shared<const LinearModel>(
                train_for_policy(prediction, labeled, pa_p.pa, cost_neg, config, round));
        }
        rec.prediction_solver = prediction_model->diagnostics;

        const bool stop = (unlabeled.empty() && config.stop_when_pool_empty) ||
                          (config.max_rounds && round >= *config.max_rounds);
        if (test != nullptr && (round % config.eval_stride == 0 || stop))
            rec.metrics = evaluate(*prediction_model, *test);

        if (!stop && !unlabeled.empty()) {
            rec.selected = select_batch(*sampling_model, pool_with_truth, unlabeled, config.batch_size);
            for (std::size_t id : rec.selected) labeled.push_back({pool_with_truth[id].features, oracle.query(id)});
            auto chosen = rec.selected;
            std::sort(chosen.begin(), chosen.end());
            std::erase_if(unlabeled, [&](std::size_t id) {
                return std::binary_search(chosen.begin(), chosen.end(), id);
            });
        }

        if (config.keep_round_models) trace.round_models.push_back(prediction_model);
        trace.final_model = prediction_model;
        trace.rounds.push_back(std::move(rec));
        if (stop) break;
    }
    return trace;
}

std::vector<std::pair<std::size_t, double>> skew_series(const ALTrace& trace) {
    std::vector<std::pair<std::size_t, double>> out;
    out.reserve(trace.rounds.size());
    for (const auto& r : trace.rounds) out.emplace_back(r.round, r.labeled_pos_fraction);
    return out;
}

}  // namespace alsvm
