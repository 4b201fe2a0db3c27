#include "alsvm/dataset.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "alsvm/error.hpp"

namespace alsvm {

Dataset::Dataset(std::vector<LabeledExample> examples) {
    examples_.reserve(examples.size());
    for (auto& e : examples) push_back(std::move(e));
}

void Dataset::push_back(LabeledExample example) {
    if (example.label != Label::Positive && example.label != Label::Negative)
        throw ArgumentError("Dataset: label must be -1 or +1");
    dimension_ = std::max(dimension_, example.features.max_index());
    examples_.push_back(std::move(example));
}

Dataset Dataset::subset(std::span<const std::size_t> ids) const {
    Dataset out;
    out.reserve(ids.size());
    for (std::size_t id : ids) {
        if (id >= examples_.size()) throw ArgumentError("Dataset::subset: id out of range");
        out.push_back(examples_[id]);
    }
    return out;
}

ClassCounts class_counts(std::span<const LabeledExample> examples) noexcept {
    ClassCounts c;
    for (const auto& e : examples) {
        if (e.label == Label::Positive)
            ++c.n_pos;
        else
            ++c.n_neg;
    }
    return c;
}

SplitIndices split_initial_indices(std::size_t n, std::size_t seed_size, std::uint64_t rng_seed) {
    if (seed_size == 0 || seed_size > n)
        throw ArgumentError("split_initial: seed_size " + std::to_string(seed_size) +
                            " outside [1, " + std::to_string(n) + "]");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Partial Fisher-Yates: the first seed_size slots are the sample.
    std::mt19937_64 rng(rng_seed);
    for (std::size_t i = 0; i < seed_size; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(order[i], order[pick(rng)]);
    }
    SplitIndices split;
    split.seed.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(seed_size));
    split.pool.assign(order.begin() + static_cast<std::ptrdiff_t>(seed_size), order.end());
    std::sort(split.pool.begin(), split.pool.end());
    return split;
}

InitialSplit split_initial(const Dataset& data, std::size_t seed_size, std::uint64_t rng_seed) {
    auto ids = split_initial_indices(data.size(), seed_size, rng_seed);
    return {data.subset(ids.seed), data.subset(ids.pool)};
}

}  // namespace alsvm
