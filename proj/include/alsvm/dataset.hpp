#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "alsvm/sparse_vector.hpp"

namespace alsvm {

enum class Label : int { Negative = -1, Positive = +1 };

inline constexpr int sign(Label y) noexcept { return static_cast<int>(y); }

struct LabeledExample {
    SparseVector features;
    Label label = Label::Negative;

    friend bool operator==(const LabeledExample&, const LabeledExample&) = default;
};

struct ClassCounts {
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;

    std::size_t total() const noexcept { return n_pos + n_neg; }
    friend bool operator==(const ClassCounts&, const ClassCounts&) = default;
};

// Ordered collection of labeled examples. dimension() tracks the largest
// feature index seen and is never smaller than any stored index.
class Dataset {
public:
    Dataset() = default;
    explicit Dataset(std::vector<LabeledExample> examples);

    void push_back(LabeledExample example);
    void reserve(std::size_t n) { examples_.reserve(n); }

    std::span<const LabeledExample> examples() const noexcept { return examples_; }
    const LabeledExample& operator[](std::size_t i) const { return examples_[i]; }

    std::size_t size() const noexcept { return examples_.size(); }
    bool empty() const noexcept { return examples_.empty(); }
    FeatureIndex dimension() const noexcept { return dimension_; }

    // New dataset holding the examples at `ids`, in the given order.
    Dataset subset(std::span<const std::size_t> ids) const;

    friend bool operator==(const Dataset&, const Dataset&) = default;

private:
    std::vector<LabeledExample> examples_;
    FeatureIndex dimension_ = 0;
};

ClassCounts class_counts(std::span<const LabeledExample> examples) noexcept;
inline ClassCounts class_counts(const Dataset& data) noexcept { return class_counts(data.examples()); }

// Index form of the initial split: seed ids in draw order, pool ids ascending.
struct SplitIndices {
    std::vector<std::size_t> seed;
    std::vector<std::size_t> pool;
};

// Uniform random sample of `seed_size` examples without replacement.
// Throws ArgumentError unless 0 < seed_size <= n.
SplitIndices split_initial_indices(std::size_t n, std::size_t seed_size, std::uint64_t rng_seed);

struct InitialSplit {
    Dataset seed;
    Dataset pool;
};

InitialSplit split_initial(const Dataset& data, std::size_t seed_size, std::uint64_t rng_seed);

}  // namespace alsvm
