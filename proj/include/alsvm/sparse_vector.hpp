#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace alsvm {

using FeatureIndex = std::uint32_t;

// Largest feature index accepted; kernels gather through signed 32-bit lanes.
inline constexpr FeatureIndex kMaxFeatureIndex = 0x7fffffffu;

// Feature vector stored as parallel index/value arrays.
//
// Indices are 1-based and strictly ascending; entries with value exactly 0 are
// never stored. The split layout lets the SIMD kernels gather straight from
// indices().
class SparseVector {
public:
    SparseVector() = default;

    // Throws ArgumentError if the entries break the invariants.
    SparseVector(std::initializer_list<std::pair<FeatureIndex, double>> entries);
    SparseVector(std::vector<FeatureIndex> indices, std::vector<double> values);

    // Appends an entry; index must exceed the last one. Zero values are dropped.
    void push_back(FeatureIndex index, double value);

    std::span<const FeatureIndex> indices() const noexcept { return indices_; }
    std::span<const double> values() const noexcept { return values_; }

    std::size_t size() const noexcept { return indices_.size(); }
    bool empty() const noexcept { return indices_.empty(); }

    // Largest stored index, 0 for an empty vector.
    FeatureIndex max_index() const noexcept { return indices_.empty() ? 0 : indices_.back(); }

    double squared_norm() const noexcept;

    friend bool operator==(const SparseVector&, const SparseVector&) = default;

private:
    std::vector<FeatureIndex> indices_;
    std::vector<double> values_;
};

}  // namespace alsvm
