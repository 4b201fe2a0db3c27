#include "alsvm/sparse_vector.hpp"

#include <string>

#include "alsvm/error.hpp"

namespace alsvm {

SparseVector::SparseVector(std::initializer_list<std::pair<FeatureIndex, double>> entries) {
    indices_.reserve(entries.size());
    values_.reserve(entries.size());
    for (const auto& [index, value] : entries) push_back(index, value);
}

SparseVector::SparseVector(std::vector<FeatureIndex> indices, std::vector<double> values) {
    if (indices.size() != values.size())
        throw ArgumentError("SparseVector: index and value arrays differ in length");
    indices_.reserve(indices.size());
    values_.reserve(values.size());
    for (std::size_t k = 0; k < indices.size(); ++k) push_back(indices[k], values[k]);
}

void SparseVector::push_back(FeatureIndex index, double value) {
    if (index == 0 || index > kMaxFeatureIndex)
        throw ArgumentError("SparseVector: feature index " + std::to_string(index) + " out of range");
    if (!indices_.empty() && index <= indices_.back())
        throw ArgumentError("SparseVector: feature index " + std::to_string(index) +
                            " not strictly ascending");
    if (value == 0.0) return;
    indices_.push_back(index);
    values_.push_back(value);
}

double SparseVector::squared_norm() const noexcept {
    double s = 0.0;
    for (double v : values_) s += v * v;
    return s;
}

}  // namespace alsvm
