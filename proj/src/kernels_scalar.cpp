#include "alsvm/kernels.hpp"

namespace alsvm::simd::scalar {

double dot_sparse(std::span<const double> dense, std::span<const FeatureIndex> idx,
                  std::span<const double> val) {
    double s = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) s += dense[idx[k] - 1] * val[k];
    return s;
}

void axpy_sparse(double a, std::span<const FeatureIndex> idx, std::span<const double> val,
                 std::span<double> dense) {
    for (std::size_t k = 0; k < idx.size(); ++k) dense[idx[k] - 1] += a * val[k];
}

double dot_dense(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

}  // namespace alsvm::simd::scalar
