#pragma once

// Arithmetic inner loops of the solver and the batch scorer.
//
// Every kernel has a scalar reference version and, on x86-64 builds, an
// AVX2/FMA version. The active table is picked once at startup from the CPU
// features; ALSVM_SIMD=scalar in the environment forces the reference path.
// Sparse operands index the dense vector with 1-based feature indices, i.e.
// entry k touches dense[idx[k] - 1], and every index must be <= dense.size().

#include <cstddef>
#include <span>
#include <string_view>

#include "alsvm/sparse_vector.hpp"

namespace alsvm::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

struct KernelTable {
    Isa isa;
    double (*dot_sparse)(std::span<const double> dense, std::span<const FeatureIndex> idx,
                         std::span<const double> val);
    // dense[idx[k]-1] += a * val[k]
    void (*axpy_sparse)(double a, std::span<const FeatureIndex> idx, std::span<const double> val,
                        std::span<double> dense);
    double (*dot_dense)(std::span<const double> x, std::span<const double> y);
};

namespace scalar {
double dot_sparse(std::span<const double> dense, std::span<const FeatureIndex> idx,
                  std::span<const double> val);
void axpy_sparse(double a, std::span<const FeatureIndex> idx, std::span<const double> val,
                 std::span<double> dense);
double dot_dense(std::span<const double> x, std::span<const double> y);
}  // namespace scalar

#if defined(ALSVM_HAVE_AVX2)
namespace avx2 {
double dot_sparse(std::span<const double> dense, std::span<const FeatureIndex> idx,
                  std::span<const double> val);
void axpy_sparse(double a, std::span<const FeatureIndex> idx, std::span<const double> val,
                 std::span<double> dense);
double dot_dense(std::span<const double> x, std::span<const double> y);
}  // namespace avx2
#endif

// True when this build contains `isa` and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

// Table for a specific ISA. Throws ArgumentError if unavailable.
const KernelTable& kernels_for(Isa isa);

// Currently selected table.
const KernelTable& active_kernels() noexcept;

// Overrides the runtime selection (tests, benchmarking). Not thread-safe with
// respect to concurrent training.
void select_isa(Isa isa);

// Dot product with a dense vector, ignoring entries whose index exceeds
// dense.size().
double dot_clipped(const KernelTable& k, std::span<const double> dense, const SparseVector& x);

}  // namespace alsvm::simd
