#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

#include "alsvm/error.hpp"
#include "alsvm/kernels.hpp"

namespace alsvm::simd {
namespace {

constexpr KernelTable kScalar{Isa::Scalar, scalar::dot_sparse, scalar::axpy_sparse, scalar::dot_dense};

#if defined(ALSVM_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, avx2::dot_sparse, avx2::axpy_sparse, avx2::dot_dense};
#endif

bool cpu_has_avx2() noexcept {
#if defined(ALSVM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* initial_table() noexcept {
    const char* env = std::getenv("ALSVM_SIMD");
    if (env != nullptr && std::string(env) == "scalar") return &kScalar;
#if defined(ALSVM_HAVE_AVX2)
    if (cpu_has_avx2()) return &kAvx2;
#endif
    return &kScalar;
}

std::atomic<const KernelTable*>& active_slot() noexcept {
    static std::atomic<const KernelTable*> slot{initial_table()};
    return slot;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::Scalar: return "scalar";
        case Isa::Avx2: return "avx2";
    }
    return "unknown";
}

bool isa_available(Isa isa) noexcept {
    return isa == Isa::Scalar || (isa == Isa::Avx2 && cpu_has_avx2());
}

const KernelTable& kernels_for(Isa isa) {
    if (!isa_available(isa))
        throw ArgumentError("kernel ISA '" + std::string(isa_name(isa)) + "' not available");
#if defined(ALSVM_HAVE_AVX2)
    if (isa == Isa::Avx2) return kAvx2;
#endif
    return kScalar;
}

const KernelTable& active_kernels() noexcept { return *active_slot().load(std::memory_order_acquire); }

void select_isa(Isa isa) { active_slot().store(&kernels_for(isa), std::memory_order_release); }

double dot_clipped(const KernelTable& k, std::span<const double> dense, const SparseVector& x) {
    auto idx = x.indices();
    auto val = x.values();
    auto end = std::upper_bound(idx.begin(), idx.end(), static_cast<FeatureIndex>(dense.size()));
    auto n = static_cast<std::size_t>(end - idx.begin());
    return k.dot_sparse(dense, idx.first(n), val.first(n));
}

}  // namespace alsvm::simd
