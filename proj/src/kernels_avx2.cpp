// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "alsvm/kernels.hpp"

namespace alsvm::simd::avx2 {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// Four 1-based indices -> 0-based int32 lanes.
inline __m128i load_offsets(const FeatureIndex* p) {
    __m128i v = _mm_loadu_si128(reinterpret_cast<const __m128i*>(p));
    return _mm_sub_epi32(v, _mm_set1_epi32(1));
}

}  // namespace

double dot_sparse(std::span<const double> dense, std::span<const FeatureIndex> idx,
                  std::span<const double> val) {
    const std::size_t n = idx.size();
    const double* base = dense.data();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        __m256d g0 = _mm256_i32gather_pd(base, load_offsets(idx.data() + k), 8);
        __m256d g1 = _mm256_i32gather_pd(base, load_offsets(idx.data() + k + 4), 8);
        acc0 = _mm256_fmadd_pd(g0, _mm256_loadu_pd(val.data() + k), acc0);
        acc1 = _mm256_fmadd_pd(g1, _mm256_loadu_pd(val.data() + k + 4), acc1);
    }
    if (k + 4 <= n) {
        __m256d g = _mm256_i32gather_pd(base, load_offsets(idx.data() + k), 8);
        acc0 = _mm256_fmadd_pd(g, _mm256_loadu_pd(val.data() + k), acc0);
        k += 4;
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) s += base[idx[k] - 1] * val[k];
    return s;
}

void axpy_sparse(double a, std::span<const FeatureIndex> idx, std::span<const double> val,
                 std::span<double> dense) {
    const std::size_t n = idx.size();
    double* base = dense.data();
    const __m256d va = _mm256_set1_pd(a);
    alignas(32) double out[4];
    std::size_t k = 0;
    // No scatter in AVX2: gather, update in registers, store lane by lane.
    // Indices are strictly ascending so lanes never alias.
    for (; k + 4 <= n; k += 4) {
        __m256d g = _mm256_i32gather_pd(base, load_offsets(idx.data() + k), 8);
        g = _mm256_fmadd_pd(va, _mm256_loadu_pd(val.data() + k), g);
        _mm256_store_pd(out, g);
        base[idx[k] - 1] = out[0];
        base[idx[k + 1] - 1] = out[1];
        base[idx[k + 2] - 1] = out[2];
        base[idx[k + 3] - 1] = out[3];
    }
    for (; k < n; ++k) base[idx[k] - 1] += a * val[k];
}

double dot_dense(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x.data() + i + 4), _mm256_loadu_pd(y.data() + i + 4), acc1);
    }
    if (i + 4 <= n) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i), acc0);
        i += 4;
    }
    double s = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

}  // namespace alsvm::simd::avx2
