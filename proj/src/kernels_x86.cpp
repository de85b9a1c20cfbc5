#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "kernels_internal.hpp"

namespace scaw::kern::detail {

namespace {

// ---- SSE2 (baseline on x86-64) ----

void xor16_rows_sse2(const std::uint8_t* const rows[16], std::uint8_t out[16]) {
    __m128i acc = _mm_loadu_si128(reinterpret_cast<const __m128i*>(rows[0]));
    for (int i = 1; i < 16; ++i)
        acc = _mm_xor_si128(acc,
                            _mm_loadu_si128(reinterpret_cast<const __m128i*>(rows[i])));
    _mm_storeu_si128(reinterpret_cast<__m128i*>(out), acc);
}

void axpy_sse2(double* acc, double w, const float* x, std::size_t n) {
    const __m128d vw = _mm_set1_pd(w);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m128 xf = _mm_loadu_ps(x + j);
        __m128d lo = _mm_cvtps_pd(xf);
        __m128d hi = _mm_cvtps_pd(_mm_movehl_ps(xf, xf));
        _mm_storeu_pd(acc + j, _mm_add_pd(_mm_loadu_pd(acc + j), _mm_mul_pd(vw, lo)));
        _mm_storeu_pd(acc + j + 2,
                      _mm_add_pd(_mm_loadu_pd(acc + j + 2), _mm_mul_pd(vw, hi)));
    }
    for (; j < n; ++j) acc[j] += w * static_cast<double>(x[j]);
}

void moments_sse2(double* sum, double* sumsq, const float* x, std::size_t n) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m128 xf = _mm_loadu_ps(x + j);
        __m128d lo = _mm_cvtps_pd(xf);
        __m128d hi = _mm_cvtps_pd(_mm_movehl_ps(xf, xf));
        _mm_storeu_pd(sum + j, _mm_add_pd(_mm_loadu_pd(sum + j), lo));
        _mm_storeu_pd(sum + j + 2, _mm_add_pd(_mm_loadu_pd(sum + j + 2), hi));
        _mm_storeu_pd(sumsq + j,
                      _mm_add_pd(_mm_loadu_pd(sumsq + j), _mm_mul_pd(lo, lo)));
        _mm_storeu_pd(sumsq + j + 2,
                      _mm_add_pd(_mm_loadu_pd(sumsq + j + 2), _mm_mul_pd(hi, hi)));
    }
    for (; j < n; ++j) {
        double v = static_cast<double>(x[j]);
        sum[j] += v;
        sumsq[j] += v * v;
    }
}

void minmax_sse2(float* mn, float* mx, const float* x, std::size_t n) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m128 xf = _mm_loadu_ps(x + j);
        _mm_storeu_ps(mn + j, _mm_min_ps(_mm_loadu_ps(mn + j), xf));
        _mm_storeu_ps(mx + j, _mm_max_ps(_mm_loadu_ps(mx + j), xf));
    }
    for (; j < n; ++j) {
        if (x[j] < mn[j]) mn[j] = x[j];
        if (x[j] > mx[j]) mx[j] = x[j];
    }
}

const Ops kSse2Ops = {xor16_rows_sse2, axpy_sse2, moments_sse2, minmax_sse2};

// ---- AVX2 ----
// Multiply and add stay separate (no FMA) so results match the scalar path
// bit-for-bit.

__attribute__((target("avx2"))) void axpy_avx2(double* acc, double w,
                                               const float* x, std::size_t n) {
    const __m256d vw = _mm256_set1_pd(w);
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
        __m128 f0 = _mm_loadu_ps(x + j);
        __m128 f1 = _mm_loadu_ps(x + j + 4);
        __m256d d0 = _mm256_cvtps_pd(f0);
        __m256d d1 = _mm256_cvtps_pd(f1);
        _mm256_storeu_pd(acc + j, _mm256_add_pd(_mm256_loadu_pd(acc + j),
                                                _mm256_mul_pd(vw, d0)));
        _mm256_storeu_pd(acc + j + 4, _mm256_add_pd(_mm256_loadu_pd(acc + j + 4),
                                                    _mm256_mul_pd(vw, d1)));
    }
    for (; j < n; ++j) acc[j] += w * static_cast<double>(x[j]);
}

__attribute__((target("avx2"))) void moments_avx2(double* sum, double* sumsq,
                                                  const float* x, std::size_t n) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d d = _mm256_cvtps_pd(_mm_loadu_ps(x + j));
        _mm256_storeu_pd(sum + j, _mm256_add_pd(_mm256_loadu_pd(sum + j), d));
        _mm256_storeu_pd(sumsq + j, _mm256_add_pd(_mm256_loadu_pd(sumsq + j),
                                                  _mm256_mul_pd(d, d)));
    }
    for (; j < n; ++j) {
        double v = static_cast<double>(x[j]);
        sum[j] += v;
        sumsq[j] += v * v;
    }
}

__attribute__((target("avx2"))) void minmax_avx2(float* mn, float* mx,
                                                 const float* x, std::size_t n) {
    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
        __m256 xf = _mm256_loadu_ps(x + j);
        _mm256_storeu_ps(mn + j, _mm256_min_ps(_mm256_loadu_ps(mn + j), xf));
        _mm256_storeu_ps(mx + j, _mm256_max_ps(_mm256_loadu_ps(mx + j), xf));
    }
    for (; j < n; ++j) {
        if (x[j] < mn[j]) mn[j] = x[j];
        if (x[j] > mx[j]) mx[j] = x[j];
    }
}

// 16-byte XOR gains nothing from wider registers; reuse the SSE2 routine.
const Ops kAvx2Ops = {xor16_rows_sse2, axpy_avx2, moments_avx2, minmax_avx2};

} // namespace

const Ops* sse2_ops() {
    return __builtin_cpu_supports("sse2") ? &kSse2Ops : nullptr;
}

const Ops* avx2_ops() {
    return __builtin_cpu_supports("avx2") ? &kAvx2Ops : nullptr;
}

} // namespace scaw::kern::detail

#endif // x86
