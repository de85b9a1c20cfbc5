#if defined(__aarch64__)

#include <arm_neon.h>

#include <cstddef>
#include <cstdint>

#include "kernels_internal.hpp"

namespace scaw::kern::detail {

namespace {

void xor16_rows_neon(const std::uint8_t* const rows[16], std::uint8_t out[16]) {
    uint8x16_t acc = vld1q_u8(rows[0]);
    for (int i = 1; i < 16; ++i) acc = veorq_u8(acc, vld1q_u8(rows[i]));
    vst1q_u8(out, acc);
}

void axpy_neon(double* acc, double w, const float* x, std::size_t n) {
    const float64x2_t vw = vdupq_n_f64(w);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        float32x4_t xf = vld1q_f32(x + j);
        float64x2_t lo = vcvt_f64_f32(vget_low_f32(xf));
        float64x2_t hi = vcvt_high_f64_f32(xf);
        vst1q_f64(acc + j, vaddq_f64(vld1q_f64(acc + j), vmulq_f64(vw, lo)));
        vst1q_f64(acc + j + 2,
                  vaddq_f64(vld1q_f64(acc + j + 2), vmulq_f64(vw, hi)));
    }
    for (; j < n; ++j) acc[j] += w * static_cast<double>(x[j]);
}

void moments_neon(double* sum, double* sumsq, const float* x, std::size_t n) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        float32x4_t xf = vld1q_f32(x + j);
        float64x2_t lo = vcvt_f64_f32(vget_low_f32(xf));
        float64x2_t hi = vcvt_high_f64_f32(xf);
        vst1q_f64(sum + j, vaddq_f64(vld1q_f64(sum + j), lo));
        vst1q_f64(sum + j + 2, vaddq_f64(vld1q_f64(sum + j + 2), hi));
        vst1q_f64(sumsq + j, vaddq_f64(vld1q_f64(sumsq + j), vmulq_f64(lo, lo)));
        vst1q_f64(sumsq + j + 2,
                  vaddq_f64(vld1q_f64(sumsq + j + 2), vmulq_f64(hi, hi)));
    }
    for (; j < n; ++j) {
        double v = static_cast<double>(x[j]);
        sum[j] += v;
        sumsq[j] += v * v;
    }
}

void minmax_neon(float* mn, float* mx, const float* x, std::size_t n) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        float32x4_t xf = vld1q_f32(x + j);
        vst1q_f32(mn + j, vminq_f32(vld1q_f32(mn + j), xf));
        vst1q_f32(mx + j, vmaxq_f32(vld1q_f32(mx + j), xf));
    }
    for (; j < n; ++j) {
        if (x[j] < mn[j]) mn[j] = x[j];
        if (x[j] > mx[j]) mx[j] = x[j];
    }
}

const Ops kNeonOps = {xor16_rows_neon, axpy_neon, moments_neon, minmax_neon};

} // namespace

const Ops* neon_ops() { return &kNeonOps; }

} // namespace scaw::kern::detail

#endif // __aarch64__
