#include <arm_neon.h>

#include "harmspace/simd.hpp"

namespace harmspace::simd::detail {

// Two 128-bit registers stand in for the four reduction lanes.
double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t lo = vdupq_n_f64(0.0);
    float64x2_t hi = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        lo = vaddq_f64(lo, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        hi = vaddq_f64(hi, vmulq_f64(vld1q_f64(a + i + 2), vld1q_f64(b + i + 2)));
    }
    double acc[4];
    vst1q_f64(acc, lo);
    vst1q_f64(acc + 2, hi);
    for (std::size_t l = 0; i + l < n; ++l) acc[l] = acc[l] + a[i + l] * b[i + l];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double sum_neon(const double* a, std::size_t n) {
    float64x2_t lo = vdupq_n_f64(0.0);
    float64x2_t hi = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        lo = vaddq_f64(lo, vld1q_f64(a + i));
        hi = vaddq_f64(hi, vld1q_f64(a + i + 2));
    }
    double acc[4];
    vst1q_f64(acc, lo);
    vst1q_f64(acc + 2, hi);
    for (std::size_t l = 0; i + l < n; ++l) acc[l] = acc[l] + a[i + l];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void zonal_neon(const ZonalTables& t, const double* u, double* out, std::size_t np) {
    std::size_t i = 0;
    for (; i + 2 <= np; i += 2) {
        const float64x2_t x = vld1q_f64(u + i);
        float64x2_t acc = vdupq_n_f64(t.w[0]);
        if (t.terms > 1) {
            float64x2_t pm = vdupq_n_f64(1.0);
            float64x2_t p = x;
            acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(t.w[1]), p));
            for (std::size_t k = 1; k + 1 < t.terms; ++k) {
                const float64x2_t ax = vmulq_f64(vdupq_n_f64(t.a[k]), x);
                const float64x2_t pn = vsubq_f64(vmulq_f64(ax, p), vmulq_f64(vdupq_n_f64(t.b[k]), pm));
                acc = vaddq_f64(acc, vmulq_f64(vdupq_n_f64(t.w[k + 1]), pn));
                pm = p;
                p = pn;
            }
        }
        vst1q_f64(out + i, acc);
    }
    if (i < np) zonal_scalar(t, u + i, out + i, np - i);
}

} // namespace harmspace::simd::detail
