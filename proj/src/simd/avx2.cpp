#include <immintrin.h>

#include "harmspace/simd.hpp"

namespace harmspace::simd::detail {

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        vacc = _mm256_add_pd(vacc, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    }
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (std::size_t l = 0; i + l < n; ++l) acc[l] = acc[l] + a[i + l] * b[i + l];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) vacc = _mm256_add_pd(vacc, _mm256_loadu_pd(a + i));
    alignas(32) double acc[4];
    _mm256_store_pd(acc, vacc);
    for (std::size_t l = 0; i + l < n; ++l) acc[l] = acc[l] + a[i + l];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void zonal_avx2(const ZonalTables& t, const double* u, double* out, std::size_t np) {
    std::size_t i = 0;
    for (; i + 4 <= np; i += 4) {
        const __m256d x = _mm256_loadu_pd(u + i);
        __m256d acc = _mm256_set1_pd(t.w[0]);
        if (t.terms > 1) {
            __m256d pm = _mm256_set1_pd(1.0);
            __m256d p = x;
            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(t.w[1]), p));
            for (std::size_t k = 1; k + 1 < t.terms; ++k) {
                const __m256d ax = _mm256_mul_pd(_mm256_set1_pd(t.a[k]), x);
                const __m256d pn = _mm256_sub_pd(_mm256_mul_pd(ax, p), _mm256_mul_pd(_mm256_set1_pd(t.b[k]), pm));
                acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(t.w[k + 1]), pn));
                pm = p;
                p = pn;
            }
        }
        _mm256_storeu_pd(out + i, acc);
    }
    if (i < np) zonal_scalar(t, u + i, out + i, np - i);
}

} // namespace harmspace::simd::detail
