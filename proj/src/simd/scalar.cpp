#include "harmspace/simd.hpp"

namespace harmspace::simd::detail {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t l = 0; l < 4; ++l) acc[l] = acc[l] + a[i + l] * b[i + l];
    }
    for (std::size_t l = 0; i + l < n; ++l) acc[l] = acc[l] + a[i + l] * b[i + l];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

double sum_scalar(const double* a, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        for (std::size_t l = 0; l < 4; ++l) acc[l] = acc[l] + a[i + l];
    }
    for (std::size_t l = 0; i + l < n; ++l) acc[l] = acc[l] + a[i + l];
    return (acc[0] + acc[1]) + (acc[2] + acc[3]);
}

void zonal_scalar(const ZonalTables& t, const double* u, double* out, std::size_t np) {
    for (std::size_t i = 0; i < np; ++i) {
        const double x = u[i];
        double acc = t.w[0];
        if (t.terms > 1) {
            double pm = 1.0;
            double p = x;
            acc = acc + t.w[1] * p;
            for (std::size_t k = 1; k + 1 < t.terms; ++k) {
                const double pn = (t.a[k] * x) * p - t.b[k] * pm;
                acc = acc + t.w[k + 1] * pn;
                pm = p;
                p = pn;
            }
        }
        out[i] = acc;
    }
}

} // namespace harmspace::simd::detail
