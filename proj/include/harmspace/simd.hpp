#pragma once

// Data-parallel inner loops used by quadrature and series evaluation.
//
// Every kernel has a scalar reference implementation. Vector variants
// (AVX2 on x86-64, NEON on aarch64) are chosen at runtime and perform the
// same floating-point operations in the same order, so all backends agree
// bit for bit. Reductions accumulate into four interleaved lanes that are
// combined as (l0 + l1) + (l2 + l3).

#include <span>
#include <string_view>

namespace harmspace::simd {

enum class Backend { scalar, avx2, neon };

std::string_view name(Backend b);
bool available(Backend b);

/// Backend used by the untagged entry points. Picked once from the CPU,
/// overridable with HARMSPACE_SIMD=scalar|avx2|neon.
Backend active();
void set_active(Backend b);

/// Sum of a[i] * b[i].
double dot(Backend be, std::span<const double> a, std::span<const double> b);
inline double dot(std::span<const double> a, std::span<const double> b) { return dot(active(), a, b); }

/// Plain sum with the lane-interleaved order.
double sum(Backend be, std::span<const double> a);
inline double sum(std::span<const double> a) { return sum(active(), a); }

/// out[i] = sum_k coeffs[k] * Z_k(u[i]) where Z_k is the degree-k zonal
/// harmonic profile on S^{n-1} under the unit-mass sphere measure:
/// n = 2: Z_0 = 1, Z_k = 2 T_k(u); n = 3: Z_k = (2k + 1) P_k(u).
void zonal_series(Backend be, int n, std::span<const double> coeffs, std::span<const double> u,
                  std::span<double> out);
inline void zonal_series(int n, std::span<const double> coeffs, std::span<const double> u, std::span<double> out) {
    zonal_series(active(), n, coeffs, u, out);
}

namespace detail {
// Recurrence form shared by all backends: p_0 = 1, p_1 = u,
// p_{k+1} = (a[k] * u) * p_k - b[k] * p_{k-1}, out = sum_k w[k] * p_k.
struct ZonalTables {
    const double* w;
    const double* a;
    const double* b;
    std::size_t terms;
};
double dot_scalar(const double* a, const double* b, std::size_t n);
double sum_scalar(const double* a, std::size_t n);
void zonal_scalar(const ZonalTables& t, const double* u, double* out, std::size_t np);
#if defined(HARMSPACE_HAVE_AVX2)
double dot_avx2(const double* a, const double* b, std::size_t n);
double sum_avx2(const double* a, std::size_t n);
void zonal_avx2(const ZonalTables& t, const double* u, double* out, std::size_t np);
#endif
#if defined(HARMSPACE_HAVE_NEON)
double dot_neon(const double* a, const double* b, std::size_t n);
double sum_neon(const double* a, std::size_t n);
void zonal_neon(const ZonalTables& t, const double* u, double* out, std::size_t np);
#endif
} // namespace detail

} // namespace harmspace::simd
