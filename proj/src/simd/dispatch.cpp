#include <cstdlib>
#include <string>
#include <vector>

#include "harmspace/error.hpp"
#include "harmspace/simd.hpp"

namespace harmspace::simd {

namespace {

Backend detect() {
    if (const char* env = std::getenv("HARMSPACE_SIMD")) {
        const std::string v(env);
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2" && available(Backend::avx2)) return Backend::avx2;
        if (v == "neon" && available(Backend::neon)) return Backend::neon;
    }
    if (available(Backend::avx2)) return Backend::avx2;
    if (available(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

Backend& current() {
    static Backend b = detect();
    return b;
}

void check_backend(Backend b) {
    if (!available(b)) throw UnsupportedConfiguration("SIMD backend " + std::string(name(b)) + " not available");
}

} // namespace

std::string_view name(Backend b) {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
    }
    return "unknown";
}

bool available(Backend b) {
    switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(HARMSPACE_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Backend::neon:
#if defined(HARMSPACE_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Backend active() { return current(); }

void set_active(Backend b) {
    check_backend(b);
    current() = b;
}

double dot(Backend be, std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DomainError("dot: length mismatch");
    switch (be) {
#if defined(HARMSPACE_HAVE_AVX2)
    case Backend::avx2: return detail::dot_avx2(a.data(), b.data(), a.size());
#endif
#if defined(HARMSPACE_HAVE_NEON)
    case Backend::neon: return detail::dot_neon(a.data(), b.data(), a.size());
#endif
    case Backend::scalar: return detail::dot_scalar(a.data(), b.data(), a.size());
    default: check_backend(be);
    }
    return detail::dot_scalar(a.data(), b.data(), a.size());
}

double sum(Backend be, std::span<const double> a) {
    switch (be) {
#if defined(HARMSPACE_HAVE_AVX2)
    case Backend::avx2: return detail::sum_avx2(a.data(), a.size());
#endif
#if defined(HARMSPACE_HAVE_NEON)
    case Backend::neon: return detail::sum_neon(a.data(), a.size());
#endif
    case Backend::scalar: return detail::sum_scalar(a.data(), a.size());
    default: check_backend(be);
    }
    return detail::sum_scalar(a.data(), a.size());
}

void zonal_series(Backend be, int n, std::span<const double> coeffs, std::span<const double> u,
                  std::span<double> out) {
    if (n != 2 && n != 3) throw DomainError("zonal_series: dimension must be 2 or 3");
    if (out.size() != u.size()) throw DomainError("zonal_series: output length mismatch");
    if (coeffs.empty()) {
        for (double& o : out) o = 0.0;
        return;
    }
    const std::size_t nc = coeffs.size();
    std::vector<double> w(nc), a(nc, 0.0), b(nc, 0.0);
    for (std::size_t k = 0; k < nc; ++k) {
        const double kd = static_cast<double>(k);
        if (n == 2) {
            w[k] = k == 0 ? coeffs[k] : 2.0 * coeffs[k];
            a[k] = 2.0;
            b[k] = 1.0;
        } else {
            w[k] = (2.0 * kd + 1.0) * coeffs[k];
            a[k] = (2.0 * kd + 1.0) / (kd + 1.0);
            b[k] = kd / (kd + 1.0);
        }
    }
    const detail::ZonalTables t{w.data(), a.data(), b.data(), nc};
    switch (be) {
#if defined(HARMSPACE_HAVE_AVX2)
    case Backend::avx2: detail::zonal_avx2(t, u.data(), out.data(), u.size()); return;
#endif
#if defined(HARMSPACE_HAVE_NEON)
    case Backend::neon: detail::zonal_neon(t, u.data(), out.data(), u.size()); return;
#endif
    case Backend::scalar: detail::zonal_scalar(t, u.data(), out.data(), u.size()); return;
    default: check_backend(be);
    }
}

} // namespace harmspace::simd
