#pragma once

// Truncated Taylor series ("jets") a_0 + a_1 e + ... + a_N e^N, used to
// differentiate closed-form kernels exactly in one variable.

#include <cmath>
#include <cstddef>
#include <vector>

namespace harmspace::jet {

using Jet = std::vector<double>;

inline Jet mul(const Jet& a, const Jet& b, std::size_t order) {
    Jet c(order + 1, 0.0);
    for (std::size_t i = 0; i <= order && i < a.size(); ++i)
        for (std::size_t j = 0; i + j <= order && j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

/// h^a for a jet with h_0 > 0 (J. C. P. Miller's recurrence).
inline Jet power(const Jet& h, double a, std::size_t order) {
    Jet g(order + 1, 0.0);
    g[0] = std::pow(h[0], a);
    for (std::size_t k = 1; k <= order; ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k && j < h.size(); ++j)
            s += ((a + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * h[j] * g[k - j];
        g[k] = s / (static_cast<double>(k) * h[0]);
    }
    return g;
}

} // namespace harmspace::jet
