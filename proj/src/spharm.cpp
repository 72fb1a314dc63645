#include "harmspace/spharm.hpp"

#include <algorithm>
#include <cmath>

#include "harmspace/error.hpp"
#include "harmspace/special.hpp"

namespace harmspace {

int dim_harmonics(int n, int k) {
    if (n < 2) throw DomainError("dim_harmonics: need n >= 2");
    if (k < 0) throw DomainError("dim_harmonics: need k >= 0");
    if (n == 2) return k == 0 ? 1 : 2;
    return static_cast<int>(binomial(k + n - 1, n - 1) - binomial(k + n - 3, n - 1));
}

std::size_t harmonic_offset(int n, int k) {
    if (n == 2) return k == 0 ? 0 : static_cast<std::size_t>(2 * k - 1);
    if (n == 3) return static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
    std::size_t s = 0;
    for (int l = 0; l < k; ++l) s += static_cast<std::size_t>(dim_harmonics(n, l));
    return s;
}

std::size_t harmonic_count(int n, int K) { return harmonic_offset(n, K + 1); }

double gegenbauer(double lambda, int k, double u) {
    if (std::abs(u) > 1.0 + 1e-14) throw DomainError("gegenbauer: |u| must be at most 1");
    if (k == 0) return 1.0;
    double c0 = 1.0, c1 = 2.0 * lambda * u;
    for (int i = 1; i < k; ++i) {
        const double c2 = (2.0 * (i + lambda) * u * c1 - (i + 2.0 * lambda - 1.0) * c0) / (i + 1.0);
        c0 = c1;
        c1 = c2;
    }
    return c1;
}

double chebyshev(int k, double u) {
    if (k == 0) return 1.0;
    double t0 = 1.0, t1 = u;
    for (int i = 1; i < k; ++i) {
        const double t2 = 2.0 * u * t1 - t0;
        t0 = t1;
        t1 = t2;
    }
    return t1;
}

double legendre(int k, double u) { return gegenbauer(0.5, k, u); }

double zonal_profile(int n, int k, double u) {
    if (std::abs(u) > 1.0 + 1e-14) throw DomainError("zonal_profile: |u| must be at most 1");
    if (k == 0) return 1.0;
    if (n == 2) return 2.0 * chebyshev(k, u);
    if (n == 3) return (2.0 * k + 1.0) * legendre(k, u);
    const double lambda = 0.5 * (n - 2);
    return dim_harmonics(n, k) * gegenbauer(lambda, k, u) / gegenbauer(lambda, k, 1.0);
}

double zonal(int n, int k, const Vec& x, const Vec& y) {
    require_unit(x, 1e-12);
    require_unit(y, 1e-12);
    if (x.dim != n || y.dim != n) throw DomainError("zonal: dimension mismatch");
    const double u = std::clamp(x.dot(y), -1.0, 1.0);
    return zonal_profile(n, k, u);
}

HarmonicBasis::HarmonicBasis(int n, int K) : n_(n), K_(K), count_(0) {
    if (n != 2 && n != 3) throw DomainError("HarmonicBasis: dimension must be 2 or 3");
    if (K < 0) throw DomainError("HarmonicBasis: negative degree");
    count_ = harmonic_count(n, K);
    if (n == 3) {
        const std::size_t w = static_cast<std::size_t>(K) + 1;
        a_.assign(w * w, 0.0);
        b_.assign(w * w, 0.0);
        diag_.assign(w, 1.0);
        for (int m = 1; m <= K; ++m)
            diag_[m] = m == 1 ? std::sqrt(3.0) : diag_[m - 1] * std::sqrt((2.0 * m + 1.0) / (2.0 * m));
        for (int l = 1; l <= K; ++l)
            for (int m = 0; m < l; ++m) {
                const double lm = static_cast<double>(l - m), lp = static_cast<double>(l + m);
                a_[l * w + m] = std::sqrt((2.0 * l - 1.0) * (2.0 * l + 1.0) / (lm * lp));
                if (l - m >= 2)
                    b_[l * w + m] = std::sqrt((2.0 * l + 1.0) * (lp - 1.0) * (lm - 1.0) / (lm * lp * (2.0 * l - 3.0)));
            }
    }
}

void HarmonicBasis::evaluate_all(const Vec& x, double* out) const {
    if (x.dim != n_) throw DomainError("HarmonicBasis: dimension mismatch");
    const double s2 = std::sqrt(2.0);
    out[0] = 1.0;
    if (n_ == 2) {
        // (x1 + i x2)^k by repeated multiplication.
        double re = 1.0, im = 0.0;
        for (int k = 1; k <= K_; ++k) {
            const double nr = re * x[0] - im * x[1];
            const double ni = re * x[1] + im * x[0];
            re = nr;
            im = ni;
            out[2 * k - 1] = s2 * re;
            out[2 * k] = s2 * im;
        }
        return;
    }
    const std::size_t w = static_cast<std::size_t>(K_) + 1;
    const double u = x[2];
    double re = 1.0, im = 0.0;
    for (int m = 0; m <= K_; ++m) {
        if (m > 0) {
            const double nr = re * x[0] - im * x[1];
            const double ni = re * x[1] + im * x[0];
            re = nr;
            im = ni;
        }
        // Q_l^m for l = m..K by the upward recurrence in l.
        double qm2 = 0.0, qm1 = diag_[m];
        for (int l = m; l <= K_; ++l) {
            double q;
            if (l == m) {
                q = diag_[m];
            } else {
                q = a_[l * w + m] * u * qm1 - b_[l * w + m] * qm2;
                qm2 = qm1;
                qm1 = q;
            }
            const std::size_t off = static_cast<std::size_t>(l) * static_cast<std::size_t>(l);
            if (m == 0) {
                out[off + 2 * l] = q;
            } else {
                out[off + 2 * m - 2] = q * re;
                out[off + 2 * m - 1] = q * im;
            }
        }
    }
}

std::vector<double> HarmonicBasis::evaluate_all(const Vec& x) const {
    std::vector<double> out(count_);
    evaluate_all(x, out.data());
    return out;
}

double basis_eval(int n, int k, int j, const Vec& x) {
    if (n != 2 && n != 3) throw DomainError("basis_eval: dimension must be 2 or 3");
    if (k < 0 || j < 1 || j > dim_harmonics(n, k)) throw DomainError("basis_eval: index out of range");
    require_unit(x, 1e-12);
    const HarmonicBasis b(n, k);
    const std::vector<double> all = b.evaluate_all(x);
    return all[harmonic_offset(n, k) + static_cast<std::size_t>(j) - 1];
}

} // namespace harmspace
