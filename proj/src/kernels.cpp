#include "harmspace/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "harmspace/error.hpp"
#include "harmspace/jet.hpp"
#include "harmspace/simd.hpp"
#include "harmspace/special.hpp"
#include "harmspace/spharm.hpp"

namespace harmspace {

double poisson_ball_profile(int n, double r, double one_minus_u) {
    if (!(r >= 0.0) || !(r < 1.0)) throw DomainError("poisson_ball: radius must lie in [0,1)");
    const double q = (1.0 - r) * (1.0 - r) + 2.0 * r * one_minus_u;
    return (1.0 - r) * (1.0 + r) / std::pow(q, 0.5 * n);
}

double poisson_ball(const BallPoint& x, const Vec& y) {
    require_unit(y, 1e-12);
    if (y.dim != x.dim()) throw DomainError("poisson_ball: dimension mismatch");
    return poisson_ball_profile(x.dim(), x.radius, angle_cosine(x.direction, y).one_minus_u);
}

double poisson_ball_series(const BallPoint& x, const Vec& y, int K) {
    require_unit(y, 1e-12);
    const int n = x.dim();
    const double u = std::clamp(x.direction.dot(y), -1.0, 1.0);
    if (n == 2 || n == 3) {
        std::vector<double> c(static_cast<std::size_t>(K) + 1);
        double rk = 1.0;
        for (auto& v : c) {
            v = rk;
            rk *= x.radius;
        }
        double out = 0.0;
        simd::zonal_series(n, c, std::span<const double>(&u, 1), std::span<double>(&out, 1));
        return out;
    }
    double s = 0.0, rk = 1.0;
    for (int k = 0; k <= K; ++k, rk *= x.radius) s += rk * zonal_profile(n, k, u);
    return s;
}

double poisson_series_tail_bound(int n, double r, int K) {
    if (!(r < 1.0)) return INFINITY;
    // d_k <= d_{K+1} (k/(K+1))^(n-2) growth; bound sum_{k>K} d_k r^k by a geometric
    // majorant using the ratio of consecutive terms at k = K + 1.
    const double dk = dim_harmonics(n, K + 1);
    const double ratio = r * std::pow((K + 2.0) / (K + 1.0), std::max(0, n - 2));
    if (ratio >= 1.0) return INFINITY;
    return dk * std::pow(r, K + 1) / (1.0 - ratio);
}

BergmanKernelBall::BergmanKernelBall(int n, double beta) : n_(n), beta_(beta) {
    if (!(beta > -1.0)) throw DomainError("BergmanKernelBall: need beta > -1");
    if (n < 2) throw DomainError("BergmanKernelBall: need n >= 2");
    integer_beta_ = beta >= 0.0 && beta == std::floor(beta) && beta <= 40.0;
    if (integer_beta_) {
        const int b = static_cast<int>(beta);
        // prod_{i=0}^{b} (n/2 + i + E) = sum_j e_j E^j with E = s d/ds.
        std::vector<double> e{1.0};
        for (int i = 0; i <= b; ++i) {
            const double a = 0.5 * n + i;
            std::vector<double> ne(e.size() + 1, 0.0);
            for (std::size_t j = 0; j < e.size(); ++j) {
                ne[j] += a * e[j];
                ne[j + 1] += e[j];
            }
            e = ne;
        }
        const int N = b + 1;
        const std::vector<double> S = stirling2_table(N);
        const std::size_t W = static_cast<std::size_t>(N) + 1;
        double fact_b = 1.0;
        for (int i = 2; i <= b; ++i) fact_b *= i;
        w_.assign(W, 0.0);
        double fact_i = 1.0;
        for (int i = 0; i <= N; ++i) {
            if (i > 0) fact_i *= i;
            double acc = 0.0;
            for (int j = i; j <= N; ++j) acc += e[static_cast<std::size_t>(j)] * S[static_cast<std::size_t>(j) * W + i];
            w_[static_cast<std::size_t>(i)] = 2.0 / fact_b * fact_i * acc;
        }
    }
}

std::vector<double> BergmanKernelBall::coefficients(int K) const { return bergman_coefficients(n_, beta_, K); }

double BergmanKernelBall::tail_bound(double s, int K) const {
    if (!(s < 1.0)) return INFINITY;
    // Terms lambda_k d_k s^k; lambda_{k+1}/lambda_k = (beta+1+k+n/2)/(k+n/2), decreasing in k.
    const double h = 0.5 * n_;
    const double lam_ratio = (beta_ + 2.0 + K + h) / (K + 1.0 + h);
    const double d_ratio = std::pow((K + 2.0) / (K + 1.0), std::max(0, n_ - 2));
    const double ratio = s * std::max(1.0, lam_ratio) * d_ratio;
    if (ratio >= 1.0) return INFINITY;
    const double lamK1 = bergman_coefficients(n_, beta_, K + 1).back();
    return lamK1 * dim_harmonics(n_, K + 1) * std::pow(s, K + 1) / (1.0 - ratio);
}

int BergmanKernelBall::truncation(double s, double tol) const {
    if (!(s < 1.0)) throw DomainError("BergmanKernelBall: series diverges for |x||y| >= 1");
    if (s == 0.0) return 0;
    int K = std::max(4, static_cast<int>(std::ceil(std::log(tol) / std::log(s))));
    while (tail_bound(s, K) > tol) {
        K = K + K / 4 + 8;
        if (K > 2000000) throw DomainError("BergmanKernelBall: truncation too large");
    }
    return K;
}

double BergmanKernelBall::series(double s, double u, int K) const {
    if (!(s >= 0.0) || !(s < 1.0)) throw DomainError("BergmanKernelBall: need 0 <= |x||y| < 1");
    if (K < 0) K = truncation(s, 1e-15);
    std::vector<double> c = coefficients(K);
    double sk = 1.0;
    for (auto& v : c) {
        v *= sk;
        sk *= s;
    }
    if (n_ == 2 || n_ == 3) {
        double out = 0.0;
        simd::zonal_series(n_, c, std::span<const double>(&u, 1), std::span<double>(&out, 1));
        return out;
    }
    double acc = 0.0;
    for (int k = 0; k <= K; ++k) acc += c[static_cast<std::size_t>(k)] * zonal_profile(n_, k, u);
    return acc;
}

double BergmanKernelBall::closed(double s, double omu) const {
    if (!integer_beta_) throw DomainError("BergmanKernelBall: closed form needs integer beta");
    if (!(s >= 0.0) || !(s < 1.0)) throw DomainError("BergmanKernelBall: need 0 <= |x||y| < 1");
    const std::size_t N = w_.size() - 1;
    const double oms = 1.0 - s;
    const jet::Jet q{oms * oms + 2.0 * s * omu, 2.0 * (omu - oms), 1.0};
    const jet::Jet num{oms * (1.0 + s), -2.0 * s, -1.0};
    const jet::Jet p = jet::mul(jet::power(q, -0.5 * n_, N), num, N);
    double acc = 0.0, si = 1.0;
    for (std::size_t i = 0; i <= N; ++i, si *= s) acc += w_[i] * si * p[i];
    return acc;
}

double BergmanKernelBall::profile(double s, double omu) const {
    if (integer_beta_) return closed(s, omu);
    return series(s, 1.0 - omu);
}

double BergmanKernelBall::operator()(const BallPoint& x, const BallPoint& y) const {
    if (x.dim() != y.dim() || x.dim() != n_) throw DomainError("BergmanKernelBall: dimension mismatch");
    return profile(x.radius * y.radius, angle_cosine(x.direction, y.direction).one_minus_u);
}

double bergman_q_disc(double beta, double r, double rho, double dtheta) {
    if (!(beta > -1.0)) throw DomainError("bergman_q_disc: need beta > -1");
    const double s = r * rho;
    if (!(s >= 0.0) || !(s < 1.0)) throw DomainError("bergman_q_disc: need 0 <= r rho < 1");
    const double sh = std::sin(0.5 * dtheta);
    // 1 - z with the real part formed without cancellation.
    const std::complex<double> w((1.0 - s) + 2.0 * s * sh * sh, -s * std::sin(dtheta));
    std::complex<double> p;
    if (beta == std::floor(beta) && beta <= 40.0) {
        const std::complex<double> inv = 1.0 / w;
        p = 1.0;
        for (int i = 0; i < static_cast<int>(beta) + 2; ++i) p *= inv;
    } else {
        p = std::pow(w, -(beta + 2.0));
    }
    return 4.0 * (beta + 1.0) * p.real() - 2.0 * (beta + 1.0);
}

double bergman_q_ball(double beta, const BallPoint& x, const BallPoint& y, int K) {
    const double s = x.radius * y.radius;
    if (!(s < 1.0)) throw DomainError("bergman_q_ball: series diverges for |x||y| >= 1");
    const BergmanKernelBall q(x.dim(), beta);
    const double u = std::clamp(x.direction.dot(y.direction), -1.0, 1.0);
    return q.series(s, u, K);
}

HarmonicFunction extremal_fmy(double m, const BallPoint& y, int K) {
    if (!(m > 0.0)) throw DomainError("extremal_fmy: need m > 0");
    const int n = y.dim();
    const std::vector<double> lam = bergman_coefficients(n, m, K);
    const HarmonicBasis basis(n, K);
    const std::vector<double> yv = basis.evaluate_all(y.direction);
    CoefficientField c(n, K);
    double rk = 1.0;
    for (int k = 0; k <= K; ++k, rk *= y.radius) {
        const std::size_t off = harmonic_offset(n, k);
        auto row = c.row(k);
        for (std::size_t j = 0; j < row.size(); ++j) row[j] = lam[static_cast<std::size_t>(k)] * rk * yv[off + j];
    }
    return HarmonicFunction(c);
}

double poisson_halfspace_constant(int n) {
    const double a = 0.5 * (n + 1);
    return std::exp(std::lgamma(a) - a * std::log(std::numbers::pi));
}

double poisson_halfspace_profile(int n, double x2, double t) {
    if (!(t > 0.0)) throw DomainError("poisson_halfspace: need t > 0");
    return poisson_halfspace_constant(n) * t / std::pow(x2 + t * t, 0.5 * (n + 1));
}

double poisson_halfspace(std::span<const double> x, double t) {
    double x2 = 0.0;
    for (double v : x) x2 += v * v;
    return poisson_halfspace_profile(static_cast<int>(x.size()), x2, t);
}

double bergman_q_halfspace_profile(int n, int m, double d2, double tau) {
    if (m < 0) throw DomainError("bergman_q_halfspace: need m >= 0");
    if (!(tau > 0.0)) throw DomainError("bergman_q_halfspace: need t + s > 0");
    const std::size_t N = static_cast<std::size_t>(m) + 1;
    const jet::Jet h{d2 + tau * tau, 2.0 * tau, 1.0};
    const jet::Jet g = jet::power(h, -0.5 * (n + 1), N);
    const jet::Jet p = jet::mul(jet::Jet{tau, 1.0}, g, N);
    return std::pow(-2.0, m + 1) * (m + 1.0) * poisson_halfspace_constant(n) * p[N];
}

double bergman_q_halfspace(int m, const HalfSpacePoint& z, const HalfSpacePoint& w) {
    if (z.dim() != w.dim()) throw DomainError("bergman_q_halfspace: dimension mismatch");
    double d2 = 0.0;
    for (int i = 0; i < z.dim(); ++i) d2 += (z.x[i] - w.x[i]) * (z.x[i] - w.x[i]);
    return bergman_q_halfspace_profile(z.dim(), m, d2, z.t + w.t);
}

double bergman_q_halfplane(int m, double x, double tau) {
    if (m < 0) throw DomainError("bergman_q_halfplane: need m >= 0");
    if (!(tau > 0.0)) throw DomainError("bergman_q_halfplane: need t + s > 0");
    const std::complex<double> inv = 1.0 / std::complex<double>(x, -tau);
    std::complex<double> p = inv * inv;
    for (int i = 0; i < m; ++i) p *= inv;
    static const std::complex<double> I_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    p *= I_pow[(m + 1) % 4];
    return (m + 1.0) * std::pow(-2.0, m + 1) * p.imag() / std::numbers::pi;
}

} // namespace harmspace
