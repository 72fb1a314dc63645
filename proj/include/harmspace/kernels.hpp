#pragma once

#include <span>
#include <vector>

#include "harmspace/geometry.hpp"
#include "harmspace/harmonic_fn.hpp"

namespace harmspace {

/// (1 - r^2) / |x - y'|^n with |x - y'|^2 = (1 - r)^2 + 2 r (1 - u); unit mass on the sphere.
double poisson_ball_profile(int n, double r, double one_minus_u);
double poisson_ball(const BallPoint& x, const Vec& y);

/// sum_{k <= K} r^k Z_k(x', y').
double poisson_ball_series(const BallPoint& x, const Vec& y, int K);

/// Bound on the omitted terms: sum_{k > K} r^k max|Z_k| <= d_max(K) r^(K+1) / (1 - r),
/// with d_max(K) a bound on d_k for all k > K that grows like K^(n-2).
double poisson_series_tail_bound(int n, double r, int K);

/// Kernel sum_k lambda_k s^k Z_k(u), lambda_k = 2 Gamma(beta+1+k+n/2) / (Gamma(beta+1) Gamma(k+n/2)),
/// as a function of s = r rho and u = x'.y'.
class BergmanKernelBall {
public:
    BergmanKernelBall(int n, double beta);

    int dimension() const { return n_; }
    double beta() const { return beta_; }
    bool has_closed_form() const { return integer_beta_; }

    /// Truncation K with series tail below tol at s.
    int truncation(double s, double tol) const;
    double tail_bound(double s, int K) const;

    /// Truncated series; K < 0 selects truncation(s, 1e-15).
    double series(double s, double u, int K = -1) const;

    /// Closed form for integer beta: a finite combination of s-derivatives of the Poisson kernel.
    double closed(double s, double one_minus_u) const;

    /// Closed form when available, else the series.
    double profile(double s, double one_minus_u) const;

    double operator()(const BallPoint& x, const BallPoint& y) const;

    /// lambda_k for k = 0..K.
    std::vector<double> coefficients(int K) const;

private:
    int n_;
    double beta_;
    bool integer_beta_;
    std::vector<double> w_;  // closed-form weights on s^i p_i
};

/// n = 2 kernel from the binomial series: 4 (beta+1) Re (1 - z)^-(beta+2) - 2 (beta+1),
/// z = r rho e^{i dtheta}. Any beta > -1; rho = 1 (boundary point) is allowed when r < 1.
double bergman_q_disc(double beta, double r, double rho, double dtheta);

/// Truncated series of the ball Bergman kernel; throws if |x||y| >= 1.
double bergman_q_ball(double beta, const BallPoint& x, const BallPoint& y, int K);

/// f_{m,y}(x) = Q_m(x, y) as a coefficient field truncated at K.
HarmonicFunction extremal_fmy(double m, const BallPoint& y, int K);

/// Gamma((n+1)/2) / pi^((n+1)/2).
double poisson_halfspace_constant(int n);
double poisson_halfspace(std::span<const double> x, double t);
/// Poisson kernel as a function of |x|^2 and t.
double poisson_halfspace_profile(int n, double x2, double t);

/// ((-2)^(m+1) / m!) d^(m+1)/dt^(m+1) P(x - y, t + s), as a function of |x - y|^2 and t + s.
double bergman_q_halfspace_profile(int n, int m, double d2, double tau);
double bergman_q_halfspace(int m, const HalfSpacePoint& z, const HalfSpacePoint& w);
/// n = 1 from P = Im (x - i t)^-1 / pi: Q_m = (m+1) (-2)^{m+1} Im[i^{m+1} (x - i tau)^-(m+2)] / pi.
double bergman_q_halfplane(int m, double x, double tau);

} // namespace harmspace
