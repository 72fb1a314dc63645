#pragma once

#include <vector>

namespace harmspace {

/// Gamma(a) / Gamma(b) for positive a, b, through log-Gamma.
double gamma_ratio(double a, double b);

/// B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double beta_function(double a, double b);

/// Closed form of int_0^1 (1 - r^2)^s r^(2t + n - 1) dr, valid for s > -1 and 2t + n > 0.
double radial_gamma_integral(double s, double t, int n);

/// 2 Gamma(beta + 1 + k + n/2) / (Gamma(beta + 1) Gamma(k + n/2)) for k = 0..K.
/// Seeded by log-Gamma at k = 0, then advanced by the exact ratio in k.
std::vector<double> bergman_coefficients(int n, double beta, int K);

/// Gamma(k + n/2 + t) / (Gamma(k + n/2) Gamma(t)) for k = 0..K.
std::vector<double> fractional_factors(int n, double t, int K);

/// Stirling numbers of the second kind S(j, i), 0 <= i, j <= N, row-major (N + 1)^2.
std::vector<double> stirling2_table(int N);

double binomial(int n, int k);

} // namespace harmspace
