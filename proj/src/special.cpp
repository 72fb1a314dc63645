#include "harmspace/special.hpp"

#include <cmath>

#include "harmspace/error.hpp"

namespace harmspace {

double gamma_ratio(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("gamma_ratio: arguments must be positive");
    return std::exp(std::lgamma(a) - std::lgamma(b));
}

double beta_function(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_function: arguments must be positive");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double radial_gamma_integral(double s, double t, int n) {
    if (!(s > -1.0)) throw DomainError("radial_gamma_integral: need s > -1");
    if (!(2.0 * t + n > 0.0)) throw DomainError("radial_gamma_integral: need 2t + n > 0");
    return 0.5 * beta_function(s + 1.0, 0.5 * n + t);
}

std::vector<double> bergman_coefficients(int n, double beta, int K) {
    if (!(beta > -1.0)) throw DomainError("bergman_coefficients: need beta > -1");
    if (K < 0) throw DomainError("bergman_coefficients: negative truncation");
    std::vector<double> c(static_cast<std::size_t>(K) + 1);
    const double h = 0.5 * n;
    c[0] = 2.0 * std::exp(std::lgamma(beta + 1.0 + h) - std::lgamma(beta + 1.0) - std::lgamma(h));
    for (int k = 0; k < K; ++k) c[k + 1] = c[k] * ((beta + 1.0 + k + h) / (k + h));
    return c;
}

std::vector<double> fractional_factors(int n, double t, int K) {
    if (!(t > 0.0)) throw DomainError("fractional_factors: order must be positive");
    if (K < 0) throw DomainError("fractional_factors: negative truncation");
    std::vector<double> c(static_cast<std::size_t>(K) + 1);
    const double h = 0.5 * n;
    c[0] = std::exp(std::lgamma(h + t) - std::lgamma(h) - std::lgamma(t));
    for (int k = 0; k < K; ++k) c[k + 1] = c[k] * ((k + h + t) / (k + h));
    return c;
}

std::vector<double> stirling2_table(int N) {
    const std::size_t w = static_cast<std::size_t>(N) + 1;
    std::vector<double> s(w * w, 0.0);
    s[0] = 1.0;
    for (std::size_t j = 1; j < w; ++j)
        for (std::size_t i = 1; i <= j; ++i)
            s[j * w + i] = static_cast<double>(i) * s[(j - 1) * w + i] + s[(j - 1) * w + i - 1];
    return s;
}

double binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

} // namespace harmspace
