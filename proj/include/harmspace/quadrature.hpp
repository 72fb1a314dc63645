#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "harmspace/geometry.hpp"

namespace harmspace {

/// Nodes and weights of a one-dimensional rule.
struct Rule1D {
    std::vector<double> x;
    std::vector<double> w;

    std::size_t size() const { return x.size(); }
    void append(const Rule1D& o);
    /// Sum of w[i] * f(x[i]); throws EvaluationError on a non-finite value.
    double integrate(const std::function<double(double)>& f) const;
};

/// N-point Gauss-Legendre rule on [-1, 1].
Rule1D gauss_legendre(int N);

/// N-point Gauss-Jacobi rule on [-1, 1] for the weight (1 - x)^a (1 + x)^b, by Golub-Welsch.
Rule1D gauss_jacobi(int N, double a, double b);

/// Gauss-Legendre rule mapped to [a, b].
Rule1D gauss_on(double a, double b, int N);

/// Panels [a, a + h0], [a + h0, a + 2 h0], [a + 2 h0, a + 4 h0], ... up to b, so the
/// rule resolves features of width h0 near a. With endpoint_exponent != 0 the first
/// panel carries the weight (x - a)^endpoint_exponent exactly; other panels carry it
/// multiplied into their weights.
Rule1D graded_rule(double a, double b, double h0, int order, double endpoint_exponent = 0.0);

/// Radial rule on [0, 1): Gauss-Legendre on [0, 1/2] and on the dyadic panels
/// [1 - 2^-k, 1 - 2^-(k+1)], k = 1..depth-1, with a Gauss-Jacobi tail panel
/// [1 - 2^-depth, 1) that absorbs the weight (1 - r)^alpha exactly.
struct RadialRule {
    int order = 16;
    int depth = 20;
    double alpha = 0.0;
    /// Exponent a of an extra r^a weight handled exactly on the first panel.
    double origin_exponent = 0.0;
    Rule1D rule;

    RadialRule() = default;
    RadialRule(int order, int depth, double alpha = 0.0, double origin_exponent = 0.0);

    /// Depth chosen so that the tail panel is much shorter than `scale`, the
    /// distance from 1 at which the integrand varies.
    static RadialRule for_scale(int order, double scale, double alpha = 0.0);

    /// The same panels with a different endpoint weight.
    RadialRule weighted(double alpha, double origin_exponent = 0.0) const;

    const std::vector<double>& nodes() const { return rule.x; }
    const std::vector<double>& weights() const { return rule.w; }

    nlohmann::json descriptor() const;
    static RadialRule from_descriptor(const nlohmann::json& j);
};

/// Product rule on S^{n-1}, n in {2, 3}, weights summing to 1.
struct SphereRule {
    int dimension = 2;
    int degree = 0;
    std::vector<Vec> nodes;
    std::vector<double> weights;

    /// Exact on polynomials of total degree <= degree.
    static SphereRule make(int n, int degree);

    /// Rule graded in the polar angle around `axis` (toward the axis), for
    /// integrands concentrated near axis at angular scale h0. n_phi azimuthal
    /// points for n = 3.
    static SphereRule axial(int n, const Vec& axis, double h0, int order, int n_phi);

    std::size_t size() const { return nodes.size(); }

    nlohmann::json descriptor() const;
};

/// 1D rule in u = x'.e for zonal integrands: sum w_i F(u_i) ~ int_S F(x'.e) dsigma(x').
/// Graded toward u = 1 at angular scale h0. Returned as (theta_i, w_i) with u = cos theta.
Rule1D zonal_rule(int n, double h0, int order);

/// int_0^1 f(r) (1 - r)^alpha dr.
double integrate_radial(const std::function<double(double)>& f, double alpha, const RadialRule& rule);

/// int_S f dsigma with sigma(S) = 1.
double integrate_sphere(const std::function<double(const Vec&)>& f, const SphereRule& rule);

/// Least-squares fit of log(value) = slope * log(1 - rho) + intercept.
struct DecayFit {
    std::vector<std::pair<double, double>> samples;
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;

    nlohmann::json to_json() const;
};

/// Requires >= 8 grid points with 1 - rho spanning >= 2 decades.
DecayFit fit_decay_exponent(const std::function<double(double)>& g, const std::vector<double>& rho_grid);

/// Plain log-log fit of y against x, no grid requirements beyond two distinct positive x.
DecayFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

/// rho_j = 1 - 2^-j for j in [j0, j1].
std::vector<double> dyadic_grid(int j0, int j1, double step = 1.0);

/// Golden-section search for a maximum of f on [a, b], assuming unimodality
/// near the returned point. Returns (argmax, max).
std::pair<double, double> maximize_1d(const std::function<double(double)>& f, double a, double b,
                                      double tol = 1e-10);

} // namespace harmspace
