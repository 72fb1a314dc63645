#pragma once

#include <span>
#include <vector>

#include <json.hpp>

#include "harmspace/geometry.hpp"
#include "harmspace/spharm.hpp"

namespace harmspace {

/// Ragged array c_k^j, 0 <= k <= K, 1 <= j <= d_k, stored flat in (k, j) order.
class CoefficientField {
public:
    CoefficientField() = default;
    CoefficientField(int n, int K);

    static CoefficientField constant(int n, int K, double value);
    /// c_k^j = profile[k] for every j.
    static CoefficientField radial(int n, const std::vector<double>& profile);
    static CoefficientField from_json(const nlohmann::json& j);

    int dimension() const { return n_; }
    int max_degree() const { return K_; }
    std::size_t size() const { return data_.size(); }

    double at(int k, int j) const;
    double& at(int k, int j);
    std::span<const double> row(int k) const;
    std::span<double> row(int k);
    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    CoefficientField truncated(int K) const;
    CoefficientField scaled(double a) const;

    /// {n, K, rows: [[c_0^1], [c_1^1, ...], ...]}
    nlohmann::json to_json() const;

private:
    int n_ = 2;
    int K_ = 0;
    std::vector<double> data_;
};

/// f(r x') = sum_k r^k sum_j b_k^j Y_j^{(k)}(x').
class HarmonicFunction {
public:
    HarmonicFunction() = default;
    explicit HarmonicFunction(CoefficientField b) : b_(std::move(b)) {}

    const CoefficientField& coefficients() const { return b_; }
    int dimension() const { return b_.dimension(); }
    int max_degree() const { return b_.max_degree(); }

    double eval(const BallPoint& x) const;
    /// Evaluation at a Cartesian point; |x| may equal 1 (finite expansion).
    double eval(const Vec& x) const;
    /// Evaluation at r x' given precomputed basis values at x'.
    double eval(double r, std::span<const double> basis_at_direction) const;

    HarmonicFunction scaled(double a) const { return HarmonicFunction(b_.scaled(a)); }
    HarmonicFunction operator+(const HarmonicFunction& o) const;

private:
    CoefficientField b_;
};

/// (c * f): coefficients c_k^j b_k^j(f), truncated at min(K_c, K_f).
HarmonicFunction convolve(const CoefficientField& c, const HarmonicFunction& f);

/// Hadamard product of two functions' coefficient fields.
HarmonicFunction convolve(const HarmonicFunction& f, const HarmonicFunction& g);

/// Lambda_t: degree-k coefficients scaled by Gamma(k + n/2 + t) / (Gamma(k + n/2) Gamma(t)).
HarmonicFunction fractional_derivative(const HarmonicFunction& f, double t);

/// g * P_{y'}: coefficients c_k^j Y_j^{(k)}(y').
HarmonicFunction convolved_poisson(const HarmonicFunction& g, const Vec& y);

/// Basis values of degree <= K at a fixed set of sphere nodes.
class BasisTable {
public:
    BasisTable(int n, int K, const std::vector<Vec>& nodes);

    std::size_t nodes() const { return nodes_; }
    std::size_t width() const { return width_; }
    std::span<const double> at(std::size_t i) const { return {values_.data() + i * width_, width_}; }

    /// f(r x'_i) for every node.
    std::vector<double> eval(const HarmonicFunction& f, double r) const;

private:
    int n_;
    int K_;
    std::size_t nodes_;
    std::size_t width_;
    std::vector<double> values_;
};

/// Coefficients scaled by r^k, flattened to the basis layout, truncated to `width` entries.
std::vector<double> radial_scaled(const CoefficientField& c, double r, std::size_t width);

} // namespace harmspace

#include "harmspace/report.hpp"

namespace harmspace {

/// Both quadrature sides of the pairing identity
///   int_S (g*P_y')(r x') f(rho x') dsigma(x')
///   = 2 int_0^1 int_S Lambda_{m+1}(g*P_y')(r R x') f(rho R x') (1-R^2)^m R^{n-1} dsigma dR
/// against the coefficient series sum_k (r rho)^k sum_j b_k^j c_k^j Y_j^{(k)}(y').
VerificationReport pairing_identity_check(const HarmonicFunction& f, const HarmonicFunction& g, double m, double r,
                                          double rho, const Vec& y, double tol = 1e-8);

} // namespace harmspace
