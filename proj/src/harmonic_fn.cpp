#include "harmspace/harmonic_fn.hpp"

#include <algorithm>
#include <cmath>

#include "harmspace/error.hpp"
#include "harmspace/simd.hpp"
#include "harmspace/special.hpp"

namespace harmspace {

CoefficientField::CoefficientField(int n, int K) : n_(n), K_(K) {
    if (n != 2 && n != 3) throw DomainError("CoefficientField: dimension must be 2 or 3");
    if (K < 0) throw DomainError("CoefficientField: negative degree bound");
    data_.assign(harmonic_count(n, K), 0.0);
}

CoefficientField CoefficientField::constant(int n, int K, double value) {
    CoefficientField c(n, K);
    std::fill(c.data_.begin(), c.data_.end(), value);
    return c;
}

CoefficientField CoefficientField::radial(int n, const std::vector<double>& profile) {
    if (profile.empty()) throw DomainError("CoefficientField::radial: empty profile");
    CoefficientField c(n, static_cast<int>(profile.size()) - 1);
    for (int k = 0; k <= c.K_; ++k)
        for (double& v : c.row(k)) v = profile[static_cast<std::size_t>(k)];
    return c;
}

double CoefficientField::at(int k, int j) const {
    if (k < 0 || k > K_ || j < 1 || j > dim_harmonics(n_, k)) throw DomainError("CoefficientField: index out of range");
    return data_[harmonic_offset(n_, k) + static_cast<std::size_t>(j) - 1];
}

double& CoefficientField::at(int k, int j) {
    if (k < 0 || k > K_ || j < 1 || j > dim_harmonics(n_, k)) throw DomainError("CoefficientField: index out of range");
    return data_[harmonic_offset(n_, k) + static_cast<std::size_t>(j) - 1];
}

std::span<const double> CoefficientField::row(int k) const {
    return {data_.data() + harmonic_offset(n_, k), static_cast<std::size_t>(dim_harmonics(n_, k))};
}

std::span<double> CoefficientField::row(int k) {
    return {data_.data() + harmonic_offset(n_, k), static_cast<std::size_t>(dim_harmonics(n_, k))};
}

CoefficientField CoefficientField::truncated(int K) const {
    CoefficientField c(n_, K);
    const std::size_t m = std::min(c.data_.size(), data_.size());
    std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(m), c.data_.begin());
    return c;
}

CoefficientField CoefficientField::scaled(double a) const {
    CoefficientField c = *this;
    for (double& v : c.data_) v *= a;
    return c;
}

nlohmann::json CoefficientField::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (int k = 0; k <= K_; ++k) {
        nlohmann::json r = nlohmann::json::array();
        for (double v : row(k)) r.push_back(v);
        rows.push_back(r);
    }
    return {{"n", n_}, {"K", K_}, {"rows", rows}};
}

CoefficientField CoefficientField::from_json(const nlohmann::json& j) {
    const int n = j.at("n").get<int>();
    const int K = j.at("K").get<int>();
    const auto& rows = j.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != K + 1)
        throw ConfigError("coefficient file: expected K + 1 rows");
    CoefficientField c(n, K);
    for (int k = 0; k <= K; ++k) {
        const auto& r = rows[static_cast<std::size_t>(k)];
        if (!r.is_array() || static_cast<int>(r.size()) != dim_harmonics(n, k))
            throw ConfigError("coefficient file: row " + std::to_string(k) + " must have " +
                              std::to_string(dim_harmonics(n, k)) + " entries");
        for (int jj = 0; jj < dim_harmonics(n, k); ++jj) c.at(k, jj + 1) = r[static_cast<std::size_t>(jj)].get<double>();
    }
    return c;
}

std::vector<double> radial_scaled(const CoefficientField& c, double r, std::size_t width) {
    std::vector<double> out(width, 0.0);
    double rk = 1.0;
    const int n = c.dimension();
    for (int k = 0; k <= c.max_degree(); ++k) {
        const std::size_t off = harmonic_offset(n, k);
        if (off >= width) break;
        const auto row = c.row(k);
        for (std::size_t j = 0; j < row.size() && off + j < width; ++j) out[off + j] = rk * row[j];
        rk *= r;
    }
    return out;
}

double HarmonicFunction::eval(double r, std::span<const double> basis) const {
    const std::vector<double> w = radial_scaled(b_, r, std::min(basis.size(), b_.size()));
    return simd::dot(w, basis.subspan(0, w.size()));
}

double HarmonicFunction::eval(const Vec& x) const {
    if (x.dim != dimension()) throw DomainError("HarmonicFunction: dimension mismatch");
    const double r = x.norm();
    if (r > 1.0 + 1e-12) throw DomainError("HarmonicFunction: point outside the closed ball");
    const Vec dir = r == 0.0 ? Vec::axis(x.dim, x.dim - 1) : x.scaled(1.0 / r);
    const HarmonicBasis basis(dimension(), max_degree());
    const std::vector<double> y = basis.evaluate_all(dir);
    return eval(r, y);
}

double HarmonicFunction::eval(const BallPoint& x) const { return eval(x.cartesian()); }

HarmonicFunction HarmonicFunction::operator+(const HarmonicFunction& o) const {
    if (o.dimension() != dimension()) throw DomainError("HarmonicFunction: dimension mismatch");
    const int K = std::max(max_degree(), o.max_degree());
    CoefficientField a = b_.truncated(K), b = o.b_.truncated(K);
    for (std::size_t i = 0; i < a.size(); ++i) a.data()[i] += b.data()[i];
    return HarmonicFunction(a);
}

HarmonicFunction convolve(const CoefficientField& c, const HarmonicFunction& f) {
    if (c.dimension() != f.dimension()) throw DomainError("convolve: dimension mismatch");
    const int K = std::min(c.max_degree(), f.max_degree());
    CoefficientField out(f.dimension(), K);
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] = c.data()[i] * f.coefficients().data()[i];
    return HarmonicFunction(out);
}

HarmonicFunction convolve(const HarmonicFunction& f, const HarmonicFunction& g) {
    return convolve(f.coefficients(), g);
}

HarmonicFunction fractional_derivative(const HarmonicFunction& f, double t) {
    if (!(t > 0.0)) throw DomainError("fractional_derivative: order must be positive");
    const std::vector<double> fac = fractional_factors(f.dimension(), t, f.max_degree());
    CoefficientField out = f.coefficients();
    for (int k = 0; k <= out.max_degree(); ++k)
        for (double& v : out.row(k)) v *= fac[static_cast<std::size_t>(k)];
    return HarmonicFunction(out);
}

HarmonicFunction convolved_poisson(const HarmonicFunction& g, const Vec& y) {
    require_unit(y, 1e-12);
    if (y.dim != g.dimension()) throw DomainError("convolved_poisson: dimension mismatch");
    const HarmonicBasis basis(g.dimension(), g.max_degree());
    const std::vector<double> yv = basis.evaluate_all(y);
    CoefficientField out = g.coefficients();
    for (std::size_t i = 0; i < out.size(); ++i) out.data()[i] *= yv[i];
    return HarmonicFunction(out);
}

BasisTable::BasisTable(int n, int K, const std::vector<Vec>& nodes)
    : n_(n), K_(K), nodes_(nodes.size()), width_(harmonic_count(n, K)) {
    values_.resize(nodes_ * width_);
    const HarmonicBasis basis(n, K);
    for (std::size_t i = 0; i < nodes_; ++i) basis.evaluate_all(nodes[i], values_.data() + i * width_);
}

std::vector<double> BasisTable::eval(const HarmonicFunction& f, double r) const {
    if (f.dimension() != n_) throw DomainError("BasisTable: dimension mismatch");
    if (f.max_degree() > K_) throw DomainError("BasisTable: function degree exceeds table degree");
    const std::vector<double> w = radial_scaled(f.coefficients(), r, f.coefficients().size());
    std::vector<double> out(nodes_);
    for (std::size_t i = 0; i < nodes_; ++i) out[i] = simd::dot(w, at(i).subspan(0, w.size()));
    return out;
}

} // namespace harmspace

#include "harmspace/quadrature.hpp"

namespace harmspace {

VerificationReport pairing_identity_check(const HarmonicFunction& f, const HarmonicFunction& g, double m, double r,
                                          double rho, const Vec& y, double tol) {
    if (!(m > -1.0)) throw DomainError("pairing_identity_check: need m > -1");
    if (f.dimension() != g.dimension()) throw DomainError("pairing_identity_check: dimension mismatch");
    const int n = f.dimension();
    const int K = std::min(f.max_degree(), g.max_degree());
    const HarmonicFunction gp = convolved_poisson(g, y);
    const HarmonicFunction lgp = fractional_derivative(gp, m + 1.0);

    // Coefficient series.
    const HarmonicBasis basis(n, K);
    const std::vector<double> yv = basis.evaluate_all(y);
    double series = 0.0, sk = 1.0;
    for (int k = 0; k <= K; ++k, sk *= r * rho) {
        const auto b = f.coefficients().row(k);
        const auto c = g.coefficients().row(k);
        const std::size_t off = harmonic_offset(n, k);
        double acc = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j) acc += b[j] * c[j] * yv[off + j];
        series += sk * acc;
    }

    // Products have degree <= f.K + g.K on the sphere.
    const SphereRule sphere = SphereRule::make(n, f.max_degree() + g.max_degree() + 2);
    const BasisTable table(n, std::max(f.max_degree(), g.max_degree()), sphere.nodes);
    auto sphere_pair = [&](const HarmonicFunction& a, double ra, const HarmonicFunction& b, double rb) {
        const std::vector<double> va = table.eval(a, ra), vb = table.eval(b, rb);
        std::vector<double> prod(va.size());
        for (std::size_t i = 0; i < va.size(); ++i) prod[i] = va[i] * vb[i];
        return simd::dot(prod, sphere.weights);
    };
    const double lhs = sphere_pair(gp, r, f, rho);

    const RadialRule radial(24, 8, m);
    const double rhs = 2.0 * integrate_radial(
                                 [&](double R) {
                                     return sphere_pair(lgp, r * R, f, rho * R) * std::pow(1.0 + R, m) *
                                            std::pow(R, n - 1);
                                 },
                                 m, radial);

    VerificationReport rep;
    rep.suite = "pairing";
    rep.config = {{"n", n}, {"K", K}, {"m", m}, {"r", r}, {"rho", rho}};
    const double scale = std::max(1.0, std::abs(series));
    rep.add("sphere-side", lhs, series, tol * scale, Check::abs);
    rep.add("radial-side", rhs, series, tol * scale, Check::abs);
    rep.add("sides-agree", lhs, rhs, tol * scale, Check::abs);
    rep.metadata = {{"series", series}, {"sphere_rule", sphere.descriptor()}, {"radial_rule", radial.descriptor()}};
    return rep;
}

} // namespace harmspace
