#include "harmspace/halfspace.hpp"

#include <cmath>
#include <numbers>

#include "harmspace/error.hpp"
#include "harmspace/kernels.hpp"
#include "harmspace/quadrature.hpp"
#include "harmspace/simd.hpp"

namespace harmspace {

HalfSpaceFunction HalfSpaceFunction::shifted_poisson(int n, double a, std::vector<double> c) {
    if (!(a > 0.0)) throw DomainError("shifted_poisson: shift must be positive");
    if (c.empty()) c.assign(static_cast<std::size_t>(n), 0.0);
    HalfSpaceFunction h;
    h.n = n;
    h.center = c;
    h.scale = a;
    h.decay = n;
    h.f = [n, a, c](const std::vector<double>& x, double t) {
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) d2 += (x[i] - c[i]) * (x[i] - c[i]);
        return poisson_halfspace_profile(n, d2, t + a);
    };
    return h;
}

HalfSpaceFunction HalfSpaceFunction::zero(int n) {
    HalfSpaceFunction h;
    h.n = n;
    h.center.assign(static_cast<std::size_t>(n), 0.0);
    h.decay = INFINITY;
    h.f = [](const std::vector<double>&, double) { return 0.0; };
    return h;
}

nlohmann::json HalfSpaceRule::descriptor() const {
    return {{"dimension", "halfspace"}, {"order", order}, {"h0", h0}, {"R", R}, {"n_psi", n_psi}};
}

double sphere_area(int n) { return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n); }

/// Tail beyond R of a radial density D(r) ~ X (r/R)^-a + Y (r/R)^-(a+1), with X, Y
/// matched to D(R) and D(R/2). The 1/r correction matters when a is close to 1.
double power_tail(double d_R, double d_half, double R, double a) {
    if (a > 50.0) return d_R * R / (a - 1.0);
    const double two_a = std::exp2(a);
    const double Y = (d_half - two_a * d_R) / two_a;
    const double X = d_R - Y;
    return X * R / (a - 1.0) + Y * R / a;
}

namespace {

struct AngularNode {
    std::vector<double> dir;  // horizontal unit-sphere part scaled by sin, length n
    double vertical;          // s / R
    double weight;            // includes the Jacobian and (s/R)^delta
};

std::vector<AngularNode> angular_rule(int n, double delta, const HalfSpaceRule& rule) {
    const double pi = std::numbers::pi;
    std::vector<AngularNode> out;
    // phi = angle from the boundary hyperplane, s = R sin(phi); weight sin(phi)^delta
    // handled exactly near phi = 0 through phi^delta and the smooth factor (sin phi / phi)^delta.
    auto half = graded_rule(0.0, 0.5 * pi, pi / 16.0, rule.order, delta);
    auto sin_over = [&](double p) { return p == 0.0 ? 1.0 : std::pow(std::sin(p) / p, delta); };
    if (n == 1) {
        for (std::size_t i = 0; i < half.size(); ++i) {
            const double p = half.x[i];
            const double w = half.w[i] * sin_over(p);
            out.push_back({{std::cos(p)}, std::sin(p), w});
            out.push_back({{-std::cos(p)}, std::sin(p), w});
        }
    } else if (n == 2) {
        for (std::size_t i = 0; i < half.size(); ++i) {
            const double p = half.x[i];
            const double w = half.w[i] * sin_over(p) * std::cos(p);  // area element cos(phi) dphi dpsi
            for (int j = 0; j < rule.n_psi; ++j) {
                const double psi = 2.0 * pi * (j + 0.5) / rule.n_psi;
                out.push_back({{std::cos(p) * std::cos(psi), std::cos(p) * std::sin(psi)}, std::sin(p),
                               w * 2.0 * pi / rule.n_psi});
            }
        }
    } else {
        throw DomainError("integrate_halfspace: n must be 1 or 2");
    }
    return out;
}

} // namespace

double integrate_halfspace(const std::function<double(const std::vector<double>&, double)>& F, int n,
                           const std::vector<double>& center, double delta, const HalfSpaceRule& rule,
                           double tail_exponent) {
    if (!(delta > -1.0)) throw DomainError("integrate_halfspace: weight exponent must exceed -1");
    if (!(tail_exponent > 1.0)) throw DomainError("integrate_halfspace: tail decay too slow for convergence");
    if (static_cast<int>(center.size()) != n) throw DomainError("integrate_halfspace: center dimension mismatch");
    const std::vector<AngularNode> ang = angular_rule(n, delta, rule);
    std::vector<double> y(static_cast<std::size_t>(n));
    std::vector<double> vals(ang.size()), wts(ang.size());
    for (std::size_t a = 0; a < ang.size(); ++a) wts[a] = ang[a].weight;
    auto shell = [&](double R) {
        for (std::size_t a = 0; a < ang.size(); ++a) {
            for (int i = 0; i < n; ++i) y[i] = center[i] + R * ang[a].dir[i];
            const double v = F(y, R * ang[a].vertical);
            if (!std::isfinite(v)) throw EvaluationError("non-finite half-space integrand", R);
            vals[a] = v;
        }
        // dy ds = R^n dR dOmega, s^delta = R^delta (sin phi)^delta.
        return simd::dot(vals, wts) * std::pow(R, n + delta);
    };
    const Rule1D radial = graded_rule(0.0, rule.R, rule.h0, rule.order);
    double body = radial.integrate(shell);
    const double d_half = shell(0.5 * rule.R);
    return body + power_tail(shell(rule.R), d_half, rule.R, tail_exponent);
}

std::vector<HalfSpaceNode> halfspace_shell(int n, const std::vector<double>& center, double delta,
                                           const HalfSpaceRule& rule, double R) {
    if (!(delta > -1.0)) throw DomainError("halfspace_shell: weight exponent must exceed -1");
    if (static_cast<int>(center.size()) != n) throw DomainError("halfspace_shell: center dimension mismatch");
    std::vector<HalfSpaceNode> out;
    const double scale = std::pow(R, n + delta);
    for (const AngularNode& a : angular_rule(n, delta, rule)) {
        std::vector<double> y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) y[i] = center[i] + R * a.dir[i];
        out.push_back({std::move(y), R * a.vertical, a.weight * scale});
    }
    return out;
}

std::vector<HalfSpaceNode> halfspace_nodes(int n, const std::vector<double>& center, double delta,
                                           const HalfSpaceRule& rule) {
    std::vector<HalfSpaceNode> out;
    const Rule1D radial = graded_rule(0.0, rule.R, rule.h0, rule.order);
    for (std::size_t k = 0; k < radial.size(); ++k) {
        for (HalfSpaceNode& node : halfspace_shell(n, center, delta, rule, radial.x[k])) {
            node.w *= radial.w[k];
            out.push_back(std::move(node));
        }
    }
    return out;
}

double integrate_radial_rn(const std::function<double(double)>& F, int n, double h0, double R, int order,
                           double tail_exponent) {
    if (!(tail_exponent > 1.0)) throw DomainError("integrate_radial_rn: tail decay too slow for convergence");
    auto g = [&](double rho) { return F(rho) * std::pow(rho, n - 1); };
    const Rule1D radial = graded_rule(0.0, R, h0, order);
    return sphere_area(n) * (radial.integrate(g) + power_tail(g(R), g(0.5 * R), R, tail_exponent));
}

} // namespace harmspace
