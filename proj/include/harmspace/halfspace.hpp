#pragma once

#include <functional>
#include <vector>

#include <json.hpp>

namespace harmspace {

/// A function on the upper half-space R^{n+1}_+ = {(x, t) : x in R^n, t > 0}.
/// `center` and `scale` locate where it varies; `decay` is an exponent g with
/// |f(x, t)| <= C |(x, t)|^-g for large |(x, t)|, used for tail handling.
struct HalfSpaceFunction {
    int n = 1;
    std::function<double(const std::vector<double>& x, double t)> f;
    std::vector<double> center;
    double scale = 1.0;
    double decay = 0.0;

    double operator()(const std::vector<double>& x, double t) const { return f(x, t); }

    /// P(x - c, t + a): harmonic, decays like |(x, t)|^-n.
    static HalfSpaceFunction shifted_poisson(int n, double a, std::vector<double> c = {});
    static HalfSpaceFunction zero(int n);
};

/// Polar rule about a boundary point (c, 0): radius graded from h0 with panels
/// doubling up to R, polar angle resolving the weight t^delta at the boundary.
struct HalfSpaceRule {
    int order = 16;
    double h0 = 0.125;
    double R = 1e4;
    int n_psi = 32;

    nlohmann::json descriptor() const;
};

/// int_{R^{n+1}_+} F(y, s) s^delta dy ds for n in {1, 2}, in polar coordinates about
/// (center, 0). The part beyond radius rule.R is added analytically assuming the
/// radial density (integrand integrated over the half-sphere of radius R, times R^n)
/// decays like R^-tail_exponent; tail_exponent must exceed 1.
double integrate_halfspace(const std::function<double(const std::vector<double>&, double)>& F, int n,
                           const std::vector<double>& center, double delta, const HalfSpaceRule& rule,
                           double tail_exponent);

/// A node of the polar rule; w includes the Jacobian and t^delta.
struct HalfSpaceNode {
    std::vector<double> x;
    double t;
    double w;
};

/// The nodes integrate_halfspace uses inside radius rule.R.
std::vector<HalfSpaceNode> halfspace_nodes(int n, const std::vector<double>& center, double delta,
                                           const HalfSpaceRule& rule);

/// Nodes on the half-sphere of radius R about (center, 0) whose weighted sum is the
/// radial density at R (integrand integrated over the half-sphere, times R^n).
std::vector<HalfSpaceNode> halfspace_shell(int n, const std::vector<double>& center, double delta,
                                           const HalfSpaceRule& rule, double R);

/// Tail beyond R of a radial density decaying like r^-a, matched to its values at R and R/2.
double power_tail(double d_R, double d_half, double R, double a);

/// int_{R^n} F(|x|) dx for radial F, with the same radius grading and tail model.
double integrate_radial_rn(const std::function<double(double)>& F, int n, double h0, double R, int order,
                           double tail_exponent);

/// Lebesgue measure of S^{n-1}.
double sphere_area(int n);

} // namespace harmspace
