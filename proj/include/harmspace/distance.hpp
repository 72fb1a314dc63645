#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "harmspace/ball_function.hpp"
#include "harmspace/halfspace.hpp"
#include "harmspace/report.hpp"

namespace harmspace {

/// Exponents of the ball distance functional: t = (alpha + n) / p and an integer
/// kernel order beta > max(t - 1, alpha / p). The decomposition and t2 are implemented for n = 2.
struct DistanceParams {
    int n = 2;
    double p = 2.0;
    double alpha = 1.8;
    int beta = 1;

    double t() const { return (alpha + n) / p; }
    /// DomainError on violated constraints, UnsupportedConfiguration for n != 2.
    void validate() const;
    nlohmann::json to_json() const;
    static DistanceParams from_json(const nlohmann::json& j);
};

/// U = {x : |f(x)| (1 - |x|)^t >= eps} in the disc, through its indicator and ray slices.
class SublevelSet {
public:
    SublevelSet(BallFunction f, double eps, double t);

    const BallFunction& function() const { return f_; }
    double eps() const { return eps_; }
    double t() const { return t_; }

    double weighted(double r, double theta) const;
    bool indicator(double r, double theta) const { return weighted(r, theta) >= eps_; }
    bool indicator(const Vec& x) const;

    /// Radius intervals [a, b] where the ray at angle theta lies in U, located by
    /// sampling and bisection. b = 1 when U reaches the circle along the ray.
    std::vector<std::pair<double, double>> ray(double theta) const;

private:
    BallFunction f_;
    double eps_;
    double t_;
};

/// Quadrature settings for the distance functionals.
struct DistanceRules {
    int order = 16;             // panel order of the adapted rules
    int t2_radial_order = 10;   // fixed-node t2 rule
    int t2_x_depth = 6;
    int t2_y_depth = 10;
    int t2_angles = 128;
    int fit_j0 = 4;             // inner-growth fit at 1 - |x| = 2^-j, j in [fit_j0, fit_j1]
    int fit_j1 = 14;
    int fit_rays = 4;
    double panel_width = 4.0;   // decomposition angular panels, in units of the local depth of U
    double coefficient_tol = 1e-13;
    int max_terms = 400000;
    int test_points = 12;       // additivity checks per decomposition

    nlohmann::json to_json() const;
    static DistanceRules from_json(const nlohmann::json& j);
};

/// Which part of the disc an adapted integral covers.
enum class Region { all, inside, outside };

/// int over the region of g(rho, theta) (1 - rho)^a rho drho dtheta / (2 pi), with a rule
/// adapted to the point (r, theta_x): angles graded toward theta_x and broken at `breaks`,
/// angular panels no wider than max_width, radii graded toward 1, and each ray split where
/// it crosses the boundary of U. U may be null for Region::all.
double integrate_adapted(const SublevelSet* U, Region region, double r, double theta_x, double a,
                         const std::function<double(double rho, double theta)>& g, int order,
                         const std::vector<double>& breaks = {}, double max_width = 0.785);

/// Angular scale on which f varies: half the zonal concentration gap, or pi / (degree + 1).
double feature_width(const BallFunction& f);

/// int_B Q_beta(x, y) f(y) (1 - |y|^2)^beta dy for n in {2, 3}, with the normalized measure
/// r^{n-1} dr dsigma. Equals f(x) for harmonic f.
double representation_integral(const BallFunction& f, int beta, const Vec& x, int order = 16, int n_phi = 24);

/// The t2 double integral at one eps. value is computed on fixed nodes, so it is
/// non-increasing in eps exactly; `finite` is the exponent verdict p e_inner + alpha > -1.
struct T2Value {
    double eps = 0.0;
    double value = 0.0;
    bool finite = true;
    double inner_exponent = 0.0;
    bool empty = false;  // U has no fixed node

    nlohmann::json to_json() const;
};

std::vector<T2Value> t2_integrals(const BallFunction& f, const std::vector<double>& eps, const DistanceParams& params,
                                  const DistanceRules& rules = {});
T2Value t2_integral(const BallFunction& f, double eps, const DistanceParams& params, const DistanceRules& rules = {});

/// f = f1 + f2 with f1 the representation integral over B \ U and f2 over U. U must stay
/// inside a disc of radius < 1, which holds for bounded f; f2 is then a convergent series
/// Re sum_k C_k z^k.
class Decomposition {
public:
    Decomposition(const BallFunction& f, double eps, const DistanceParams& params, const DistanceRules& rules);

    const SublevelSet& set() const { return U_; }
    bool empty() const { return empty_; }
    /// Quadrature adapted to x over B \ U.
    double f1(const Vec& x) const;
    /// Series evaluation.
    double f2(const Vec& x) const;
    /// Quadrature adapted to x over U.
    double f2_direct(const Vec& x) const;
    double f(const Vec& x) const { return U_.function().eval(x); }

    const std::vector<std::complex<double>>& coefficients() const { return C_; }
    std::size_t node_count() const { return nodes_; }
    /// Smallest 1 - |y| over U.
    double depth() const { return depth_; }
    /// Angles where the number of intervals on a ray of U changes.
    const std::vector<double>& edges() const { return edges_; }

    BallFunction f2_function() const;
    /// f - f2.
    BallFunction remainder_function() const;
    /// ||f2||_{A^p_alpha}; p = 2 by Parseval, other p by quadrature.
    double f2_norm(double p, double alpha) const;
    /// ||f - f2||_{A^inf_t}.
    double remainder_norm(double t) const;

private:
    SublevelSet U_;
    DistanceParams params_;
    DistanceRules rules_;
    std::vector<std::complex<double>> C_;
    std::vector<double> edges_;
    std::size_t nodes_ = 0;
    double depth_ = 1.0;
    bool empty_ = true;
};

Decomposition decompose(const BallFunction& f, double eps, const DistanceParams& params,
                        const DistanceRules& rules = {});

struct DistanceLevel {
    T2Value t2;
    double remainder_norm = NAN;  // ||f - f2||_{A^inf_t}
    double f2_norm = NAN;         // ||f2||_{A^p_alpha}
    double additivity = NAN;      // max |f1 + f2 - f| over test points
    double series_vs_direct = NAN;  // max |f2 - f2_direct| over test points
};

struct DistanceOptions {
    double additivity_tol = 1e-6;
    double slope_tol = 0.1;
    bool decompose = true;
};

/// Per-eps t2 verdicts and decomposition byproducts. t2 is the midpoint of the bracket
/// between the largest eps flagged infinite and the smallest flagged finite.
struct DistanceEstimate {
    DistanceParams params;
    std::vector<DistanceLevel> levels;  // eps ascending
    double t2 = NAN;
    double bracket_low = 0.0;
    double bracket_high = NAN;
    double remainder_slope = NAN;
    VerificationReport report;

    nlohmann::json to_json() const;
    /// Columns: eps, value, verdict, inner_exponent, remainder_norm, f2_norm, additivity.
    std::string to_csv() const;
};

DistanceEstimate distance_bound_check(const BallFunction& f, const DistanceParams& params, std::vector<double> eps_grid,
                                      const DistanceRules& rules = {}, const DistanceOptions& opt = {});

/// Re (1 - z conj(e))^-gamma in the disc, zonal about the unit vector e. Lies in A^inf_gamma
/// with norm 1 but in no A^p_alpha with (alpha + 2) / p = gamma.
BallFunction boundary_kernel_function(double gamma, const Vec& e);

// Half-space.

/// lambda = (alpha + n + 1) / p and an integer m > max(lambda - 1, alpha / p).
struct HalfSpaceDistanceParams {
    int n = 1;
    double p = 4.0;
    double alpha = 0.0;
    int m = 1;

    double lambda() const { return (alpha + n + 1) / p; }
    void validate() const;
    nlohmann::json to_json() const;
};

struct S2Rules {
    HalfSpaceRule rule{8, 0.125, 1e3, 8};
    int fit_j0 = 4;
    int fit_j1 = 14;

    nlohmann::json to_json() const;
};

/// s2 body integral over |(x, t) - (c, 0)| <= R on fixed nodes (non-increasing in eps),
/// with the verdict from the inner growth toward t = 0 and the decay of the outer density at R.
struct S2Value {
    double eps = 0.0;
    double value = 0.0;
    double tail = 0.0;
    bool finite = true;
    double boundary_exponent = 0.0;
    double decay_exponent = INFINITY;

    nlohmann::json to_json() const;
};

std::vector<S2Value> s2_integrals(const HalfSpaceFunction& f, const std::vector<double>& eps,
                                  const HalfSpaceDistanceParams& params, const S2Rules& rules = {});
S2Value s2_integral(const HalfSpaceFunction& f, double eps, const HalfSpaceDistanceParams& params,
                    const S2Rules& rules = {});

/// int f(w) Q_m(z, w) s^m dw over the half-space; equals f(z) for suitable harmonic f.
double halfspace_representation(const HalfSpaceFunction& f, int m, const HalfSpacePoint& z, const HalfSpaceRule& rule);

} // namespace harmspace
