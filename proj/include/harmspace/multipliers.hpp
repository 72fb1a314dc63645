#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "harmspace/harmonic_fn.hpp"
#include "harmspace/norms.hpp"
#include "harmspace/report.hpp"

namespace harmspace {

/// The four source/target combinations with a known characterization:
///   bpbp:  B^{p,1}_a -> B^{q,1}_b, 1 < p <= q,   N_1
///   main1: B^{p,1}_a -> B^{q,1}_b, p <= 1, p <= q, N_1
///   bh:    B^{p,1}_a -> H^s_b,     p <= 1, s >= 1, N_s
///   haha:  H^1_a    -> H^s_b,      b > 0, s >= 1,  N_s
enum class MultiplierShape { bpbp, main1, bh, haha };

std::string shape_name(MultiplierShape s);

struct MultiplierProblem {
    SpaceSpec source;
    SpaceSpec target;
    CoefficientField c;
    double m = 1.0;

    /// Throws UnsupportedConfiguration outside the four shapes, ConfigError when m <= alpha - 1.
    MultiplierShape shape() const;
    /// Exponent s of the functional N_s for this shape.
    double functional_exponent() const;
    nlohmann::json to_json() const;
};

/// rho_j = 1 - 2^-j for j = 1..j_max together with rho = 0; y' over sphere nodes.
struct RhoGrid {
    int j_max = 10;
    /// Sphere rule degree for the x' integral; 0 picks from the degree bound.
    int sphere_degree = 0;
    /// Rule degree whose nodes serve as the y' sample set; 0 picks 2K + 8.
    int y_degree = 0;
    std::vector<double> rhos() const;
    nlohmann::json to_json() const;
};

/// g_c with b_k^j(g_c) = c_k^j.
HarmonicFunction associated_g(const CoefficientField& c);

/// Grid sup of (1-rho)^{m+1-alpha+beta} ( int_S |Lambda_{m+1}(g * P_x')(rho y')|^s dx' )^{1/s}.
double ns_functional(const HarmonicFunction& g, double s, double m, double alpha, double beta,
                     const RhoGrid& grid = {});

/// Grid sup of (1-rho)^t |Lambda_{m+1}(g * P_x')(rho y')| over rho, x', y'.
double mt_functional(const HarmonicFunction& g, double m, double t, const RhoGrid& grid = {});

/// c * f.
HarmonicFunction apply_multiplier(const MultiplierProblem& prob, const HarmonicFunction& f);

/// Seeded test functions: random fields with profiles (k+1)^-a and e^-bk, plus truncated f_{m,y}.
struct TestFamily {
    std::uint64_t seed = 1;
    std::vector<std::string> labels;
    std::vector<HarmonicFunction> members;
    nlohmann::json to_json() const;
};
TestFamily make_test_family(int n, int K, double m, std::uint64_t seed);

/// Seeded multiplier sequence c_k^j = phi(k) (1 + u_k^j / 2), u uniform in (-1, 1),
/// phi drawn from {(k+1)^-a, e^-bk}.
struct MultiplierSequence {
    std::string profile;
    CoefficientField c;
};
MultiplierSequence make_multiplier_sequence(int n, int K, std::uint64_t seed);

struct MultiplierOptions {
    RhoGrid grid;
    /// Refined grid for the stability check.
    RhoGrid refined{12, 0, 0};
    /// Sufficiency bound R <= C * N.
    double C_sufficiency = 1.0;
    /// Bound on the necessity probe values.
    double C_necessity = 1.0;
    /// Constants must agree within this factor across families and grids.
    double stability_factor = 2.0;
    double slope_tol = 0.05;
    std::vector<double> probe_radii{0.5, 0.7, 0.9, 0.95};
    NormOptions norm;
};

struct MultiplierCertificate {
    MultiplierProblem problem;
    double N = 0.0;
    double N_refined = 0.0;
    nlohmann::json grid;
    /// Operator ratios ||c*f||_Y / ||f||_X, one vector per family.
    std::vector<std::vector<double>> ratios;
    std::vector<std::uint64_t> family_seeds;
    /// max ratio per family
    std::vector<double> R;
    /// R / N per family.
    std::vector<double> C;
    /// Necessity probe: |y| and (1-|y|)^{m+1-a+b} I_{y'}(|y|^2) ||f_y||_X / ||h_y||_Y.
    std::vector<double> probe_radii;
    std::vector<double> probe_values;
    VerificationReport report;
    bool verdict() const { return report.passed(); }
    nlohmann::json to_json() const;
};

/// Sufficiency and necessity experiments for one multiplier over the given families.
MultiplierCertificate verify_multiplier_theorem(const MultiplierProblem& prob, const std::vector<TestFamily>& families,
                                                const MultiplierOptions& opt = {});

/// Checks ||c * f||_{H^r_beta} <= C ||g||_{H^p_gamma} ||f||_{H^q_alpha} over the family,
/// c the coefficients of g. Requires 1/q + 1/p = 1 + 1/r and alpha + gamma = beta.
VerificationReport verify_young_proposition(const HarmonicFunction& g, double p, double q, double r, double alpha,
                                            double beta, double gamma, const std::vector<HarmonicFunction>& family,
                                            double C = 1.0, const NormOptions& opt = {});

} // namespace harmspace
