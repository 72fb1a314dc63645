#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "harmspace/ball_function.hpp"
#include "harmspace/halfspace.hpp"
#include "harmspace/harmonic_fn.hpp"
#include "harmspace/report.hpp"

namespace harmspace {

enum class Family { A, H, B, Ainf, Atilde, Atilde_inf };

/// One of A^p_alpha, H^p_alpha, B^{p,q}_alpha, A^inf_alpha (ball) or the half-space
/// spaces A~^p_alpha, A~^inf_alpha. p = q = INFINITY selects sup norms.
struct SpaceSpec {
    Family family = Family::A;
    double p = 2.0;
    double q = 1.0;
    double alpha = 0.0;

    static SpaceSpec A(double p, double alpha) { return {Family::A, p, 1.0, alpha}; }
    static SpaceSpec H(double p, double alpha) { return {Family::H, p, 1.0, alpha}; }
    static SpaceSpec B(double p, double q, double alpha) { return {Family::B, p, q, alpha}; }
    static SpaceSpec Ainf(double alpha) { return {Family::Ainf, INFINITY, 1.0, alpha}; }
    static SpaceSpec Atilde(double p, double alpha) { return {Family::Atilde, p, 1.0, alpha}; }
    static SpaceSpec Atilde_inf(double alpha) { return {Family::Atilde_inf, INFINITY, 1.0, alpha}; }

    /// Throws ConfigError naming the violated parameter constraint.
    void validate() const;
    std::string label() const;
    nlohmann::json to_json() const;
    static SpaceSpec from_json(const nlohmann::json& j);
};

struct NormOptions {
    int radial_order = 16;
    int radial_depth = 0;    // 0: chosen from the function's concentration
    int sphere_degree = 0;   // 0: chosen from the expansion degree and exponent
    int zonal_order = 16;
    bool estimate_error = false;
};

struct NormResult {
    double value = 0.0;
    double est_error = 0.0;
    nlohmann::json rule = nlohmann::json::object();

    nlohmann::json to_json() const;
};

/// M_p(f, r) = (int_S |f(r x')|^p dsigma)^(1/p); p = INFINITY gives the refined sup.
/// r = 1 is accepted for functions that extend to the closed ball.
double radial_mean(const BallFunction& f, double p, double r, const NormOptions& opt = {});
double radial_mean(const HarmonicFunction& f, double p, double r, const NormOptions& opt = {});

NormResult space_norm(const BallFunction& f, const SpaceSpec& spec, const NormOptions& opt = {});
NormResult space_norm(const HarmonicFunction& f, const SpaceSpec& spec, const NormOptions& opt = {});

/// sup_x |f(x)| (1 - |x|)^alpha by a joint search in (r, x').
double weighted_sup_joint(const BallFunction& f, double alpha, const NormOptions& opt = {});
/// sup_r (1 - r)^alpha M_inf(f, r) by a search in r over refined spherical maxima.
double weighted_sup_nested(const BallFunction& f, double alpha, const NormOptions& opt = {});

NormResult halfspace_norm(const HalfSpaceFunction& f, const SpaceSpec& spec, const HalfSpaceRule& rule = {});

/// sup |f(x)| (1 - |x|)^((alpha + n)/p) / ||f||_{A^p_alpha}.
double embedding_ratio(const BallFunction& f, double p, double alpha, const NormOptions& opt = {});

/// sup |f(x, t)| t^((alpha + n + 1)/p) / ||f||_{A~^p_alpha}.
double embedding_ratio_halfspace(const HalfSpaceFunction& f, double p, double alpha, const HalfSpaceRule& rule = {});

struct EmbeddingMember {
    std::string label;
    BallFunction f;
    /// 1 - |y| for kernel members, negative otherwise.
    double boundary_distance = -1.0;
};

/// Embedding ratios over a family; passes when every ratio is <= bound and the
/// ratios of kernel members show no growth as |y| -> 1 (fitted slope in
/// 1 - |y| at least -slope_tol).
VerificationReport embedding_check(const std::vector<EmbeddingMember>& family, double p, double alpha, double bound,
                                   double slope_tol = 0.05, const NormOptions& opt = {});

} // namespace harmspace
