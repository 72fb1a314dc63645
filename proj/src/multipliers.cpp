#include "harmspace/multipliers.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "harmspace/ball_function.hpp"
#include "harmspace/error.hpp"
#include "harmspace/kernels.hpp"
#include "harmspace/quadrature.hpp"
#include "harmspace/simd.hpp"
#include "harmspace/special.hpp"
#include "harmspace/spharm.hpp"

namespace harmspace {

std::string shape_name(MultiplierShape s) {
    switch (s) {
    case MultiplierShape::bpbp: return "bpbp";
    case MultiplierShape::main1: return "main1";
    case MultiplierShape::bh: return "bh";
    case MultiplierShape::haha: return "haha";
    }
    return "?";
}

MultiplierShape MultiplierProblem::shape() const {
    source.validate();
    target.validate();
    const auto unsupported = [&](const char* why) {
        return UnsupportedConfiguration(std::string("multiplier problem ") + source.label() + " -> " + target.label() +
                                        ": " + why);
    };
    MultiplierShape s;
    if (source.family == Family::B && source.q == 1.0) {
        if (target.family == Family::B && target.q == 1.0) {
            if (!(target.p >= source.p)) throw unsupported("needs p <= q");
            s = source.p > 1.0 ? MultiplierShape::bpbp : MultiplierShape::main1;
        } else if (target.family == Family::H && source.p <= 1.0) {
            if (!(target.p >= 1.0)) throw unsupported("needs s >= 1");
            s = MultiplierShape::bh;
        } else {
            throw unsupported("no characterization for this target");
        }
    } else if (source.family == Family::H && source.p == 1.0 && target.family == Family::H) {
        if (!(target.alpha > 0.0)) throw unsupported("needs beta > 0");
        if (!(target.p >= 1.0)) throw unsupported("needs target exponent >= 1");
        s = MultiplierShape::haha;
    } else {
        throw unsupported("no characterization for this source");
    }
    if (!(m > source.alpha - 1.0)) throw ConfigError("multiplier problem: m must exceed alpha - 1");
    if (c.dimension() != 2 && c.dimension() != 3) throw ConfigError("multiplier problem: n must be 2 or 3");
    return s;
}

double MultiplierProblem::functional_exponent() const {
    const MultiplierShape s = shape();
    return s == MultiplierShape::bpbp || s == MultiplierShape::main1 ? 1.0 : target.p;
}

nlohmann::json MultiplierProblem::to_json() const {
    return {{"source", source.to_json()}, {"target", target.to_json()}, {"m", m}, {"c", c.to_json()}};
}

std::vector<double> RhoGrid::rhos() const {
    std::vector<double> r{0.0};
    for (int j = 1; j <= j_max; ++j) r.push_back(1.0 - std::exp2(-j));
    return r;
}

nlohmann::json RhoGrid::to_json() const {
    return {{"j_max", j_max}, {"sphere_degree", sphere_degree}, {"y_degree", y_degree}};
}

HarmonicFunction associated_g(const CoefficientField& c) { return HarmonicFunction(c); }

HarmonicFunction apply_multiplier(const MultiplierProblem& prob, const HarmonicFunction& f) {
    return convolve(prob.c, f);
}

namespace {

/// Lambda_{m+1}(g * P_{y'}) for y' over a node set, evaluated on a sphere rule.
class ConvolvedField {
public:
    ConvolvedField(const HarmonicFunction& g, double m, double s, const RhoGrid& grid)
        : n_(g.dimension()), K_(g.max_degree()) {
        int deg = grid.sphere_degree;
        if (deg <= 0) {
            const bool even = std::isfinite(s) && s == std::floor(s) && static_cast<int>(s) % 2 == 0 && s <= 8;
            deg = even ? static_cast<int>(s) * K_ + 2 : 3 * K_ + 16;
        }
        xrule_ = SphereRule::make(n_, deg);
        table_ = std::make_unique<BasisTable>(n_, K_, xrule_.nodes);
        const int ydeg = grid.y_degree > 0 ? grid.y_degree : 2 * K_ + 8;
        ynodes_ = SphereRule::make(n_, ydeg).nodes;
        const std::vector<double> lam = fractional_factors(n_, m + 1.0, K_);
        a_ = g.coefficients().data();
        for (int k = 0; k <= K_; ++k) {
            const std::size_t off = harmonic_offset(n_, k);
            for (int j = 0; j < dim_harmonics(n_, k); ++j) a_[off + j] *= lam[static_cast<std::size_t>(k)];
        }
        const HarmonicBasis basis(n_, K_);
        yb_.resize(ynodes_.size());
        for (std::size_t i = 0; i < ynodes_.size(); ++i) yb_[i] = basis.evaluate_all(ynodes_[i]);
    }

    std::size_t y_count() const { return ynodes_.size(); }
    const Vec& y_node(std::size_t i) const { return ynodes_[i]; }

    /// Values of Lambda_{m+1}(g * P_{y'})(rho x'_i) on the x rule.
    std::vector<double> values(const std::vector<double>& ybasis, double rho) const {
        std::vector<double> v(a_.size());
        double rk = 1.0;
        for (int k = 0; k <= K_; ++k, rk *= rho) {
            const std::size_t off = harmonic_offset(n_, k);
            for (int j = 0; j < dim_harmonics(n_, k); ++j) v[off + j] = rk * a_[off + j] * ybasis[off + j];
        }
        std::vector<double> out(xrule_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = simd::dot(table_->at(i), v);
        return out;
    }

    double mean(std::size_t yi, double rho, double s) const { return mean_at(yb_[yi], rho, s); }

    double mean_at(const std::vector<double>& ybasis, double rho, double s) const {
        std::vector<double> v = values(ybasis, rho);
        if (std::isinf(s)) {
            double mx = 0.0;
            for (double x : v) mx = std::max(mx, std::abs(x));
            return mx;
        }
        for (double& x : v) x = s == 1.0 ? std::abs(x) : std::pow(std::abs(x), s);
        const double I = simd::dot(v, xrule_.weights);
        return s == 1.0 ? I : std::pow(I, 1.0 / s);
    }

    const std::vector<double>& ybasis(std::size_t i) const { return yb_[i]; }

    nlohmann::json descriptor() const {
        return {{"x_rule", xrule_.descriptor()}, {"y_nodes", ynodes_.size()}};
    }

private:
    int n_, K_;
    SphereRule xrule_;
    std::unique_ptr<BasisTable> table_;
    std::vector<Vec> ynodes_;
    std::vector<std::vector<double>> yb_;
    std::vector<double> a_;
};

struct NsResult {
    double value = 0.0;
    double rho = 0.0;
    std::size_t y = 0;
};

NsResult ns_search(const ConvolvedField& F, double s, double w, const RhoGrid& grid) {
    NsResult best;
    for (double rho : grid.rhos())
        for (std::size_t i = 0; i < F.y_count(); ++i) {
            const double v = std::pow(1.0 - rho, w) * F.mean(i, rho, s);
            if (v > best.value) best = {v, rho, i};
        }
    return best;
}

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

} // namespace

double ns_functional(const HarmonicFunction& g, double s, double m, double alpha, double beta, const RhoGrid& grid) {
    if (!(s >= 1.0)) throw DomainError("ns_functional: need s >= 1");
    if (!(m > alpha - 1.0)) throw DomainError("ns_functional: need m > alpha - 1");
    const ConvolvedField F(g, m, s, grid);
    return ns_search(F, s, m + 1.0 - alpha + beta, grid).value;
}

double mt_functional(const HarmonicFunction& g, double m, double t, const RhoGrid& grid) {
    const ConvolvedField F(g, m, INFINITY, grid);
    double best = 0.0;
    for (double rho : grid.rhos())
        for (std::size_t i = 0; i < F.y_count(); ++i)
            best = std::max(best, std::pow(1.0 - rho, t) * F.mean(i, rho, INFINITY));
    return best;
}

nlohmann::json TestFamily::to_json() const { return {{"seed", seed}, {"members", labels}}; }

TestFamily make_test_family(int n, int K, double m, std::uint64_t seed) {
    TestFamily fam;
    fam.seed = seed;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto field = [&](const std::function<double(int)>& phi) {
        CoefficientField c(n, K);
        for (int k = 0; k <= K; ++k)
            for (double& v : c.row(k)) v = phi(k) * gauss(rng);
        return HarmonicFunction(c);
    };
    for (double a : {0.5, 1.5, 3.0}) {
        fam.labels.push_back("power-" + std::to_string(a).substr(0, 3));
        fam.members.push_back(field([a](int k) { return std::pow(k + 1.0, -a); }));
    }
    for (double b : {0.1, 0.4}) {
        fam.labels.push_back("exp-" + std::to_string(b).substr(0, 3));
        fam.members.push_back(field([b](int k) { return std::exp(-b * k); }));
    }
    for (double r : {0.6, 0.9}) {
        Vec d = n == 2 ? Vec(gauss(rng), gauss(rng)) : Vec(gauss(rng), gauss(rng), gauss(rng));
        fam.labels.push_back("kernel-" + std::to_string(r).substr(0, 3));
        fam.members.push_back(extremal_fmy(m, BallPoint(r, d.normalized()), K));
    }
    return fam;
}

MultiplierSequence make_multiplier_sequence(int n, int K, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::uniform_int_distribution<int> pick(0, 5);
    static const double powers[] = {1.0, 2.0, 3.0};
    static const double rates[] = {0.1, 0.2, 0.5};
    const int which = pick(rng);
    MultiplierSequence out;
    std::function<double(int)> phi;
    if (which < 3) {
        const double a = powers[which];
        out.profile = "(k+1)^-" + std::to_string(static_cast<int>(a));
        phi = [a](int k) { return std::pow(k + 1.0, -a); };
    } else {
        const double b = rates[which - 3];
        out.profile = "exp(-" + std::to_string(b).substr(0, 3) + "k)";
        phi = [b](int k) { return std::exp(-b * k); };
    }
    out.c = CoefficientField(n, K);
    for (int k = 0; k <= K; ++k)
        for (double& v : out.c.row(k)) v = phi(k) * (1.0 + 0.5 * U(rng));
    return out;
}

nlohmann::json MultiplierCertificate::to_json() const {
    nlohmann::json j;
    j["shape"] = shape_name(problem.shape());
    j["source"] = problem.source.to_json();
    j["target"] = problem.target.to_json();
    j["m"] = problem.m;
    j["N"] = json_number(N);
    j["N_refined"] = json_number(N_refined);
    j["grid"] = grid;
    j["family_seeds"] = family_seeds;
    nlohmann::json rs = nlohmann::json::array();
    for (const auto& v : ratios) {
        nlohmann::json a = nlohmann::json::array();
        for (double x : v) a.push_back(json_number(x));
        rs.push_back(a);
    }
    j["ratios"] = rs;
    nlohmann::json Rj = nlohmann::json::array(), Cj = nlohmann::json::array(), pv = nlohmann::json::array();
    for (double x : R) Rj.push_back(json_number(x));
    for (double x : C) Cj.push_back(json_number(x));
    for (double x : probe_values) pv.push_back(json_number(x));
    j["R"] = Rj;
    j["C"] = Cj;
    j["probe_radii"] = probe_radii;
    j["probe_values"] = pv;
    j["verdict"] = verdict() ? "bounded" : "fail";
    return j;
}

MultiplierCertificate verify_multiplier_theorem(const MultiplierProblem& prob, const std::vector<TestFamily>& families,
                                                const MultiplierOptions& opt) {
    const MultiplierShape shape = prob.shape();
    if (families.empty()) throw ConfigError("verify_multiplier_theorem: empty test family");
    MultiplierCertificate cert;
    cert.problem = prob;
    VerificationReport& rep = cert.report;
    rep.suite = "multiplier-" + shape_name(shape);
    rep.config = prob.to_json();

    const double s = prob.functional_exponent();
    const double alpha = prob.source.alpha, beta = prob.target.alpha;
    const double w = prob.m + 1.0 - alpha + beta;
    const HarmonicFunction g = associated_g(prob.c);
    const ConvolvedField F(g, prob.m, s, opt.grid);
    const NsResult ns = ns_search(F, s, w, opt.grid);
    cert.N = ns.value;
    cert.N_refined = ns_search(ConvolvedField(g, prob.m, s, opt.refined), s, w, opt.refined).value;
    cert.grid = {{"coarse", opt.grid.to_json()}, {"refined", opt.refined.to_json()}, {"field", F.descriptor()},
                 {"argmax_rho", ns.rho}};

    for (const auto& fam : families) {
        cert.family_seeds.push_back(fam.seed);
        std::vector<double> r;
        for (const auto& f : fam.members) {
            const double nx = space_norm(f, prob.source, opt.norm).value;
            const double ny = space_norm(apply_multiplier(prob, f), prob.target, opt.norm).value;
            r.push_back(ny / nx);
        }
        cert.R.push_back(*std::max_element(r.begin(), r.end()));
        cert.ratios.push_back(std::move(r));
    }

    if (cert.N == 0.0) {
        // Zero multiplier: every image vanishes.
        rep.add("N", cert.N, 0.0, 0.0, Check::flag);
        for (std::size_t i = 0; i < cert.R.size(); ++i)
            rep.add("R/family-" + std::to_string(families[i].seed), cert.R[i], 0.0, 0.0, Check::flag);
        return cert;
    }

    rep.add("N-finite", std::isfinite(cert.N) ? 1.0 : 0.0, 1.0, 0.0, Check::flag, {{"N", json_number(cert.N)}});
    const double grid_ratio = std::max(cert.N_refined / cert.N, cert.N / cert.N_refined);
    rep.add("grid-stability", grid_ratio, opt.stability_factor, 0.0, Check::le,
            {{"N", cert.N}, {"N_refined", cert.N_refined}});
    for (std::size_t i = 0; i < cert.R.size(); ++i) {
        cert.C.push_back(cert.R[i] / cert.N);
        rep.add("sufficiency/family-" + std::to_string(families[i].seed), cert.C.back(), opt.C_sufficiency, 0.0,
                Check::le, {{"R", cert.R[i]}, {"N", cert.N}});
        // The same constant must also cover the refined grid's N.
        rep.add("sufficiency-refined/family-" + std::to_string(families[i].seed), cert.R[i] / cert.N_refined,
                opt.C_sufficiency, 0.0, Check::le);
    }
    if (cert.C.size() >= 2) {
        const auto [lo, hi] = std::minmax_element(cert.C.begin(), cert.C.end());
        rep.add("family-stability", *hi / *lo, opt.stability_factor, 0.0, Check::le);
    }

    // Necessity probe along y = |y| y', y' the direction where N is attained.
    const Vec yd = F.y_node(ns.y);
    const int n = prob.c.dimension(), K = prob.c.max_degree();
    for (double r : opt.probe_radii) {
        const BallPoint y(r, yd);
        const double I = F.mean(ns.y, r * r, s);
        const HarmonicFunction hy = apply_multiplier(prob, extremal_fmy(prob.m, y, K));
        const double nf = space_norm(kernel_function(prob.m, y), prob.source, opt.norm).value;
        const double nh = space_norm(hy, prob.target, opt.norm).value;
        const double v = std::pow(1.0 - r, w) * I * nf / nh;
        cert.probe_radii.push_back(r);
        cert.probe_values.push_back(v);
        rep.add("necessity/|y|=" + std::to_string(r).substr(0, 4), v, opt.C_necessity, 0.0, Check::le,
                {{"I", I}, {"norm_f_y", nf}, {"norm_h_y", nh}});
        // h_y(x) = 2 Lambda_{m+1}(g * P_{y'})(|y| x): two evaluation paths.
        const SphereRule probe_rule = SphereRule::make(n, 6);
        double dev = 0.0, scale = 0.0;
        const HarmonicFunction Lg = convolved_poisson(fractional_derivative(g, prob.m + 1.0), yd);
        for (const Vec& x : probe_rule.nodes) {
            const double a = hy.eval(BallPoint(0.5, x));
            const double b = 2.0 * Lg.eval(BallPoint(0.5 * r, x));
            dev = std::max(dev, std::abs(a - b));
            scale = std::max(scale, std::abs(a));
        }
        rep.add("h_y-two-paths/|y|=" + std::to_string(r).substr(0, 4), dev, 0.0, 1e-10 * std::max(1.0, scale),
                Check::abs);
    }
    if (cert.probe_radii.size() >= 2) {
        std::vector<double> d;
        for (double r : cert.probe_radii) d.push_back(1.0 - r);
        const DecayFit fit = fit_power_law(d, cert.probe_values);
        rep.add("necessity-slope", fit.slope, -opt.slope_tol, 0.0, Check::ge, fit.to_json());
    }
    return cert;
}

VerificationReport verify_young_proposition(const HarmonicFunction& g, double p, double q, double r, double alpha,
                                            double beta, double gamma, const std::vector<HarmonicFunction>& family,
                                            double C, const NormOptions& opt) {
    for (double e : {p, q, r})
        if (!(e >= 1.0)) throw DomainError("young: exponents must lie in [1, inf]");
    if (std::abs(inv(q) + inv(p) - 1.0 - inv(r)) > 1e-12) throw DomainError("young: need 1/q + 1/p = 1 + 1/r");
    if (std::abs(alpha + gamma - beta) > 1e-12) throw DomainError("young: need alpha + gamma = beta");
    if (alpha < 0.0 || beta < 0.0 || gamma < 0.0) throw DomainError("young: weights must be >= 0");
    VerificationReport rep;
    rep.suite = "young";
    rep.config = {{"p", json_number(p)}, {"q", json_number(q)}, {"r", json_number(r)},
                  {"alpha", alpha},      {"beta", beta},         {"gamma", gamma}};
    const double ng = space_norm(g, SpaceSpec::H(p, gamma), opt).value;
    rep.metadata["norm_g"] = json_number(ng);
    for (std::size_t i = 0; i < family.size(); ++i) {
        const HarmonicFunction h = convolve(g.coefficients(), family[i]);
        const double lhs = space_norm(h, SpaceSpec::H(r, beta), opt).value;
        const double nf = space_norm(family[i], SpaceSpec::H(q, alpha), opt).value;
        const double rhs = ng * nf;
        const std::string id = "member-" + std::to_string(i);
        if (rhs == 0.0)
            rep.add(id, lhs, 0.0, 0.0, Check::flag);
        else
            rep.add(id, lhs / rhs, C, 0.0, Check::le, {{"lhs", lhs}, {"norm_f", nf}});
    }
    return rep;
}

} // namespace harmspace
