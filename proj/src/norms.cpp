#include "harmspace/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "harmspace/error.hpp"
#include "harmspace/quadrature.hpp"
#include "harmspace/simd.hpp"
#include "harmspace/spharm.hpp"

namespace harmspace {

// ---------------------------------------------------------------- SpaceSpec

namespace {

const char* family_name(Family f) {
    switch (f) {
    case Family::A: return "A";
    case Family::H: return "H";
    case Family::B: return "B";
    case Family::Ainf: return "Ainf";
    case Family::Atilde: return "Atilde";
    case Family::Atilde_inf: return "Atilde_inf";
    }
    return "?";
}

Family family_from(const std::string& s) {
    if (s == "A") return Family::A;
    if (s == "H") return Family::H;
    if (s == "B") return Family::B;
    if (s == "Ainf" || s == "A_inf") return Family::Ainf;
    if (s == "Atilde") return Family::Atilde;
    if (s == "Atilde_inf" || s == "Atildeinf") return Family::Atilde_inf;
    throw ConfigError("unknown space family: " + s);
}

double exponent_from(const nlohmann::json& j, const char* key, double dflt) {
    if (!j.contains(key)) return dflt;
    const auto& v = j.at(key);
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "inf" || s == "infinity") return INFINITY;
        throw ConfigError(std::string("space spec: bad value for ") + key);
    }
    return v.get<double>();
}

} // namespace

void SpaceSpec::validate() const {
    auto need = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError("space " + what);
    };
    need(p > 0.0, "requires p > 0");
    switch (family) {
    case Family::A: need(alpha > -1.0, "A^p_alpha requires alpha > -1"); break;
    case Family::H: need(alpha >= 0.0, "H^p_alpha requires alpha >= 0"); break;
    case Family::B:
        need(alpha > 0.0, "B^{p,q}_alpha requires alpha > 0");
        need(q > 0.0, "B^{p,q}_alpha requires q > 0");
        break;
    case Family::Ainf: need(alpha >= 0.0, "A^inf_alpha requires alpha >= 0"); break;
    case Family::Atilde:
        need(alpha > -1.0, "A~^p_alpha requires alpha > -1");
        need(std::isfinite(p), "A~^p_alpha requires finite p");
        break;
    case Family::Atilde_inf: need(alpha > 0.0, "A~^inf_alpha requires alpha > 0"); break;
    }
}

std::string SpaceSpec::label() const {
    auto num = [](double v) {
        if (std::isinf(v)) return std::string("inf");
        char b[32];
        std::snprintf(b, sizeof b, "%g", v);
        return std::string(b);
    };
    switch (family) {
    case Family::B: return "B^{" + num(p) + "," + num(q) + "}_" + num(alpha);
    case Family::Ainf: return "A^inf_" + num(alpha);
    case Family::Atilde_inf: return "A~^inf_" + num(alpha);
    case Family::Atilde: return "A~^" + num(p) + "_" + num(alpha);
    default: return std::string(family_name(family)) + "^" + num(p) + "_" + num(alpha);
    }
}

nlohmann::json SpaceSpec::to_json() const {
    return {{"family", family_name(family)}, {"p", json_number(p)}, {"q", json_number(q)}, {"alpha", alpha}};
}

SpaceSpec SpaceSpec::from_json(const nlohmann::json& j) {
    SpaceSpec s;
    s.family = family_from(j.at("family").get<std::string>());
    s.p = exponent_from(j, "p", s.family == Family::Ainf || s.family == Family::Atilde_inf ? INFINITY : 2.0);
    s.q = exponent_from(j, "q", 1.0);
    s.alpha = j.value("alpha", 0.0);
    if (s.family == Family::A && std::isinf(s.p)) s.family = Family::Ainf;
    s.validate();
    return s;
}

nlohmann::json NormResult::to_json() const {
    return {{"value", json_number(value)}, {"est_error", json_number(est_error)}, {"rule", rule}};
}

// ---------------------------------------------------------------- spherical means

namespace {

constexpr double kPi = std::numbers::pi;

Vec rotate_unit(const Vec& x, const Vec& e1, const Vec& e2, double a, double b) {
    return (x + e1.scaled(a) + e2.scaled(b)).normalized();
}

void tangent_frame(const Vec& x, Vec& e1, Vec& e2) {
    const Vec helper = std::abs(x[2]) < 0.9 ? Vec(0.0, 0.0, 1.0) : Vec(1.0, 0.0, 0.0);
    e1 = (helper - x.scaled(helper.dot(x))).normalized();
    e2 = Vec(x[1] * e1[2] - x[2] * e1[1], x[2] * e1[0] - x[0] * e1[2], x[0] * e1[1] - x[1] * e1[0]);
}

/// Local maximization of g on the sphere starting from x0; h is the grid spacing.
std::pair<Vec, double> refine_on_sphere(const std::function<double(const Vec&)>& g, const Vec& x0, double h) {
    if (x0.dim == 2) {
        const double th0 = std::atan2(x0[1], x0[0]);
        auto gt = [&](double th) { return g(Vec(std::cos(th), std::sin(th))); };
        const auto [th, v] = maximize_1d(gt, th0 - h, th0 + h, 1e-13);
        const double v0 = g(x0);
        if (v0 >= v) return {x0, v0};
        return {Vec(std::cos(th), std::sin(th)), v};
    }
    Vec x = x0;
    double fx = g(x);
    const double d = 1e-4 * std::min(1.0, h);
    for (int it = 0; it < 40; ++it) {
        Vec e1, e2;
        tangent_frame(x, e1, e2);
        auto at = [&](double a, double b) { return g(rotate_unit(x, e1, e2, a, b)); };
        const double fpa = at(d, 0), fma = at(-d, 0), fpb = at(0, d), fmb = at(0, -d);
        const double fpp = at(d, d), fpm = at(d, -d), fmp = at(-d, d), fmm = at(-d, -d);
        const double ga = (fpa - fma) / (2 * d), gb = (fpb - fmb) / (2 * d);
        const double haa = (fpa - 2 * fx + fma) / (d * d), hbb = (fpb - 2 * fx + fmb) / (d * d);
        const double hab = (fpp - fpm - fmp + fmm) / (4 * d * d);
        double sa, sb;
        const double det = haa * hbb - hab * hab;
        if (haa < 0 && det > 0) {
            sa = -(hbb * ga - hab * gb) / det;
            sb = -(-hab * ga + haa * gb) / det;
        } else {
            const double gn = std::hypot(ga, gb);
            if (gn == 0.0) break;
            sa = 0.5 * h * ga / gn;
            sb = 0.5 * h * gb / gn;
        }
        const double sn = std::hypot(sa, sb);
        if (sn > h) {
            sa *= h / sn;
            sb *= h / sn;
        }
        bool moved = false;
        for (int k = 0; k < 30; ++k) {
            const Vec xn = rotate_unit(x, e1, e2, sa, sb);
            const double fn = g(xn);
            if (fn >= fx) {
                moved = fn > fx;
                x = xn;
                fx = fn;
                break;
            }
            sa *= 0.5;
            sb *= 0.5;
        }
        if (!moved || std::hypot(sa, sb) < 1e-13) break;
    }
    return {x, fx};
}

double pow_abs(double v, double p) { return p == 1.0 ? std::abs(v) : p == 2.0 ? v * v : std::pow(std::abs(v), p); }

double finish_mean(double integral, double p) { return p == 1.0 ? integral : std::pow(integral, 1.0 / p); }

/// Precomputed sphere data for one function.
class SphereMeans {
public:
    SphereMeans(const BallFunction& f, const NormOptions& opt, double p) : f_(f), opt_(opt) {
        const int n = f.dimension();
        if (f.kind() == BallFunction::Kind::expansion) {
            const int K = f.expansion().max_degree();
            int deg = opt.sphere_degree;
            if (deg <= 0) {
                const bool even = std::isfinite(p) && p == std::floor(p) && static_cast<int>(p) % 2 == 0 && p <= 8;
                deg = even ? static_cast<int>(p) * K + 2 : 3 * K + 16;
            }
            rule_ = SphereRule::make(n, deg);
            // Beyond this size the table costs more memory than re-evaluating the basis.
            if (rule_.size() * harmonic_count(n, K) <= (std::size_t{1} << 23))
                table_ = std::make_unique<BasisTable>(n, K, rule_.nodes);
        } else if (f.kind() == BallFunction::Kind::sampled) {
            rule_ = SphereRule::make(n, opt.sphere_degree > 0 ? opt.sphere_degree : std::max(8, f.sphere_degree()));
        }
    }

    double h0(double r) const {
        const double s = r * f_.concentration();
        return std::clamp(0.5 * (1.0 - s), 1e-12, kPi);
    }

    std::vector<double> values(double r) const {
        if (table_) return table_->eval(f_.expansion(), r);
        std::vector<double> v(rule_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = f_.eval(r, rule_.nodes[i]);
        return v;
    }

    double mean(double p, double r) const {
        if (std::isinf(p)) return sup(r);
        if (f_.kind() == BallFunction::Kind::zonal) {
            const bool smooth = p == std::floor(p) && static_cast<long>(p) % 2 == 0;
            const Rule1D z = smooth ? zonal_rule(f_.dimension(), h0(r), opt_.zonal_order)
                                    : zonal_rule_split(f_.dimension(), r, h0(r), opt_.zonal_order);
            return finish_mean(z.integrate([&](double th) { return pow_abs(f_.profile()(r, th), p); }), p);
        }
        std::vector<double> v = values(r);
        for (double& x : v) {
            if (!std::isfinite(x)) throw EvaluationError("non-finite function value on sphere", r);
            x = pow_abs(x, p);
        }
        return finish_mean(simd::dot(v, rule_.weights), p);
    }

    double sup(double r) const {
        if (f_.kind() == BallFunction::Kind::zonal) {
            const Rule1D z = zonal_rule(f_.dimension(), h0(r), opt_.zonal_order);
            std::vector<double> th{0.0};
            th.insert(th.end(), z.x.begin(), z.x.end());
            th.push_back(kPi);
            auto g = [&](double t) { return std::abs(f_.profile()(r, t)); };
            std::size_t best = 0;
            double bv = -1;
            for (std::size_t i = 0; i < th.size(); ++i) {
                const double v = g(th[i]);
                if (v > bv) {
                    bv = v;
                    best = i;
                }
            }
            const double lo = th[best == 0 ? 0 : best - 1], hi = th[std::min(best + 1, th.size() - 1)];
            if (hi > lo) bv = std::max(bv, maximize_1d(g, lo, hi, 1e-14 * std::max(1.0, hi)).second);
            return bv;
        }
        const std::vector<double> v = values(r);
        std::size_t best = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (std::abs(v[i]) > std::abs(v[best])) best = i;
        const double spacing = 2.0 * kPi / std::max(4, rule_.degree + 1);
        auto g = [&](const Vec& x) { return std::abs(f_.eval(r, x)); };
        return std::max(std::abs(v[best]), refine_on_sphere(g, rule_.nodes[best], 1.5 * spacing).second);
    }

    /// Argmax over the sphere of |f(r x')| (zonal: returns the angle in [0, pi]).
    std::pair<Vec, double> sup_point(double r) const {
        const std::vector<double> v = values(r);
        std::size_t best = 0;
        for (std::size_t i = 1; i < v.size(); ++i)
            if (std::abs(v[i]) > std::abs(v[best])) best = i;
        const double spacing = 2.0 * kPi / std::max(4, rule_.degree + 1);
        auto g = [&](const Vec& x) { return std::abs(f_.eval(r, x)); };
        return refine_on_sphere(g, rule_.nodes[best], 1.5 * spacing);
    }

    const SphereRule& rule() const { return rule_; }

    /// Zonal rule with extra panel breaks at sign changes of the profile, where |F|^p has a kink.
    Rule1D zonal_rule_split(int n, double r, double h0, int order) const {
        const Rule1D base = zonal_rule(n, h0, order);
        auto F = [&](double th) { return f_.profile()(r, th); };
        std::vector<double> th{0.0};
        th.insert(th.end(), base.x.begin(), base.x.end());
        th.push_back(kPi);
        std::vector<double> edges{0.0};
        for (double e = h0; e < kPi; e *= 2.0) edges.push_back(e);
        double prev = F(th[0]);
        for (std::size_t i = 1; i < th.size(); ++i) {
            const double cur = F(th[i]);
            if ((prev < 0.0) != (cur < 0.0) && prev != 0.0 && cur != 0.0) {
                double lo = th[i - 1], hi = th[i], flo = prev;
                for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
                    const double mid = 0.5 * (lo + hi), fm = F(mid);
                    if ((fm < 0.0) == (flo < 0.0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                edges.push_back(0.5 * (lo + hi));
            }
            prev = cur;
        }
        edges.push_back(kPi);
        std::sort(edges.begin(), edges.end());
        Rule1D out;
        for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
            if (edges[i + 1] - edges[i] <= 1e-15) continue;
            Rule1D g = gauss_on(edges[i], edges[i + 1], order);
            for (std::size_t k = 0; k < g.size(); ++k) g.w[k] *= n == 2 ? 1.0 / kPi : 0.5 * std::sin(g.x[k]);
            out.append(g);
        }
        return out;
    }

    nlohmann::json descriptor() const {
        if (f_.kind() == BallFunction::Kind::zonal)
            return {{"dimension", f_.dimension()}, {"order", opt_.zonal_order}, {"depth", "graded"}};
        return rule_.descriptor();
    }

private:
    const BallFunction& f_;
    NormOptions opt_;
    SphereRule rule_;
    std::unique_ptr<BasisTable> table_;
};

int radial_depth_for(const BallFunction& f, const NormOptions& opt) {
    if (opt.radial_depth > 0) return opt.radial_depth;
    switch (f.kind()) {
    case BallFunction::Kind::expansion: return 6;
    case BallFunction::Kind::zonal:
        return std::max(6, static_cast<int>(std::ceil(std::log2(1.0 / (1.0 - f.concentration())))) + 5);
    case BallFunction::Kind::sampled: return 12;
    }
    return 12;
}

double radial_upper(const BallFunction& f) { return f.defined_on_boundary() ? 1.0 : 1.0 - 1e-12; }

/// sup over r in [0, r_max] of phi by a grid in 1 - r followed by golden refinement.
double sup_over_r(const std::function<double(double)>& phi, double r_max, int depth) {
    std::vector<double> grid{0.0};
    for (int j = 1; j <= 2 * depth; ++j) grid.push_back(1.0 - std::exp2(-0.5 * j));
    grid.push_back(r_max);
    std::vector<double> val(grid.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        val[i] = phi(grid[i]);
        if (val[i] > val[best]) best = i;
    }
    const double lo = grid[best == 0 ? 0 : best - 1];
    const double hi = grid[std::min(best + 1, grid.size() - 1)];
    double v = val[best];
    if (hi > lo) v = std::max(v, maximize_1d(phi, lo, hi, 1e-13).second);
    return v;
}

double weight_pow(double r, double alpha) { return alpha == 0.0 ? 1.0 : std::pow(1.0 - r, alpha); }

} // namespace

double radial_mean(const BallFunction& f, double p, double r, const NormOptions& opt) {
    if (!(p > 0.0)) throw DomainError("radial_mean: need p > 0");
    if (!(r >= 0.0) || r > radial_upper(f)) throw DomainError("radial_mean: radius out of range");
    const SphereMeans sm(f, opt, p);
    return sm.mean(p, r);
}

double radial_mean(const HarmonicFunction& f, double p, double r, const NormOptions& opt) {
    return radial_mean(BallFunction::from_expansion(f), p, r, opt);
}

double weighted_sup_nested(const BallFunction& f, double alpha, const NormOptions& opt) {
    const SphereMeans sm(f, opt, INFINITY);
    const double rmax = alpha == 0.0 ? radial_upper(f) : std::min(radial_upper(f), 1.0 - 1e-300);
    return sup_over_r([&](double r) { return weight_pow(r, alpha) * sm.sup(r); }, rmax, radial_depth_for(f, opt));
}

double weighted_sup_joint(const BallFunction& f, double alpha, const NormOptions& opt) {
    const SphereMeans sm(f, opt, INFINITY);
    const int depth = radial_depth_for(f, opt);
    const double rmax = radial_upper(f);
    std::vector<double> rg{0.0};
    for (int j = 1; j <= 2 * depth; ++j) rg.push_back(1.0 - std::exp2(-0.5 * j));
    rg.push_back(rmax);
    if (f.kind() == BallFunction::Kind::zonal) {
        // Joint grid in (r, theta), then alternating golden refinement.
        auto G = [&](double r, double th) { return weight_pow(r, alpha) * std::abs(f.profile()(r, th)); };
        double br = 0, bt = 0, bv = -1;
        for (double r : rg) {
            const Rule1D z = zonal_rule(f.dimension(), sm.h0(r), opt.zonal_order);
            std::vector<double> th{0.0};
            th.insert(th.end(), z.x.begin(), z.x.end());
            th.push_back(kPi);
            for (double t : th) {
                const double v = G(r, t);
                if (v > bv) {
                    bv = v;
                    br = r;
                    bt = t;
                }
            }
        }
        for (int it = 0; it < 60; ++it) {
            const double old = bv;
            const double hr = std::max(1e-14, 0.5 * (1.0 - br) + 1e-9);
            const auto [r, vr] = maximize_1d([&](double r) { return G(r, bt); }, std::max(0.0, br - hr),
                                             std::min(rmax, br + hr), 1e-15);
            if (vr > bv) {
                bv = vr;
                br = r;
            }
            const double ht = std::max(1e-12, sm.h0(br));
            const auto [t, vt] = maximize_1d([&](double t) { return G(br, t); }, std::max(0.0, bt - ht),
                                             std::min(kPi, bt + ht), 1e-15);
            if (vt > bv) {
                bv = vt;
                bt = t;
            }
            if (bv - old <= 1e-15 * bv) break;
        }
        return bv;
    }
    const SphereRule& rule = sm.rule();
    double br = 0, bv = -1;
    Vec bx = rule.nodes[0];
    for (double r : rg) {
        const std::vector<double> v = sm.values(r);
        for (std::size_t i = 0; i < v.size(); ++i) {
            const double w = weight_pow(r, alpha) * std::abs(v[i]);
            if (w > bv) {
                bv = w;
                br = r;
                bx = rule.nodes[i];
            }
        }
    }
    const double spacing = 2.0 * kPi / std::max(4, rule.degree + 1);
    double hx = 1.5 * spacing;
    for (int it = 0; it < 60; ++it) {
        const double old = bv;
        const double hr = std::max(1e-14, 0.5 * (1.0 - br) + 1e-9);
        const auto [r, vr] = maximize_1d([&](double r) { return weight_pow(r, alpha) * std::abs(f.eval(r, bx)); },
                                         std::max(0.0, br - hr), std::min(rmax, br + hr), 1e-15);
        if (vr > bv) {
            bv = vr;
            br = r;
        }
        const auto [x, vx] = refine_on_sphere(
            [&](const Vec& x) { return weight_pow(br, alpha) * std::abs(f.eval(br, x)); }, bx, hx);
        if (vx > bv) {
            bv = vx;
            bx = x;
        }
        hx = std::max(1e-6, 0.5 * hx);
        if (bv - old <= 1e-15 * bv && it > 2) break;
    }
    return bv;
}

NormResult space_norm(const BallFunction& f, const SpaceSpec& spec, const NormOptions& opt) {
    spec.validate();
    if (spec.family == Family::Atilde || spec.family == Family::Atilde_inf)
        throw DomainError("space_norm: half-space family needs halfspace_norm");
    const int n = f.dimension();
    const int depth = radial_depth_for(f, opt);
    NormResult res;
    auto compute = [&](const NormOptions& o) -> double {
        const SphereMeans sm(f, o, spec.family == Family::B ? spec.q : spec.p);
        switch (spec.family) {
        case Family::A: {
            if (std::isinf(spec.p)) return weighted_sup_joint(f, spec.alpha, o);
            const RadialRule rule(o.radial_order, depth, spec.alpha);
            res.rule = {{"radial", rule.descriptor()}, {"sphere", sm.descriptor()}};
            const double I = integrate_radial(
                [&](double r) { return std::pow(sm.mean(spec.p, r), spec.p) * std::pow(r, n - 1); }, spec.alpha,
                rule);
            return std::pow(I, 1.0 / spec.p);
        }
        case Family::Ainf: return weighted_sup_joint(f, spec.alpha, o);
        case Family::H: {
            res.rule = {{"sphere", sm.descriptor()}, {"radial_grid_depth", depth}};
            if (std::isinf(spec.p)) return weighted_sup_nested(f, spec.alpha, o);
            return sup_over_r([&](double r) { return weight_pow(r, spec.alpha) * sm.mean(spec.p, r); },
                              radial_upper(f), depth);
        }
        case Family::B: {
            if (std::isinf(spec.p)) {
                res.rule = {{"sphere", sm.descriptor()}, {"radial_grid_depth", depth}};
                if (std::isinf(spec.q)) return weighted_sup_nested(f, spec.alpha, o);
                return sup_over_r([&](double r) { return weight_pow(r, spec.alpha) * sm.mean(spec.q, r); },
                                  radial_upper(f), depth);
            }
            const double a = spec.alpha * spec.p - 1.0;
            const RadialRule rule(o.radial_order, depth, a);
            res.rule = {{"radial", rule.descriptor()}, {"sphere", sm.descriptor()}};
            const double I = integrate_radial(
                [&](double r) {
                    return std::pow(sm.mean(spec.q, r), spec.p) * std::pow(1.0 + r, a) * std::pow(r, n - 1);
                },
                a, rule);
            return std::pow(I, 1.0 / spec.p);
        }
        default: break;
        }
        return NAN;
    };
    try {
        res.value = compute(opt);
    } catch (const EvaluationError&) {
        res.value = INFINITY;
    }
    if (!std::isfinite(res.value)) res.value = INFINITY;
    if (opt.estimate_error && std::isfinite(res.value)) {
        NormOptions o2 = opt;
        o2.radial_order = opt.radial_order + 8;
        o2.zonal_order = opt.zonal_order + 8;
        if (opt.sphere_degree > 0) o2.sphere_degree = opt.sphere_degree * 2;
        nlohmann::json keep = res.rule;
        const double v2 = compute(o2);
        res.rule = keep;
        res.est_error = std::abs(v2 - res.value);
    }
    res.rule["space"] = spec.to_json();
    return res;
}

NormResult space_norm(const HarmonicFunction& f, const SpaceSpec& spec, const NormOptions& opt) {
    return space_norm(BallFunction::from_expansion(f), spec, opt);
}

// ---------------------------------------------------------------- half-space

namespace {

double halfspace_sup(const HalfSpaceFunction& f, double alpha) {
    const int n = f.n;
    auto G = [&](const std::vector<double>& x, double t) { return std::abs(f(x, t)) * std::pow(t, alpha); };
    // Grid: t geometric, horizontal offsets geometric along each axis and diagonals.
    std::vector<double> bx = f.center;
    double bt = f.scale, bv = -1;
    std::vector<double> offs{0.0};
    for (int j = -12; j <= 12; ++j) {
        offs.push_back(f.scale * std::exp2(0.5 * j));
        offs.push_back(-f.scale * std::exp2(0.5 * j));
    }
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int j = -40; j <= 40; ++j) {
        const double t = f.scale * std::exp2(0.5 * j);
        for (double o1 : offs)
            for (std::size_t o2i = 0; o2i < (n == 2 ? offs.size() : 1); ++o2i) {
                x[0] = f.center[0] + o1;
                if (n == 2) x[1] = f.center[1] + offs[o2i];
                const double v = G(x, t);
                if (v > bv) {
                    bv = v;
                    bx = x;
                    bt = t;
                }
            }
    }
    double hx = f.scale * 2.0;
    for (int it = 0; it < 80; ++it) {
        const double old = bv;
        const auto [lt, vt] = maximize_1d([&](double l) { return G(bx, std::exp(l)); }, std::log(bt) - 1.0,
                                          std::log(bt) + 1.0, 1e-14);
        if (vt > bv) {
            bv = vt;
            bt = std::exp(lt);
        }
        for (int i = 0; i < n; ++i) {
            std::vector<double> y = bx;
            const auto [xi, vx] = maximize_1d(
                [&](double v) {
                    y[i] = v;
                    return G(y, bt);
                },
                bx[i] - hx, bx[i] + hx, 1e-14 * std::max(1.0, hx));
            if (vx > bv) {
                bv = vx;
                bx[i] = xi;
            }
        }
        hx = std::max(1e-8, 0.5 * hx);
        if (bv - old <= 1e-15 * bv && it > 4) break;
    }
    return bv;
}

} // namespace

NormResult halfspace_norm(const HalfSpaceFunction& f, const SpaceSpec& spec, const HalfSpaceRule& rule) {
    spec.validate();
    NormResult res;
    res.rule = {{"halfspace", rule.descriptor()}, {"space", spec.to_json()}};
    if (spec.family == Family::Atilde_inf) {
        res.value = halfspace_sup(f, spec.alpha);
        return res;
    }
    if (spec.family != Family::Atilde) throw DomainError("halfspace_norm: needs a half-space family");
    const double tail = spec.p * f.decay - spec.alpha - f.n;
    if (!(tail > 1.0))
        throw DomainError("halfspace_norm: declared decay too slow for convergence of the weighted integral");
    HalfSpaceRule r = rule;
    r.h0 = std::min(rule.h0, f.scale / 8.0);
    r.R = std::max(rule.R, 1e4 * f.scale);
    const double I = integrate_halfspace(
        [&](const std::vector<double>& y, double s) { return std::pow(std::abs(f(y, s)), spec.p); }, f.n, f.center,
        spec.alpha, r, std::isinf(tail) ? 1e300 : tail);
    res.value = std::pow(I, 1.0 / spec.p);
    return res;
}

// ---------------------------------------------------------------- embeddings

double embedding_ratio(const BallFunction& f, double p, double alpha, const NormOptions& opt) {
    const double t = (alpha + f.dimension()) / p;
    const double sup = weighted_sup_joint(f, t, opt);
    const double nrm = space_norm(f, SpaceSpec::A(p, alpha), opt).value;
    return sup / nrm;
}

double embedding_ratio_halfspace(const HalfSpaceFunction& f, double p, double alpha, const HalfSpaceRule& rule) {
    const double lam = (alpha + f.n + 1) / p;
    return halfspace_sup(f, lam) / halfspace_norm(f, SpaceSpec::Atilde(p, alpha), rule).value;
}

VerificationReport embedding_check(const std::vector<EmbeddingMember>& family, double p, double alpha, double bound,
                                   double slope_tol, const NormOptions& opt) {
    VerificationReport rep;
    rep.suite = "embedding";
    rep.config = {{"p", p}, {"alpha", alpha}, {"bound", bound}};
    std::vector<double> dist, ratio;
    for (const auto& m : family) {
        const double r = embedding_ratio(m.f, p, alpha, opt);
        rep.add("ratio/" + m.label, r, bound, 0.0, Check::le);
        if (m.boundary_distance > 0) {
            dist.push_back(m.boundary_distance);
            ratio.push_back(r);
        }
    }
    if (dist.size() >= 2) {
        const DecayFit fit = fit_power_law(dist, ratio);
        rep.add("kernel-ratio-slope", fit.slope, -slope_tol, 0.0, Check::ge, fit.to_json());
    }
    return rep;
}

} // namespace harmspace
