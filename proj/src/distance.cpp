#include "harmspace/distance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/FFT>

#include "harmspace/kernels.hpp"
#include "harmspace/norms.hpp"
#include "harmspace/quadrature.hpp"
#include "harmspace/special.hpp"

namespace harmspace {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec dir2(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// 4 (b+1) Re (1 - z)^-(b+2) - 2 (b+1) for integer b, with 1 - z = w given directly.
double disc_kernel(int beta, std::complex<double> w) {
    const std::complex<double> inv = 1.0 / w;
    std::complex<double> p = inv;
    for (int i = 0; i < beta + 1; ++i) p *= inv;
    return 4.0 * (beta + 1.0) * p.real() - 2.0 * (beta + 1.0);
}

double q_disc(int beta, double r, double rho, double dtheta) {
    const double s = r * rho;
    const double sh = std::sin(0.5 * dtheta);
    return disc_kernel(beta, {(1.0 - s) + 2.0 * s * sh * sh, -s * std::sin(dtheta)});
}

bool in_intervals(const std::vector<std::pair<double, double>>& iv, double rho) {
    for (const auto& [a, b] : iv)
        if (rho >= a && rho <= b) return true;
    return false;
}

/// Sample radii for ray slices: uniform in rho, then dyadic toward 1.
const std::vector<double>& ray_samples() {
    static const std::vector<double> s = [] {
        std::vector<double> v;
        for (int k = 0; k < 64; ++k) v.push_back(k / 64.0);
        for (int k = 0; k <= 176; ++k) v.push_back(1.0 - std::exp2(-0.25 * k));
        std::sort(v.begin(), v.end());
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    }();
    return s;
}

void require_disc(const BallFunction& f, const char* who) {
    if (f.dimension() != 2) throw UnsupportedConfiguration(std::string(who) + ": implemented for n = 2");
}

std::string eps_tag(double eps) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "eps=%.6g", eps);
    return buf;
}

DecayFit positive_fit(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (y[i] > 0.0 && std::isfinite(y[i])) {
            xs.push_back(x[i]);
            ys.push_back(y[i]);
        }
    if (xs.size() < 2) return {};
    return fit_power_law(xs, ys);
}

} // namespace

// ---------------------------------------------------------------------------------------------
// Parameters

void DistanceParams::validate() const {
    if (n != 2) throw UnsupportedConfiguration("distance: the ball functionals are implemented for n = 2");
    if (!(p > 1.0)) throw DomainError("distance: need p > 1");
    if (!(alpha > -1.0)) throw DomainError("distance: need alpha > -1");
    const double need = std::max(t() - 1.0, alpha / p);
    if (!(beta > need))
        throw DomainError("distance: need integer beta > max(t - 1, alpha / p) = " + std::to_string(need));
}

nlohmann::json DistanceParams::to_json() const {
    return {{"n", n}, {"p", p}, {"alpha", alpha}, {"beta", beta}, {"t", t()}};
}

DistanceParams DistanceParams::from_json(const nlohmann::json& j) {
    DistanceParams d;
    d.n = j.value("n", d.n);
    d.p = j.value("p", d.p);
    d.alpha = j.value("alpha", d.alpha);
    d.beta = j.value("beta", d.beta);
    return d;
}

nlohmann::json DistanceRules::to_json() const {
    return {{"order", order},
            {"t2_radial_order", t2_radial_order},
            {"t2_x_depth", t2_x_depth},
            {"t2_y_depth", t2_y_depth},
            {"t2_angles", t2_angles},
            {"fit_j0", fit_j0},
            {"fit_j1", fit_j1},
            {"fit_rays", fit_rays},
            {"panel_width", panel_width},
            {"coefficient_tol", coefficient_tol},
            {"max_terms", max_terms},
            {"test_points", test_points}};
}

DistanceRules DistanceRules::from_json(const nlohmann::json& j) {
    DistanceRules r;
    r.order = j.value("order", r.order);
    r.t2_radial_order = j.value("t2_radial_order", r.t2_radial_order);
    r.t2_x_depth = j.value("t2_x_depth", r.t2_x_depth);
    r.t2_y_depth = j.value("t2_y_depth", r.t2_y_depth);
    r.t2_angles = j.value("t2_angles", r.t2_angles);
    r.fit_j0 = j.value("fit_j0", r.fit_j0);
    r.fit_j1 = j.value("fit_j1", r.fit_j1);
    r.fit_rays = j.value("fit_rays", r.fit_rays);
    r.panel_width = j.value("panel_width", r.panel_width);
    r.coefficient_tol = j.value("coefficient_tol", r.coefficient_tol);
    r.max_terms = j.value("max_terms", r.max_terms);
    r.test_points = j.value("test_points", r.test_points);
    if (r.order < 2 || r.t2_radial_order < 2 || r.t2_angles < 8 || r.fit_j1 - r.fit_j0 < 2 || r.fit_rays < 1 ||
        !(r.panel_width > 0.0) || !(r.coefficient_tol > 0.0) || r.max_terms < 1 || r.test_points < 1)
        throw ConfigError("distance rules out of range");
    return r;
}

// ---------------------------------------------------------------------------------------------
// Sublevel sets

SublevelSet::SublevelSet(BallFunction f, double eps, double t) : f_(std::move(f)), eps_(eps), t_(t) {
    require_disc(f_, "SublevelSet");
    if (!(eps > 0.0)) throw DomainError("SublevelSet: need eps > 0");
    if (!(t > 0.0)) throw DomainError("SublevelSet: need t > 0");
}

double SublevelSet::weighted(double r, double theta) const {
    return std::abs(f_.eval(r, dir2(theta))) * std::pow(1.0 - r, t_);
}

bool SublevelSet::indicator(const Vec& x) const {
    const double r = x.norm();
    return indicator(r, r == 0.0 ? 0.0 : std::atan2(x[1], x[0]));
}

std::vector<std::pair<double, double>> SublevelSet::ray(double theta) const {
    const std::vector<double>& s = ray_samples();
    const Vec d = dir2(theta);
    auto in = [&](double r) { return std::abs(f_.eval(r, d)) * std::pow(1.0 - r, t_) >= eps_; };
    auto edge = [&](double lo, double hi, bool lo_in) {
        for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            (in(mid) == lo_in ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    // A sign change of f between two samples inside U hides a gap around the zero.
    auto zero = [&](double lo, double hi, bool lo_pos) {
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            ((f_.eval(mid, d) > 0.0) == lo_pos ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };
    std::vector<std::pair<double, double>> out;
    double fprev = f_.eval(s[0], d);
    bool prev = std::abs(fprev) * std::pow(1.0 - s[0], t_) >= eps_;
    double start = 0.0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const double fcur = f_.eval(s[i], d);
        const bool cur = std::abs(fcur) * std::pow(1.0 - s[i], t_) >= eps_;
        if (prev && cur && (fprev > 0.0) != (fcur > 0.0)) {
            const double z = zero(s[i - 1], s[i], fprev > 0.0);
            out.emplace_back(start, edge(s[i - 1], z, true));
            start = edge(z, s[i], false);
        } else if (cur != prev) {
            const double e = edge(s[i - 1], s[i], prev);
            if (cur) start = e;
            else out.emplace_back(start, e);
        }
        prev = cur;
        fprev = fcur;
    }
    if (prev) out.emplace_back(start, 1.0);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Adapted integrals

double feature_width(const BallFunction& f) {
    double w = 0.25 * kPi;
    switch (f.kind()) {
    case BallFunction::Kind::zonal: w = 0.5 * (1.0 - f.concentration()); break;
    case BallFunction::Kind::expansion: w = kPi / (f.expansion().max_degree() + 1.0); break;
    case BallFunction::Kind::sampled: w = kPi / (f.sphere_degree() + 1.0); break;
    }
    return std::clamp(w, 1e-3, 0.25 * kPi);
}

double integrate_adapted(const SublevelSet* U, Region region, double r, double theta_x, double a,
                         const std::function<double(double, double)>& g, int order, const std::vector<double>& breaks,
                         double max_width) {
    if (region != Region::all && U == nullptr) throw DomainError("integrate_adapted: region needs a sublevel set");
    if (!(a > -1.0)) throw DomainError("integrate_adapted: need a > -1");
    if (!(max_width > 0.0)) throw DomainError("integrate_adapted: need max_width > 0");
    const double h = std::max(0.5 * (1.0 - r), 1e-12);
    const Rule1D gl = gauss_legendre(order);
    const Rule1D gj = a != 0.0 ? gauss_jacobi(order, 0.0, a) : gl;
    std::vector<double> base{0.0};
    for (double e = h; e < 1.0; e *= 2.0) base.push_back(e);
    base.push_back(1.0);

    // Angular panels in phi = theta - theta_x over [-pi, pi].
    std::vector<double> phi{-kPi, 0.0, kPi};
    for (double e = std::min(h, 0.25 * kPi); e < kPi; e *= 2.0) {
        phi.push_back(e);
        phi.push_back(-e);
    }
    for (double b : breaks) phi.push_back(std::remainder(b - theta_x, kTwoPi));
    std::sort(phi.begin(), phi.end());
    phi.erase(std::unique(phi.begin(), phi.end()), phi.end());
    Rule1D ang;
    for (std::size_t k = 0; k + 1 < phi.size(); ++k) {
        const double lo = phi[k], hi = phi[k + 1];
        if (!(hi > lo)) continue;
        const int pieces = static_cast<int>(std::ceil((hi - lo) / max_width));
        for (int q = 0; q < pieces; ++q)
            ang.append(gauss_on(lo + (hi - lo) * q / pieces, lo + (hi - lo) * (q + 1) / pieces, order));
    }

    double total = 0.0;
    {
        for (std::size_t i = 0; i < ang.size(); ++i) {
            const double theta = theta_x + ang.x[i];
            std::vector<std::pair<double, double>> iv;
            std::vector<double> edges = base;
            if (U != nullptr) {
                iv = U->ray(theta);
                for (const auto& [lo, hi] : iv) {
                    if (1.0 - hi > 0.0) edges.push_back(1.0 - hi);
                    if (1.0 - lo < 1.0) edges.push_back(1.0 - lo);
                }
                std::sort(edges.begin(), edges.end());
                edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            }
            double inner = 0.0;
            for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
                const double u0 = edges[k], u1 = edges[k + 1];
                if (!(u1 > u0)) continue;
                if (region != Region::all) {
                    const bool in = in_intervals(iv, 1.0 - 0.5 * (u0 + u1));
                    if (in != (region == Region::inside)) continue;
                }
                if (u0 == 0.0 && a != 0.0) {
                    const double half = 0.5 * u1;
                    const double fac = std::pow(half, a + 1.0);
                    for (std::size_t q = 0; q < gj.size(); ++q) {
                        const double rho = 1.0 - half * (1.0 + gj.x[q]);
                        inner += fac * gj.w[q] * g(rho, theta) * rho;
                    }
                } else {
                    const double half = 0.5 * (u1 - u0), mid = 0.5 * (u0 + u1);
                    for (std::size_t q = 0; q < gl.size(); ++q) {
                        const double u = mid + half * gl.x[q];
                        const double rho = 1.0 - u;
                        inner += half * gl.w[q] * std::pow(u, a) * g(rho, theta) * rho;
                    }
                }
            }
            total += ang.w[i] * inner;
        }
    }
    total /= kTwoPi;
    if (!std::isfinite(total)) throw EvaluationError("integrate_adapted: non-finite integral", r);
    return total;
}

double representation_integral(const BallFunction& f, int beta, const Vec& x, int order, int n_phi) {
    const int n = f.dimension();
    if (x.dim != n) throw DomainError("representation_integral: dimension mismatch");
    if (beta < 0) throw DomainError("representation_integral: need beta >= 0");
    const double r = x.norm();
    if (!(r < 1.0)) throw DomainError("representation_integral: x must lie in the ball");
    if (n == 2) {
        const double tx = r == 0.0 ? 0.0 : std::atan2(x[1], x[0]);
        return integrate_adapted(
            nullptr, Region::all, r, tx, beta,
            [&](double rho, double th) {
                return q_disc(beta, r, rho, th - tx) * f.eval(rho, dir2(th)) * std::pow(1.0 + rho, beta);
            },
            order);
    }
    if (n != 3) throw UnsupportedConfiguration("representation_integral: n must be 2 or 3");
    const BergmanKernelBall Q(3, beta);
    const Vec xd = r == 0.0 ? Vec::axis(3, 2) : x.scaled(1.0 / r);
    const double h = std::max(0.5 * (1.0 - r), 1e-12);
    const SphereRule S = SphereRule::axial(3, xd, std::min(h, 0.25 * kPi), order, n_phi);
    const Rule1D radial = graded_rule(0.0, 1.0, h, order, beta);  // in u = 1 - rho
    double total = 0.0;
    for (std::size_t i = 0; i < S.size(); ++i) {
        const AngleCosine c = angle_cosine(xd, S.nodes[i]);
        double inner = 0.0;
        for (std::size_t k = 0; k < radial.size(); ++k) {
            const double rho = 1.0 - radial.x[k];
            inner += radial.w[k] * Q.closed(r * rho, c.one_minus_u) * f.eval(rho, S.nodes[i]) *
                     std::pow(1.0 + rho, beta) * rho * rho;
        }
        total += S.weights[i] * inner;
    }
    if (!std::isfinite(total)) throw EvaluationError("representation_integral: non-finite integral", r);
    return total;
}

// ---------------------------------------------------------------------------------------------
// t2

nlohmann::json T2Value::to_json() const {
    return {{"eps", json_number(eps)},
            {"value", json_number(value)},
            {"finite", finite},
            {"inner_exponent", json_number(inner_exponent)},
            {"empty", empty}};
}

std::vector<T2Value> t2_integrals(const BallFunction& f, const std::vector<double>& eps, const DistanceParams& params,
                                  const DistanceRules& rules) {
    params.validate();
    require_disc(f, "t2_integral");
    if (eps.empty()) return {};
    for (double e : eps)
        if (!(e > 0.0)) throw DomainError("t2_integral: need eps > 0");
    const double t = params.t();
    const int beta = params.beta;
    const int N = rules.t2_angles;

    // Levels in decreasing eps, so each J is a prefix sum over nodes in decreasing weighted modulus.
    std::vector<std::size_t> order(eps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eps[a] > eps[b]; });
    const double eps_min = eps[order.back()];

    struct YNode {
        double rho;
        int j;
        double w;
        double v;
        double theta;
    };
    const RadialRule ry(rules.t2_radial_order, rules.t2_y_depth, beta - t);
    std::vector<YNode> ys;
    for (std::size_t i = 0; i < ry.nodes().size(); ++i) {
        const double rho = ry.nodes()[i];
        for (int j = 0; j < N; ++j) {
            const double th = kTwoPi * j / N;
            const double v = std::abs(f.eval(rho, dir2(th))) * std::pow(1.0 - rho, t);
            if (v >= eps_min) ys.push_back({rho, j, ry.weights()[i] * rho / N, v, th});
        }
    }
    std::stable_sort(ys.begin(), ys.end(), [](const YNode& a, const YNode& b) { return a.v > b.v; });

    std::vector<double> cs(static_cast<std::size_t>(N)), sn(cs.size()), h2(cs.size());
    for (int k = 0; k < N; ++k) {
        const double d = kTwoPi * k / N;
        sn[k] = std::sin(d);
        const double s = std::sin(0.5 * d);
        h2[k] = 2.0 * s * s;
    }
    const RadialRule rx(rules.t2_radial_order, rules.t2_x_depth, params.alpha);
    const std::size_t L = eps.size();
    std::vector<double> value(L, 0.0);
    std::vector<double> J(L);
    for (std::size_t i = 0; i < rx.nodes().size(); ++i) {
        const double r = rx.nodes()[i];
        const double wx = rx.weights()[i] * r / N;
        for (int jx = 0; jx < N; ++jx) {
            double sum = 0.0;
            std::size_t lev = 0;
            for (const YNode& y : ys) {
                while (lev < L && y.v < eps[order[lev]]) J[lev++] = sum;
                const int k = ((jx - y.j) % N + N) % N;
                const double s = r * y.rho;
                sum += std::abs(disc_kernel(beta, {(1.0 - s) + s * h2[k], -s * sn[k]})) * y.w;
            }
            while (lev < L) J[lev++] = sum;
            for (std::size_t l = 0; l < L; ++l) value[l] += wx * std::pow(J[l], params.p);
        }
    }

    std::vector<T2Value> out(L);
    const double theta_star = ys.empty() ? 0.0 : ys.front().theta;
    std::vector<double> depths;
    for (int j = rules.fit_j0; j <= rules.fit_j1; ++j) depths.push_back(std::exp2(-j));
    for (std::size_t lev = 0; lev < L; ++lev) {
        const std::size_t idx = order[lev];
        T2Value& o = out[idx];
        o.eps = eps[idx];
        o.value = value[lev];
        o.empty = ys.empty() || ys.front().v < o.eps;
        if (o.empty) continue;
        const SublevelSet U(f, o.eps, t);
        double e_min = INFINITY;
        for (int k = 0; k < rules.fit_rays; ++k) {
            const double th = theta_star + kTwoPi * k / rules.fit_rays;
            std::vector<double> Jd;
            for (double d : depths) {
                const double r = 1.0 - d;
                Jd.push_back(integrate_adapted(
                    &U, Region::inside, r, th, beta - t,
                    [&](double rho, double thy) { return std::abs(q_disc(beta, r, rho, thy - th)); }, rules.order));
            }
            const DecayFit fit = positive_fit(depths, Jd);
            e_min = std::min(e_min, fit.samples.empty() ? 0.0 : fit.slope);
        }
        o.inner_exponent = e_min;
        o.finite = params.p * e_min + params.alpha > -1.0;
    }
    return out;
}

T2Value t2_integral(const BallFunction& f, double eps, const DistanceParams& params, const DistanceRules& rules) {
    return t2_integrals(f, {eps}, params, rules).front();
}

// ---------------------------------------------------------------------------------------------
// Decomposition

Decomposition::Decomposition(const BallFunction& f, double eps, const DistanceParams& params,
                             const DistanceRules& rules)
    : U_(f, eps, params.t()), params_(params), rules_(rules) {
    params.validate();
    if (params.beta < 1) throw DomainError("decompose: need beta > max(t - 1, 0)");
    const int beta = params.beta;

    struct RayInfo {
        double theta;
        std::vector<std::pair<double, double>> iv;
        double depth;
    };
    auto info = [&](double th) {
        RayInfo ri{th, U_.ray(th), 1.0};
        for (const auto& [a, b] : ri.iv) {
            if (b >= 1.0) throw EvaluationError("decompose: the sublevel set reaches the boundary", th);
            ri.depth = std::min(ri.depth, 1.0 - b);
        }
        return ri;
    };

    // Angular panels no wider than the depth of U on their rays; finer where the ray
    // structure changes, so the angular edges of U are localized.
    std::vector<std::pair<double, double>> panels;
    const int P0 = 64;
    std::vector<RayInfo> ends;
    for (int k = 0; k <= P0; ++k) ends.push_back(k == P0 ? RayInfo{kTwoPi, ends.front().iv, ends.front().depth}
                                                           : info(kTwoPi * k / P0));
    struct Pending {
        RayInfo a, b;
    };
    std::vector<Pending> stack;
    for (int k = P0 - 1; k >= 0; --k) stack.push_back({ends[k], ends[k + 1]});
    while (!stack.empty()) {
        Pending pd = std::move(stack.back());
        stack.pop_back();
        const double w = pd.b.theta - pd.a.theta;
        RayInfo m = info(0.5 * (pd.a.theta + pd.b.theta));
        const double dmin = std::min({pd.a.depth, m.depth, pd.b.depth});
        const bool changes = pd.a.iv.size() != m.iv.size() || m.iv.size() != pd.b.iv.size();
        if ((w > rules.panel_width * dmin && w > 1e-7) || (changes && w > 1e-10)) {
            if (panels.size() + stack.size() > 200000) throw EvaluationError("decompose: too many angular panels", w);
            stack.push_back({m, pd.b});
            stack.push_back({pd.a, std::move(m)});
        } else {
            if (changes) edges_.push_back(m.theta);
            panels.emplace_back(pd.a.theta, pd.b.theta);
        }
    }

    // Nodes grouped by ray; weights carry the angular weight, (1 - rho^2)^beta, rho and f.
    struct Ray {
        double theta;
        std::vector<double> rho, a;
    };
    std::vector<Ray> rays;
    const Rule1D gl = gauss_legendre(rules.order);
    for (const auto& [lo, hi] : panels) {
        const double half = 0.5 * (hi - lo), mid = 0.5 * (hi + lo);
        for (std::size_t q = 0; q < gl.size(); ++q) {
            const double th = mid + half * gl.x[q];
            const double wth = half * gl.w[q] / kTwoPi;
            const Vec d = dir2(th);
            Ray ray{th, {}, {}};
            for (const auto& [a, b] : info(th).iv) {
                const double len = b - a;
                if (!(len > 0.0)) continue;
                depth_ = std::min(depth_, 1.0 - b);
                const Rule1D rr = graded_rule(0.0, len, std::min(len, std::max(0.5 * (1.0 - b), 1e-12)), rules.order);
                for (std::size_t k = 0; k < rr.size(); ++k) {
                    const double rho = b - rr.x[k];
                    const double wt = wth * rr.w[k] * rho * std::pow(1.0 - rho * rho, beta) * f.eval(rho, d);
                    if (!std::isfinite(wt)) throw EvaluationError("decompose: non-finite integrand", rho);
                    ray.rho.push_back(rho);
                    ray.a.push_back(wt);
                }
            }
            nodes_ += ray.rho.size();
            if (!ray.rho.empty()) rays.push_back(std::move(ray));
        }
    }
    empty_ = rays.empty();
    if (empty_) return;

    // lambda_k for n = 2: lambda_0 = 2 (beta + 1), lambda_{k+1} / lambda_k = (k + beta + 2) / (k + 1).
    // A node at radius rho contributes while lambda_k rho^k / lambda_0 >= tol past its peak.
    const double tol = rules.coefficient_tol;
    auto cutoff = [&](double rho) {
        int k = 0;
        for (double m = 1.0;; ++k) {
            if (k > rules.max_terms) throw EvaluationError("decompose: coefficient series too long", rho);
            if (k * (1.0 - rho) > beta + 2.0 && m < tol) return k;
            m *= rho * (k + beta + 2.0) / (k + 1.0);
        }
    };
    const int K = cutoff(1.0 - depth_);
    std::vector<std::complex<double>> S(static_cast<std::size_t>(K) + 1, 0.0);
    std::vector<double> P, pw;
    std::vector<int> stop;
    for (Ray& ray : rays) {
        // Real moments sum_j a_j rho_j^k along the ray, then one rotation by e^{-ik theta}.
        std::vector<std::size_t> idx(ray.rho.size());
        for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
        std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) { return ray.rho[x] > ray.rho[y]; });
        std::vector<double> rho(idx.size()), a(idx.size());
        stop.assign(idx.size(), 0);
        for (std::size_t j = 0; j < idx.size(); ++j) {
            rho[j] = ray.rho[idx[j]];
            a[j] = ray.a[idx[j]];
            stop[j] = cutoff(rho[j]);
        }
        const int Kr = stop[0];
        pw = a;
        std::size_t active = idx.size();
        const std::complex<double> step = std::polar(1.0, -ray.theta);
        std::complex<double> rot = 1.0;
        for (int k = 0; k <= Kr; ++k) {
            while (active > 0 && stop[active - 1] < k) --active;
            double sum = 0.0;
            for (std::size_t j = 0; j < active; ++j) {
                sum += pw[j];
                pw[j] *= rho[j];
            }
            S[k] += sum * rot;
            rot *= step;
        }
    }
    C_.resize(S.size());
    double lam = 2.0 * (beta + 1.0);
    for (int k = 0; k <= K; ++k) {
        C_[k] = (k == 0 ? lam : 2.0 * lam) * S[k];
        lam *= (k + beta + 2.0) / (k + 1.0);
    }
    std::sort(edges_.begin(), edges_.end());
}

double Decomposition::f2(const Vec& x) const {
    if (empty_) return 0.0;
    const std::complex<double> z(x[0], x[1]);
    std::complex<double> acc = C_.back();
    for (std::size_t k = C_.size() - 1; k-- > 0;) acc = acc * z + C_[k];
    return acc.real();
}

double Decomposition::f1(const Vec& x) const {
    const double r = x.norm();
    const double tx = r == 0.0 ? 0.0 : std::atan2(x[1], x[0]);
    const int beta = params_.beta;
    const BallFunction& f = U_.function();
    return integrate_adapted(
        &U_, Region::outside, r, tx, beta,
        [&](double rho, double th) {
            return q_disc(beta, r, rho, th - tx) * f.eval(rho, dir2(th)) * std::pow(1.0 + rho, beta);
        },
        rules_.order, edges_, feature_width(f));
}

double Decomposition::f2_direct(const Vec& x) const {
    const double r = x.norm();
    const double tx = r == 0.0 ? 0.0 : std::atan2(x[1], x[0]);
    const int beta = params_.beta;
    const BallFunction& f = U_.function();
    return integrate_adapted(
        &U_, Region::inside, r, tx, beta,
        [&](double rho, double th) {
            return q_disc(beta, r, rho, th - tx) * f.eval(rho, dir2(th)) * std::pow(1.0 + rho, beta);
        },
        rules_.order, edges_, feature_width(f));
}

namespace {

int sampled_degree(double depth) { return static_cast<int>(std::min(4000.0, std::ceil(8.0 / depth))); }

} // namespace

BallFunction Decomposition::f2_function() const {
    auto self = std::make_shared<Decomposition>(*this);
    return BallFunction::sampled(2, [self](const Vec& x) { return self->f2(x); }, sampled_degree(depth_));
}

BallFunction Decomposition::remainder_function() const {
    auto self = std::make_shared<Decomposition>(*this);
    return BallFunction::sampled(2, [self](const Vec& x) { return self->f(x) - self->f2(x); },
                                 sampled_degree(depth_));
}

double Decomposition::f2_norm(double p, double alpha) const {
    if (empty_) return 0.0;
    if (p == 2.0) {
        // M_2(f2, r)^2 = C_0^2 + sum |C_k|^2 r^2k / 2 against (1 - r)^alpha r dr.
        double s = std::norm(C_[0]) * beta_function(2.0, alpha + 1.0);
        for (std::size_t k = 1; k < C_.size(); ++k)
            s += 0.5 * std::norm(C_[k]) * beta_function(2.0 * k + 2.0, alpha + 1.0);
        return std::sqrt(s);
    }
    NormOptions o;
    o.radial_depth = std::max(12, static_cast<int>(std::ceil(std::log2(1.0 / depth_))) + 6);
    return space_norm(f2_function(), SpaceSpec::A(p, alpha), o).value;
}

double Decomposition::remainder_norm(double t) const {
    const BallFunction& f = U_.function();
    if (empty_) return weighted_sup_joint(f, t);
    // Circles r = 1 - 2^-j/2: f2 on N equispaced angles by one inverse FFT of C_k r^k.
    const std::size_t K = C_.size() - 1;
    std::size_t N = 1024;
    while (N < 4 * (K + 1)) N *= 2;
    const int D = std::max(12, static_cast<int>(std::ceil(std::log2(1.0 / depth_))) + 6);
    std::vector<double> radii{0.0};
    for (int j = 1; j <= 2 * D; ++j) radii.push_back(1.0 - std::exp2(-0.5 * j));
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> spec(N), vals(N);
    auto G = [&](double r, double th) {
        const Vec x = dir2(th).scaled(r);
        return std::pow(1.0 - r, t) * std::abs(f.eval(x) - f2(x));
    };
    double best = -1.0, br = 0.0, bt = 0.0;
    std::size_t bi = 0;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        const double r = radii[i];
        std::fill(spec.begin(), spec.end(), 0.0);
        double rk = 1.0;
        for (std::size_t k = 0; k <= K; ++k) {
            spec[k] = C_[k] * rk;
            rk *= r;
        }
        fft.inv(vals, spec);
        const double w = std::pow(1.0 - r, t);
        for (std::size_t j = 0; j < N; ++j) {
            const double th = kTwoPi * j / N;
            const double v = w * std::abs(f.eval(r, dir2(th)) - static_cast<double>(N) * vals[j].real());
            if (v > best) {
                best = v;
                br = r;
                bt = th;
                bi = i;
            }
            if (r == 0.0) break;
        }
    }
    // Alternating golden refinement with direct evaluation.
    double rlo = bi > 0 ? radii[bi - 1] : 0.0, rhi = bi + 1 < radii.size() ? radii[bi + 1] : radii.back();
    best = G(br, bt);
    for (int it = 0; it < 20; ++it) {
        const double old = best;
        const auto [r, vr] = maximize_1d([&](double r) { return G(r, bt); }, rlo, rhi, 1e-13);
        if (vr > best) {
            best = vr;
            br = r;
        }
        const double h = 2.0 * kTwoPi / N;
        const auto [th, vt] = maximize_1d([&](double th) { return G(br, th); }, bt - h, bt + h, 1e-13);
        if (vt > best) {
            best = vt;
            bt = th;
        }
        rlo = std::max(0.0, br - 0.5 * (1.0 - br));
        rhi = std::min(1.0 - 1e-15, br + 0.5 * (1.0 - br));
        if (best - old <= 1e-14 * best) break;
    }
    return best;
}

Decomposition decompose(const BallFunction& f, double eps, const DistanceParams& params, const DistanceRules& rules) {
    return Decomposition(f, eps, params, rules);
}

// ---------------------------------------------------------------------------------------------
// Certificate

nlohmann::json DistanceEstimate::to_json() const {
    nlohmann::json lv = nlohmann::json::array();
    for (const DistanceLevel& l : levels) {
        nlohmann::json j = l.t2.to_json();
        j["remainder_norm"] = json_number(l.remainder_norm);
        j["f2_norm"] = json_number(l.f2_norm);
        j["additivity"] = json_number(l.additivity);
        j["series_vs_direct"] = json_number(l.series_vs_direct);
        lv.push_back(j);
    }
    return {{"params", params.to_json()},
            {"levels", lv},
            {"t2", json_number(t2)},
            {"bracket", {json_number(bracket_low), json_number(bracket_high)}},
            {"remainder_slope", json_number(remainder_slope)},
            {"report", report.to_json()}};
}

std::string DistanceEstimate::to_csv() const {
    std::ostringstream os;
    os << "eps,value,verdict,inner_exponent,remainder_norm,f2_norm,additivity\n";
    char buf[512];
    for (const DistanceLevel& l : levels) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%s,%.17g,%.17g,%.17g,%.17g\n", l.t2.eps, l.t2.value,
                      l.t2.finite ? "finite" : "infinite", l.t2.inner_exponent, l.remainder_norm, l.f2_norm,
                      l.additivity);
        os << buf;
    }
    return os.str();
}

DistanceEstimate distance_bound_check(const BallFunction& f, const DistanceParams& params, std::vector<double> eps_grid,
                                      const DistanceRules& rules, const DistanceOptions& opt) {
    params.validate();
    require_disc(f, "distance_bound_check");
    if (eps_grid.empty()) throw DomainError("distance_bound_check: empty eps grid");
    std::sort(eps_grid.begin(), eps_grid.end());
    DistanceEstimate est;
    est.params = params;
    est.report.suite = "distance";
    est.report.config = {{"params", params.to_json()}, {"rules", rules.to_json()}};

    const std::vector<T2Value> t2 = t2_integrals(f, eps_grid, params, rules);
    bool monotone = true, consistent = true;
    for (std::size_t i = 0; i < t2.size(); ++i) {
        DistanceLevel lv;
        lv.t2 = t2[i];
        if (i > 0) {
            monotone = monotone && t2[i].value <= t2[i - 1].value;
            consistent = consistent && (t2[i].finite || !t2[i - 1].finite);
        }
        est.levels.push_back(lv);
    }

    // Bracket: largest eps flagged infinite, smallest finite eps above it.
    double lo = 0.0;
    for (const DistanceLevel& l : est.levels)
        if (!l.t2.finite) lo = l.t2.eps;
    double hi = NAN;
    for (const DistanceLevel& l : est.levels)
        if (l.t2.finite && l.t2.eps > lo) {
            hi = l.t2.eps;
            break;
        }
    est.bracket_low = lo;
    est.bracket_high = std::isnan(hi) ? INFINITY : hi;
    est.t2 = std::isfinite(est.bracket_high) ? 0.5 * (lo + est.bracket_high) : INFINITY;
    bool all_empty = true;
    for (const DistanceLevel& l : est.levels) all_empty = all_empty && l.t2.empty && l.t2.value == 0.0;
    if (all_empty) {
        est.t2 = 0.0;
        est.bracket_high = 0.0;
    }

    est.report.add("t2-monotone", monotone ? 1 : 0, 1, 0, Check::flag);
    est.report.add("t2-flags-consistent", consistent ? 1 : 0, 1, 0, Check::flag,
                   {{"bracket", {json_number(est.bracket_low), json_number(est.bracket_high)}},
                    {"t2", json_number(est.t2)}});

    std::vector<double> fit_eps, fit_rem;
    if (opt.decompose) {
        const int P = std::max(1, rules.test_points);
        for (DistanceLevel& lv : est.levels) {
            if (!lv.t2.finite) continue;
            const std::string tag = eps_tag(lv.t2.eps);
            try {
                const Decomposition D(f, lv.t2.eps, params, rules);
                lv.remainder_norm = D.remainder_norm(params.t());
                lv.f2_norm = D.f2_norm(params.p, params.alpha);
                double add = 0.0, svd = 0.0, scale = 0.0;
                for (int k = 0; k < P; ++k) {
                    const double r = 0.95 * std::sqrt((k + 0.5) / P);
                    const Vec x = dir2(2.399963229728653 * k).scaled(r);
                    const double fx = f.eval(x);
                    const double f2s = D.f2(x);
                    add = std::max(add, std::abs(D.f1(x) + f2s - fx));
                    if (!D.empty()) svd = std::max(svd, std::abs(f2s - D.f2_direct(x)));
                    scale = std::max(scale, std::abs(fx));
                }
                lv.additivity = add;
                lv.series_vs_direct = svd;
                const double tol = opt.additivity_tol * std::max(1.0, scale);
                est.report.add("additivity/" + tag, add, 0.0, tol, Check::le,
                               {{"series_vs_direct", json_number(svd)}, {"nodes", D.node_count()},
                                {"terms", D.coefficients().size()}, {"depth", json_number(D.depth())}});
                est.report.add("f2-finite/" + tag, std::isfinite(lv.f2_norm) ? 1 : 0, 1, 0, Check::flag,
                               {{"f2_norm", json_number(lv.f2_norm)},
                                {"remainder_norm", json_number(lv.remainder_norm)},
                                {"remainder_over_eps", json_number(lv.remainder_norm / lv.t2.eps)}});
                if (!D.empty() && lv.remainder_norm > 0.0) {
                    fit_eps.push_back(lv.t2.eps);
                    fit_rem.push_back(lv.remainder_norm);
                }
            } catch (const EvaluationError& e) {
                est.report.add("decompose/" + tag, 0, 1, 0, Check::flag, {{"error", e.what()}});
            }
        }
    }
    if (fit_eps.size() >= 3) {
        const DecayFit fit = fit_power_law(fit_eps, fit_rem);
        est.remainder_slope = fit.slope;
        est.report.add("remainder-slope", fit.slope, 1.0, opt.slope_tol, Check::abs, fit.to_json());
    }
    nlohmann::json lv = nlohmann::json::array();
    for (const DistanceLevel& l : est.levels) lv.push_back(l.t2.to_json());
    est.report.metadata["levels"] = lv;
    return est;
}

BallFunction boundary_kernel_function(double gamma, const Vec& e) {
    if (e.dim != 2) throw UnsupportedConfiguration("boundary_kernel_function: n = 2 only");
    require_unit(e);
    if (!(gamma > 0.0)) throw DomainError("boundary_kernel_function: need gamma > 0");
    return BallFunction::zonal(
        2, e,
        [gamma](double r, double th) {
            const double sh = std::sin(0.5 * th);
            const std::complex<double> w((1.0 - r) + 2.0 * r * sh * sh, -r * std::sin(th));
            return std::pow(w, -gamma).real();
        },
        1.0 - std::exp2(-30));
}

// ---------------------------------------------------------------------------------------------
// Half-space

void HalfSpaceDistanceParams::validate() const {
    if (n != 1) throw UnsupportedConfiguration("s2: implemented for n = 1");
    if (!(p > 1.0)) throw DomainError("s2: need p > 1");
    if (!(alpha > -1.0)) throw DomainError("s2: need alpha > -1");
    const double need = std::max(lambda() - 1.0, alpha / p);
    if (m < 0 || !(m > need)) throw DomainError("s2: need integer m > max(lambda - 1, alpha / p) = " + std::to_string(need));
}

nlohmann::json HalfSpaceDistanceParams::to_json() const {
    return {{"n", n}, {"p", p}, {"alpha", alpha}, {"m", m}, {"lambda", lambda()}};
}

nlohmann::json S2Rules::to_json() const {
    return {{"rule", rule.descriptor()}, {"fit_j0", fit_j0}, {"fit_j1", fit_j1}};
}

nlohmann::json S2Value::to_json() const {
    return {{"eps", json_number(eps)},
            {"value", json_number(value)},
            {"tail", json_number(tail)},
            {"finite", finite},
            {"boundary_exponent", json_number(boundary_exponent)},
            {"decay_exponent", json_number(decay_exponent)}};
}

std::vector<S2Value> s2_integrals(const HalfSpaceFunction& f, const std::vector<double>& eps,
                                  const HalfSpaceDistanceParams& params, const S2Rules& rules) {
    params.validate();
    if (f.n != params.n) throw DomainError("s2: dimension mismatch");
    for (double e : eps)
        if (!(e > 0.0)) throw DomainError("s2: need eps > 0");
    if (eps.empty()) return {};
    const double lam = params.lambda();
    const int m = params.m;
    const std::vector<double> c = f.center.empty() ? std::vector<double>(1, 0.0) : f.center;

    std::vector<std::size_t> order(eps.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return eps[a] > eps[b]; });
    const double eps_min = eps[order.back()];

    struct WNode {
        double x, t, w, v;
    };
    std::vector<WNode> ws;
    for (const HalfSpaceNode& nd : halfspace_nodes(1, c, m - lam, rules.rule)) {
        const double v = std::abs(f(nd.x, nd.t)) * std::pow(nd.t, lam);
        if (v >= eps_min) ws.push_back({nd.x[0], nd.t, nd.w, v});
    }
    std::stable_sort(ws.begin(), ws.end(), [](const WNode& a, const WNode& b) { return a.v > b.v; });
    const std::size_t L = eps.size();

    // J at (x, t) for every level, as prefix sums in decreasing weighted modulus.
    auto inner = [&](double x, double t, std::vector<double>& J) {
        double sum = 0.0;
        std::size_t lev = 0;
        for (const WNode& w : ws) {
            while (lev < L && w.v < eps[order[lev]]) J[lev++] = sum;
            sum += std::abs(bergman_q_halfplane(m, x - w.x, t + w.t)) * w.w;
        }
        while (lev < L) J[lev++] = sum;
    };
    auto outer = [&](const std::vector<HalfSpaceNode>& zs) {
        std::vector<double> acc(L, 0.0), J(L);
        for (const HalfSpaceNode& z : zs) {
            inner(z.x[0], z.t, J);
            for (std::size_t l = 0; l < L; ++l) acc[l] += z.w * std::pow(J[l], params.p);
        }
        return acc;
    };
    const std::vector<double> body = outer(halfspace_nodes(1, c, params.alpha, rules.rule));
    const double R = rules.rule.R;
    const std::vector<double> dR = outer(halfspace_shell(1, c, params.alpha, rules.rule, R));
    const std::vector<double> dH = outer(halfspace_shell(1, c, params.alpha, rules.rule, 0.5 * R));

    std::vector<double> depths;
    for (int j = rules.fit_j0; j <= rules.fit_j1; ++j) depths.push_back(std::exp2(-j));
    const double sc = f.scale;
    std::vector<std::vector<double>> Jb(L, std::vector<double>());
    std::vector<double> eb(L, INFINITY);
    for (double off : {0.0, -sc, sc}) {
        std::vector<std::vector<double>> col(L);
        std::vector<double> J(L);
        for (double d : depths) {
            inner(c[0] + off, d, J);
            for (std::size_t l = 0; l < L; ++l) col[l].push_back(J[l]);
        }
        for (std::size_t l = 0; l < L; ++l) {
            const DecayFit fit = positive_fit(depths, col[l]);
            eb[l] = std::min(eb[l], fit.samples.empty() ? 0.0 : fit.slope);
        }
    }

    std::vector<S2Value> out(L);
    for (std::size_t l = 0; l < L; ++l) {
        S2Value& o = out[order[l]];
        o.eps = eps[order[l]];
        o.value = body[l];
        o.boundary_exponent = eb[l];
        if (dR[l] > 0.0 && dH[l] > 0.0) {
            o.decay_exponent = std::log2(dH[l] / dR[l]);
            o.tail = o.decay_exponent > 1.0 ? power_tail(dR[l], dH[l], R, o.decay_exponent) : INFINITY;
        } else {
            o.decay_exponent = INFINITY;
            o.tail = 0.0;
        }
        o.finite = params.p * o.boundary_exponent + params.alpha > -1.0 && o.decay_exponent > 1.0;
    }
    return out;
}

S2Value s2_integral(const HalfSpaceFunction& f, double eps, const HalfSpaceDistanceParams& params,
                    const S2Rules& rules) {
    return s2_integrals(f, {eps}, params, rules).front();
}

double halfspace_representation(const HalfSpaceFunction& f, int m, const HalfSpacePoint& z, const HalfSpaceRule& rule) {
    if (m < 0) throw DomainError("halfspace_representation: need m >= 0");
    if (z.dim() != f.n) throw DomainError("halfspace_representation: dimension mismatch");
    HalfSpaceRule r = rule;
    r.h0 = std::min(rule.h0, 0.25 * z.t);
    // f decays like |w|^-g, Q_m like |w|^-(n+m+1), s^m grows like |w|^m: density ~ R^-(g+1).
    return integrate_halfspace(
        [&](const std::vector<double>& y, double s) {
            double d2 = 0.0;
            for (int i = 0; i < f.n; ++i) d2 += (z.x[i] - y[i]) * (z.x[i] - y[i]);
            return f(y, s) * bergman_q_halfspace_profile(f.n, m, d2, z.t + s);
        },
        f.n, z.x, m, r, f.decay + 1.0);
}

} // namespace harmspace
