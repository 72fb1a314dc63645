#include "harmspace/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "harmspace/error.hpp"
#include "harmspace/simd.hpp"

namespace harmspace {

void Rule1D::append(const Rule1D& o) {
    x.insert(x.end(), o.x.begin(), o.x.end());
    w.insert(w.end(), o.w.begin(), o.w.end());
}

double Rule1D::integrate(const std::function<double(double)>& f) const {
    std::vector<double> v(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        v[i] = f(x[i]);
        if (!std::isfinite(v[i])) throw EvaluationError("non-finite integrand", x[i]);
    }
    return simd::dot(v, w);
}

Rule1D gauss_legendre(int N) {
    if (N < 1) throw DomainError("gauss_legendre: need at least one node");
    Rule1D r;
    r.x.resize(static_cast<std::size_t>(N));
    r.w.resize(static_cast<std::size_t>(N));
    const double pi = std::numbers::pi;
    for (int i = 0; i < (N + 1) / 2; ++i) {
        double z = std::cos(pi * (i + 0.75) / (N + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= N; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (N == 1) p0 = 1.0;
            dp = N * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= N; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (N == 1) p0 = 1.0;
            dp = N * (z * p1 - p0) / (z * z - 1.0);
        }
        const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
        r.x[static_cast<std::size_t>(i)] = -z;
        r.x[static_cast<std::size_t>(N - 1 - i)] = z;
        r.w[static_cast<std::size_t>(i)] = wi;
        r.w[static_cast<std::size_t>(N - 1 - i)] = wi;
    }
    if (N % 2 == 1) r.x[static_cast<std::size_t>(N / 2)] = 0.0;
    return r;
}

Rule1D gauss_jacobi(int N, double a, double b) {
    if (N < 1) throw DomainError("gauss_jacobi: need at least one node");
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
    if (a == 0.0 && b == 0.0) return gauss_legendre(N);
    Eigen::VectorXd diag(N), off(std::max(N - 1, 1));
    const double ab = a + b;
    for (int k = 0; k < N; ++k) {
        if (k == 0) {
            diag(0) = (b - a) / (ab + 2.0);
        } else {
            const double s = 2.0 * k + ab;
            diag(k) = (b * b - a * a) / (s * (s + 2.0));
        }
    }
    for (int k = 1; k < N; ++k) {
        double beta;
        if (k == 1) {
            beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            const double s = 2.0 * k + ab;
            beta = 4.0 * k * (k + a) * (k + b) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        off(k - 1) = std::sqrt(beta);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, off.head(std::max(N - 1, 0)), Eigen::ComputeEigenvectors);
    const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                                std::lgamma(ab + 2.0));
    Rule1D r;
    for (int i = 0; i < N; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        r.x.push_back(es.eigenvalues()(i));
        r.w.push_back(mu0 * v0 * v0);
    }
    return r;
}

Rule1D gauss_on(double a, double b, int N) {
    Rule1D g = gauss_legendre(N);
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.x[i] = c + h * g.x[i];
        g.w[i] *= h;
    }
    return g;
}

Rule1D graded_rule(double a, double b, double h0, int order, double endpoint_exponent) {
    if (!(b > a)) throw DomainError("graded_rule: empty interval");
    if (!(h0 > 0.0)) throw DomainError("graded_rule: grading scale must be positive");
    // Edges a, a + h0, a + 2 h0, a + 4 h0, ..., b.
    std::vector<double> edges{a};
    for (double e = a + h0; e < b; e = a + 2.0 * (e - a)) edges.push_back(e);
    if (edges.size() > 1 && b - edges.back() < 0.1 * (edges.back() - edges[edges.size() - 2])) edges.pop_back();
    edges.push_back(b);
    Rule1D out;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double lo = edges[p], hi = edges[p + 1];
        if (p == 0 && endpoint_exponent != 0.0) {
            Rule1D g = gauss_jacobi(order, 0.0, endpoint_exponent);
            const double h = hi - lo;
            const double scale = std::pow(0.5 * h, endpoint_exponent + 1.0);
            for (std::size_t i = 0; i < g.size(); ++i) {
                out.x.push_back(lo + 0.5 * h * (g.x[i] + 1.0));
                out.w.push_back(g.w[i] * scale);
            }
        } else {
            Rule1D g = gauss_on(lo, hi, order);
            if (endpoint_exponent != 0.0)
                for (std::size_t i = 0; i < g.size(); ++i) g.w[i] *= std::pow(g.x[i] - a, endpoint_exponent);
            out.append(g);
        }
    }
    return out;
}

RadialRule::RadialRule(int order_, int depth_, double alpha_, double origin_exponent_)
    : order(order_), depth(depth_), alpha(alpha_), origin_exponent(origin_exponent_) {
    if (order < 1) throw DomainError("RadialRule: order must be positive");
    if (depth < 1) throw DomainError("RadialRule: depth must be positive");
    if (!(alpha > -1.0)) throw DomainError("RadialRule: weight exponent must exceed -1");
    if (!(origin_exponent > -1.0)) throw DomainError("RadialRule: origin exponent must exceed -1");
    // First panel [0, 1/2].
    {
        Rule1D g = gauss_jacobi(order, 0.0, origin_exponent);
        const double scale = std::pow(0.25, origin_exponent + 1.0);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double r = 0.25 * (g.x[i] + 1.0);
            rule.x.push_back(r);
            rule.w.push_back(g.w[i] * scale * std::pow(1.0 - r, alpha));
        }
    }
    for (int k = 1; k < depth; ++k) {
        const double lo = 1.0 - std::ldexp(1.0, -k);
        const double hi = 1.0 - std::ldexp(1.0, -k - 1);
        Rule1D g = gauss_on(lo, hi, order);
        for (std::size_t i = 0; i < g.size(); ++i) {
            double w = g.w[i] * std::pow(1.0 - g.x[i], alpha);
            if (origin_exponent != 0.0) w *= std::pow(g.x[i], origin_exponent);
            rule.x.push_back(g.x[i]);
            rule.w.push_back(w);
        }
    }
    const double h = std::ldexp(1.0, -depth);
    Rule1D g = gauss_jacobi(order, alpha, 0.0);
    const double scale = std::pow(0.5 * h, alpha + 1.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double one_minus_r = 0.5 * h * (1.0 - g.x[i]);
        const double r = 1.0 - one_minus_r;
        double w = g.w[i] * scale;
        if (origin_exponent != 0.0) w *= std::pow(r, origin_exponent);
        rule.x.push_back(r);
        rule.w.push_back(w);
    }
}

RadialRule RadialRule::for_scale(int order, double scale, double alpha) {
    if (!(scale > 0.0)) throw DomainError("RadialRule::for_scale: scale must be positive");
    const int depth = std::max(2, static_cast<int>(std::ceil(std::log2(1.0 / scale))) + 4);
    return RadialRule(order, depth, alpha);
}

RadialRule RadialRule::weighted(double a, double origin) const { return RadialRule(order, depth, a, origin); }

nlohmann::json RadialRule::descriptor() const {
    return {{"dimension", 1}, {"order", order}, {"depth", depth}, {"alpha", alpha}};
}

RadialRule RadialRule::from_descriptor(const nlohmann::json& j) {
    return RadialRule(j.at("order").get<int>(), j.at("depth").get<int>(), j.value("alpha", 0.0));
}

SphereRule SphereRule::make(int n, int degree) {
    if (degree < 0) throw DomainError("SphereRule: negative degree");
    SphereRule s;
    s.dimension = n;
    s.degree = degree;
    const double pi = std::numbers::pi;
    if (n == 2) {
        const int N = degree + 1;
        for (int i = 0; i < N; ++i) {
            const double th = 2.0 * pi * i / N;
            s.nodes.emplace_back(std::cos(th), std::sin(th));
            s.weights.push_back(1.0 / N);
        }
    } else if (n == 3) {
        const int nt = std::max(1, (degree + 2) / 2);
        const int np = degree + 1;
        const Rule1D g = gauss_legendre(nt);
        for (int i = 0; i < nt; ++i) {
            const double z = g.x[static_cast<std::size_t>(i)];
            const double st = std::sqrt(std::max(0.0, 1.0 - z * z));
            for (int j = 0; j < np; ++j) {
                const double ph = 2.0 * pi * j / np;
                s.nodes.emplace_back(st * std::cos(ph), st * std::sin(ph), z);
                s.weights.push_back(g.w[static_cast<std::size_t>(i)] / (2.0 * np));
            }
        }
    } else {
        throw DomainError("SphereRule: dimension must be 2 or 3");
    }
    return s;
}

Rule1D zonal_rule(int n, double h0, int order) {
    const double pi = std::numbers::pi;
    Rule1D g = graded_rule(0.0, pi, std::min(h0, pi), order);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (n == 2) g.w[i] /= pi;
        else if (n == 3) g.w[i] *= 0.5 * std::sin(g.x[i]);
        else throw DomainError("zonal_rule: dimension must be 2 or 3");
    }
    return g;
}

SphereRule SphereRule::axial(int n, const Vec& axis, double h0, int order, int n_phi) {
    require_unit(axis, 1e-10);
    const double pi = std::numbers::pi;
    SphereRule s;
    s.dimension = n;
    s.degree = -1;
    const Rule1D t = graded_rule(0.0, pi, std::min(h0, pi), order);
    if (n == 2) {
        const Vec perp(-axis[1], axis[0]);
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double c = std::cos(t.x[i]), sn = std::sin(t.x[i]);
            s.nodes.push_back((axis.scaled(c) + perp.scaled(sn)).normalized());
            s.weights.push_back(t.w[i] / (2.0 * pi));
            s.nodes.push_back((axis.scaled(c) - perp.scaled(sn)).normalized());
            s.weights.push_back(t.w[i] / (2.0 * pi));
        }
    } else if (n == 3) {
        // Orthonormal frame (a, b, axis).
        const Vec helper = std::abs(axis[2]) < 0.9 ? Vec(0.0, 0.0, 1.0) : Vec(1.0, 0.0, 0.0);
        Vec a = helper - axis.scaled(helper.dot(axis));
        a = a.normalized();
        const Vec b(axis[1] * a[2] - axis[2] * a[1], axis[2] * a[0] - axis[0] * a[2], axis[0] * a[1] - axis[1] * a[0]);
        for (std::size_t i = 0; i < t.size(); ++i) {
            const double c = std::cos(t.x[i]), sn = std::sin(t.x[i]);
            for (int j = 0; j < n_phi; ++j) {
                const double ph = 2.0 * pi * j / n_phi;
                const Vec v = axis.scaled(c) + a.scaled(sn * std::cos(ph)) + b.scaled(sn * std::sin(ph));
                s.nodes.push_back(v.normalized());
                s.weights.push_back(t.w[i] * 0.5 * sn / n_phi);
            }
        }
    } else {
        throw DomainError("SphereRule::axial: dimension must be 2 or 3");
    }
    return s;
}

nlohmann::json SphereRule::descriptor() const {
    return {{"dimension", dimension}, {"order", degree}, {"depth", 0}};
}

double integrate_radial(const std::function<double(double)>& f, double alpha, const RadialRule& rule) {
    if (!(alpha > -1.0)) throw DomainError("integrate_radial: weight exponent must exceed -1");
    if (alpha == rule.alpha) return rule.rule.integrate(f);
    return rule.weighted(alpha, rule.origin_exponent).rule.integrate(f);
}

double integrate_sphere(const std::function<double(const Vec&)>& f, const SphereRule& rule) {
    std::vector<double> v(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i) {
        if (rule.nodes[i].dim != rule.dimension) throw DomainError("integrate_sphere: dimension mismatch");
        v[i] = f(rule.nodes[i]);
        if (!std::isfinite(v[i])) throw EvaluationError("non-finite spherical integrand", static_cast<double>(i));
    }
    return simd::dot(v, rule.weights);
}

nlohmann::json DecayFit::to_json() const {
    nlohmann::json s = nlohmann::json::array();
    for (const auto& [r, v] : samples) s.push_back({r, v});
    return {{"slope", slope}, {"intercept", intercept}, {"residual", residual}, {"samples", s}};
}

DecayFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_power_law: need two or more samples");
    DecayFit fit;
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0)) throw DomainError("fit_power_law: abscissa must be positive");
        if (!(y[i] > 0.0) || !std::isfinite(y[i])) throw DomainError("fit_power_law: sample must be positive");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
        fit.samples.emplace_back(x[i], y[i]);
    }
    const double m = static_cast<double>(lx.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit_power_law: abscissae must be distinct");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rr = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
        rr += e * e;
    }
    fit.residual = std::sqrt(rr / m);
    return fit;
}

DecayFit fit_decay_exponent(const std::function<double(double)>& g, const std::vector<double>& rho_grid) {
    if (rho_grid.size() < 8) throw DomainError("fit_decay_exponent: need at least 8 grid points");
    double lo = 1.0, hi = 0.0;
    for (double r : rho_grid) {
        if (!(r < 1.0)) throw DomainError("fit_decay_exponent: grid points must be below 1");
        lo = std::min(lo, 1.0 - r);
        hi = std::max(hi, 1.0 - r);
    }
    if (std::log10(hi / lo) < 2.0 - 1e-9) throw DomainError("fit_decay_exponent: grid must span two decades");
    std::vector<double> x, y;
    for (double r : rho_grid) {
        const double v = g(r);
        if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("fit_decay_exponent: non-positive sample");
        x.push_back(1.0 - r);
        y.push_back(v);
    }
    DecayFit fit = fit_power_law(x, y);
    for (std::size_t i = 0; i < fit.samples.size(); ++i) fit.samples[i].first = rho_grid[i];
    return fit;
}

std::vector<double> dyadic_grid(int j0, int j1, double step) {
    std::vector<double> g;
    for (double j = j0; j <= j1 + 1e-12; j += step) g.push_back(1.0 - std::exp2(-j));
    return g;
}

std::pair<double, double> maximize_1d(const std::function<double(double)>& f, double a, double b, double tol) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc >= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

} // namespace harmspace
