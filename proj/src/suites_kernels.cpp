// Suites over radial integrals, kernels and their asymptotics.

#include <algorithm>
#include <cmath>
#include <numbers>

#include "harmspace/halfspace.hpp"
#include "harmspace/kernels.hpp"
#include "harmspace/norms.hpp"
#include "harmspace/quadrature.hpp"
#include "harmspace/special.hpp"
#include "harmspace/spharm.hpp"
#include "suite_support.hpp"

namespace harmspace::suite {

using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;

double one_minus_cos(double theta) {
    const double s = std::sin(0.5 * theta);
    return 2.0 * s * s;
}

/// Adds a slope case: |fitted - expected| <= tol, with the samples in the detail.
void add_slope(VerificationReport& r, const std::string& id, const DecayFit& fit, double expected, double tol,
               json extra = json::object()) {
    extra["fit"] = fit.to_json();
    r.add(id, fit.slope, expected, tol, Check::abs, std::move(extra));
}

} // namespace

VerificationReport gamma_exact(Context& ctx) {
    const Params& P = ctx.params;
    const auto S = P.nums("s"), T = P.nums("t");
    const auto N = P.ints("n");
    const int order = P.integer("order"), depth = P.integer("depth");
    const double tol = P.num("tol");
    P.require(order >= 2 && depth >= 1, "order >= 2 and depth >= 1");
    P.require(tol > 0, "tol > 0");
    for (double s : S) P.require(s > -1, "s > -1");
    for (int n : N) P.require(n >= 2, "n >= 2");
    for (double t : T)
        for (int n : N) P.require(2 * t + n > 0, "2t + n > 0");

    VerificationReport rep;
    for (int n : N)
        for (double s : S)
            for (double t : T) {
                // (1 - r^2)^s = (1 + r)^s (1 - r)^s: the rule carries (1 - r)^s and r^(2t + n - 1) exactly.
                const double a = 2 * t + n - 1;
                const RadialRule rule(order, depth, s, a);
                const double q = integrate_radial([s](double r) { return std::pow(1.0 + r, s); }, s, rule);
                const double exact = radial_gamma_integral(s, t, n);
                rep.add("n=" + std::to_string(n) + "/s=" + tag(s) + "/t=" + tag(t), q, exact, tol, Check::rel,
                        {{"closed_form", json_number(exact)}, {"rule", rule.descriptor()}});
            }
    return rep;
}

VerificationReport poisson_consistency(Context& ctx) {
    const Params& P = ctx.params;
    const int samples = P.integer("samples"), kmax = P.integer("addition_kmax"), pairs = P.integer("addition_pairs");
    const double r_max = P.num("r_max"), tol = P.num("tol"), atol = P.num("addition_tol");
    P.require(samples >= 1 && pairs >= 1, "samples >= 1 and addition_pairs >= 1");
    P.require(r_max >= 0 && r_max < 1, "0 <= r_max < 1");
    P.require(kmax >= 0 && kmax <= 60, "0 <= addition_kmax <= 60");
    P.require(tol > 0 && atol > 0, "tolerances > 0");

    VerificationReport rep;
    struct Sample {
        int n, K;
        double r, closed, series, err;
    };
    const auto res = parallel_map(static_cast<std::size_t>(samples), ctx.threads, [&](std::size_t i) {
        auto rng = case_rng(ctx, i);
        const int n = i % 2 == 0 ? 2 : 3;
        const double r = uniform(rng, 0.0, r_max);
        const Vec xd = random_direction(n, rng), y = random_direction(n, rng);
        int K = 0;
        while (poisson_series_tail_bound(n, r, K) > 1e-13) ++K;
        const BallPoint x(r, xd);
        const double c = poisson_ball(x, y), s = poisson_ball_series(x, y, K);
        return Sample{n, K, r, c, s, std::abs(s - c) / std::max(1.0, std::abs(c))};
    });
    for (std::size_t i = 0; i < res.size(); ++i) {
        const Sample& s = res[i];
        rep.add("series/" + std::to_string(i), s.err, 0.0, tol, Check::le,
                {{"n", s.n}, {"r", s.r}, {"K", s.K}, {"closed", s.closed}, {"series", s.series}});
    }

    // Unit mass on the sphere.
    for (int n : {2, 3})
        for (double r : {0.0, 0.5, 0.9}) {
            const Rule1D z = zonal_rule(n, std::max(1.0 - r, 1e-3), 24);
            const double mass = z.integrate([&](double th) { return poisson_ball_profile(n, r, one_minus_cos(th)); });
            rep.add("mass/n=" + std::to_string(n) + "/r=" + tag(r), mass, 1.0, atol, Check::abs);
        }

    // Addition theorem, worst case over the pairs for each (n, k).
    for (int n : {2, 3}) {
        std::vector<double> worst(static_cast<std::size_t>(kmax) + 1, 0.0);
        for (int i = 0; i < pairs; ++i) {
            auto rng = case_rng(ctx, static_cast<std::uint64_t>(samples + n * pairs + i));
            const Vec x = random_direction(n, rng), y = random_direction(n, rng);
            for (int k = 0; k <= kmax; ++k) {
                double sum = 0.0;
                for (int j = 1; j <= dim_harmonics(n, k); ++j) sum += basis_eval(n, k, j, x) * basis_eval(n, k, j, y);
                const double err = std::abs(sum - zonal(n, k, x, y)) / dim_harmonics(n, k);
                worst[static_cast<std::size_t>(k)] = std::max(worst[static_cast<std::size_t>(k)], err);
            }
        }
        for (int k = 0; k <= kmax; ++k)
            rep.add("addition/n=" + std::to_string(n) + "/k=" + std::to_string(k), worst[static_cast<std::size_t>(k)],
                    0.0, atol, Check::le, {{"pairs", pairs}, {"scale", "d_k"}});
    }
    return rep;
}

VerificationReport rro(Context& ctx) {
    const Params& P = ctx.params;
    const auto pairs = P.tuples("pairs", 2);
    const int j0 = P.integer("j0"), j1 = P.integer("j1"), order = P.integer("order");
    const double stol = P.num("slope_tol");
    P.require(j0 >= 1 && j1 - j0 >= 7 && j1 <= 40, "1 <= j0, j1 - j0 >= 7, j1 <= 40");
    P.require(order >= 4, "order >= 4");
    for (const auto& pr : pairs) {
        P.require(pr[0] > -1, "alpha > -1");
        P.require(pr[1] > pr[0] + 1, "lambda > alpha + 1");
    }
    VerificationReport rep;
    for (const auto& pr : pairs) {
        const double a = pr[0], lam = pr[1];
        // In u = 1 - r: int_0^1 u^alpha (1 - rho + rho u)^-lambda du, graded toward u = 0 at scale 1 - rho.
        auto g = [&](double rho) {
            const Rule1D q = graded_rule(0.0, 1.0, 0.25 * (1.0 - rho), order, a);
            return q.integrate([&](double u) { return std::pow(1.0 - rho + rho * u, -lam); });
        };
        const DecayFit fit = fit_decay_exponent(g, dyadic_grid(j0, j1));
        add_slope(rep, "alpha=" + tag(a) + "/lambda=" + tag(lam), fit, a + 1 - lam, stol);
    }
    return rep;
}

namespace {

struct StepFunction {
    std::vector<double> at;      // jump locations, increasing, in (0, 1)
    std::vector<double> level;   // value on [at[i-1], at[i]), level[0] on [0, at[0])
};

/// int_a^b (1 - r)^e (1 - rho r)^-g r^alpha dr for 0 <= a < b <= 1: graded in r near 0 when a = 0,
/// graded in u = 1 - r toward the scale 1 - rho and exact in u^e when b = 1.
double piece_integral(double a, double b, double e, double g, double alpha, double rho, int order) {
    double total = 0.0;
    if (a < 0.5) {
        const double hi = std::min(b, 0.5);
        const Rule1D q = a == 0.0 ? graded_rule(0.0, hi, 0.5 * hi, order, alpha) : gauss_on(a, hi, order);
        total += q.integrate([&](double r) {
            const double w = std::pow(1.0 - r, e) * std::pow(1.0 - rho * r, -g);
            return a == 0.0 ? w : w * std::pow(r, alpha);
        });
    }
    if (b > 0.5) {
        const double u_lo = 1.0 - b, u_hi = 1.0 - std::max(a, 0.5);
        const double h0 = std::max(1.0 - rho, u_lo) * 0.5;
        const bool edge = u_lo == 0.0;
        const Rule1D q = graded_rule(u_lo, u_hi, std::min(h0, 0.5 * (u_hi - u_lo)), order, edge ? e : 0.0);
        total += q.integrate([&](double u) {
            const double r = 1.0 - u;
            const double w = std::pow(1.0 - rho * r, -g) * std::pow(r, alpha);
            return edge ? w : w * std::pow(u, e);
        });
    }
    return total;
}

double wellkn_ratio(const StepFunction& G, double q, double alpha, double beta, double gamma, double rho, int order) {
    double lhs = 0.0, rhs = 0.0;
    double lo = 0.0;
    for (std::size_t i = 0; i <= G.at.size(); ++i) {
        const double hi = i < G.at.size() ? G.at[i] : 1.0;
        if (hi > lo) {
            const double v = G.level[i];
            lhs += v * piece_integral(lo, hi, beta, gamma, alpha, rho, order);
            rhs += std::pow(v, q) * piece_integral(lo, hi, beta * q + q - 1, q * gamma, alpha, rho, order);
        }
        lo = hi;
    }
    return std::pow(lhs, q) / rhs;
}

} // namespace

VerificationReport wellkn(Context& ctx) {
    const Params& P = ctx.params;
    const int nf = P.integer("functions"), steps = P.integer("steps"), jmax = P.integer("jmax"), order = P.integer("order");
    const auto Q = P.nums("q");
    const double alpha = P.num("alpha"), beta = P.num("beta"), gamma = P.num("gamma"), factor = P.num("stability_factor");
    P.require(nf >= 1 && steps >= 1, "functions >= 1 and steps >= 1");
    P.require(jmax >= 2 && jmax <= 24, "2 <= jmax <= 24");
    P.require(order >= 4, "order >= 4");
    P.require(alpha > -1, "alpha > -1");
    P.require(beta > -1, "beta > -1");
    P.require(gamma >= 0, "gamma >= 0");
    for (double q : Q) P.require(q > 0 && q <= 1, "0 < q <= 1");
    P.require(factor >= 1, "stability_factor >= 1");

    std::vector<double> coarse, fine;
    for (int j = 0; j <= jmax; ++j) coarse.push_back(j == 0 ? 0.0 : 1.0 - std::exp2(-j));
    for (int h = 0; h <= 4 * jmax; ++h) fine.push_back(h == 0 ? 0.0 : 1.0 - std::exp2(-0.5 * h));

    struct Out {
        std::vector<double> C, Cf;
        std::vector<double> at, level;
    };
    const auto res = parallel_map(static_cast<std::size_t>(nf), ctx.threads, [&](std::size_t i) {
        auto rng = case_rng(ctx, i);
        StepFunction G;
        for (int s = 0; s < steps; ++s) G.at.push_back(1.0 - std::exp2(-uniform(rng, 0.0, 12.0)));
        std::sort(G.at.begin(), G.at.end());
        double v = std::exp(0.5 * std::log(uniform(rng, 0.05, 1.0)));
        G.level.push_back(v);
        for (int s = 0; s < steps; ++s) {
            // Log-uniform increments spanning three decades.
            v += std::pow(10.0, uniform(rng, -1.5, 1.5));
            G.level.push_back(v);
        }
        Out o{{}, {}, G.at, G.level};
        for (double q : Q) {
            double c = 0.0, cf = 0.0;
            for (double rho : coarse) c = std::max(c, wellkn_ratio(G, q, alpha, beta, gamma, rho, order));
            for (double rho : fine) cf = std::max(cf, wellkn_ratio(G, q, alpha, beta, gamma, rho, order));
            o.C.push_back(c);
            o.Cf.push_back(cf);
        }
        return o;
    });

    VerificationReport rep;
    for (std::size_t qi = 0; qi < Q.size(); ++qi) {
        double cmax = 0.0, cfmax = 0.0;
        for (std::size_t i = 0; i < res.size(); ++i) {
            const double c = res[i].C[qi], cf = res[i].Cf[qi];
            cmax = std::max(cmax, c);
            cfmax = std::max(cfmax, cf);
            // Grid doubling may only raise the sup; it must not raise it beyond the factor.
            rep.add("q=" + tag(Q[qi]) + "/G" + std::to_string(i) + "/doubling", cf / c, 1.0, factor - 1.0, Check::le,
                    {{"C", json_number(c)}, {"C_refined", json_number(cf)}, {"jumps", res[i].at},
                     {"levels", res[i].level}});
        }
        rep.add("q=" + tag(Q[qi]) + "/C-finite", std::isfinite(cfmax) ? 1.0 : 0.0, 1.0, 0.0, Check::flag,
                {{"C", json_number(cmax)}, {"C_refined", json_number(cfmax)}});
        rep.add("q=" + tag(Q[qi]) + "/C-doubling", cfmax / cmax, 1.0, factor - 1.0, Check::le);
    }
    return rep;
}

VerificationReport qbeta(Context& ctx) {
    const Params& P = ctx.params;
    const int n = P.integer("n"), j0 = P.integer("j0"), j1 = P.integer("j1"), order = P.integer("order");
    const auto B = P.ints("beta");
    const auto D = P.nums("delta"), G = P.nums("gamma_offsets");
    const double stol = P.num("slope_tol");
    P.require(n == 2 || n == 3, "n in {2, 3}");
    for (int b : B) P.require(b > 0, "integer beta > 0");
    for (double d : D) P.require(d > -1, "delta > -1");
    for (double g : G) P.require(g > 0, "gamma > n + delta (gamma_offsets > 0)");
    P.require(j0 >= 1 && j1 - j0 >= 7 && j1 <= 30, "1 <= j0, j1 - j0 >= 7, j1 <= 30");
    P.require(order >= 4, "order >= 4");

    struct Job {
        int beta;
        double delta, gamma;
    };
    std::vector<Job> jobs;
    for (int b : B)
        for (double d : D)
            for (double g : G) jobs.push_back({b, d, n + d + g});
    const auto fits = parallel_map(jobs.size(), ctx.threads, [&](std::size_t i) {
        const Job J = jobs[i];
        const BergmanKernelBall Q(n, J.beta);
        const double power = J.gamma / (n + J.beta);
        // I(r) with x = r e: outer u = 1 - |y| graded at scale 1 - r with weight u^delta,
        // inner zonal rule about e at angular scale 1 - r |y|.
        auto I = [&](double r) {
            const Rule1D outer = graded_rule(0.0, 1.0, 0.25 * (1.0 - r), order, J.delta);
            return outer.integrate([&](double u) {
                const double rho = 1.0 - u, s = r * rho;
                const Rule1D inner = zonal_rule(n, std::max(1.0 - s, 1e-12), order);
                const double in = inner.integrate(
                    [&](double th) { return std::pow(std::abs(Q.profile(s, one_minus_cos(th))), power); });
                return in * std::pow(rho, n - 1);
            });
        };
        return fit_decay_exponent(I, dyadic_grid(j0, j1));
    });
    VerificationReport rep;
    for (std::size_t i = 0; i < jobs.size(); ++i)
        add_slope(rep, "beta=" + std::to_string(jobs[i].beta) + "/delta=" + tag(jobs[i].delta) + "/gamma=" +
                           tag(jobs[i].gamma),
                  fits[i], jobs[i].delta - jobs[i].gamma + n, stol, {{"n", n}});
    return rep;
}

VerificationReport kernel_estimates(Context& ctx) {
    const Params& P = ctx.params;
    const auto qcases = P.tuples("q_cases", 2);
    const auto boffs = P.nums("b_offsets");
    const auto N = P.ints("n");
    const int j0 = P.integer("j0"), j1 = P.integer("j1"), order = P.integer("order"), samples = P.integer("bound_samples");
    const double stol = P.num("slope_tol");
    for (const auto& c : qcases) {
        P.require(c[0] == 2 || c[0] == 3, "q_cases: n in {2, 3}");
        P.require(c[1] > -1, "q_cases: beta > -1");
        P.require(c[0] == 2 || c[1] == std::floor(c[1]), "q_cases: non-integer beta needs n = 2");
    }
    for (int n : N) P.require(n == 2 || n == 3, "n in {2, 3}");
    for (double b : boffs) P.require(b > 0, "b > n - 1 (b_offsets > 0)");
    P.require(j0 >= 1 && j1 - j0 >= 7 && j1 <= 30, "1 <= j0, j1 - j0 >= 7, j1 <= 30");
    P.require(order >= 4 && samples >= 1, "order >= 4 and bound_samples >= 1");

    VerificationReport rep;
    const auto grid = dyadic_grid(j0, j1);

    // Spherical integral of |Q_beta| as s = r rho -> 1.
    for (const auto& c : qcases) {
        const int n = static_cast<int>(c[0]);
        const double beta = c[1];
        const bool integer = beta == std::floor(beta);
        const BergmanKernelBall Q(n, integer ? beta : 0.0);
        auto I = [&](double s) {
            const Rule1D z = zonal_rule(n, 1.0 - s, order);
            return z.integrate([&](double th) {
                return integer ? std::abs(Q.profile(s, one_minus_cos(th))) : std::abs(bergman_q_disc(beta, s, 1.0, th));
            });
        };
        add_slope(rep, "sphere-Q/n=" + std::to_string(n) + "/beta=" + tag(beta), fit_decay_exponent(I, grid),
                  -(1 + beta), stol);
    }

    // Spherical integral of |r x' - y'|^-b.
    for (int n : N)
        for (double off : boffs) {
            const double b = n - 1 + off;
            auto I = [&](double r) {
                const Rule1D z = zonal_rule(n, 1.0 - r, order);
                return z.integrate([&](double th) {
                    const double d2 = (1.0 - r) * (1.0 - r) + 2.0 * r * one_minus_cos(th);
                    return std::pow(d2, -0.5 * b);
                });
            };
            add_slope(rep, "sphere-distance/n=" + std::to_string(n) + "/b=" + tag(b), fit_decay_exponent(I, grid),
                      -(b - n + 1), stol);
        }

    // Pointwise bound |Q_beta(x, y)| |rho x - y'|^(n + beta) <= C for integer beta, with samples
    // concentrated toward the singularity s -> 1, x' -> y'.
    for (const auto& c : qcases) {
        const int n = static_cast<int>(c[0]);
        const double beta = c[1];
        if (beta != std::floor(beta) || beta <= 0) continue;
        const BergmanKernelBall Q(n, beta);
        auto rng = case_rng(ctx, static_cast<std::uint64_t>(1000 * n + beta));
        double half = 0.0, all = 0.0;
        for (int i = 0; i < 2 * samples; ++i) {
            const double s = 1.0 - std::exp2(-uniform(rng, 0.0, 20.0));
            const double omu = 2.0 * std::exp2(-uniform(rng, 0.0, 40.0));
            const double d2 = (1.0 - s) * (1.0 - s) + 2.0 * s * omu;
            const double v = std::abs(Q.profile(s, omu)) * std::pow(d2, 0.5 * (n + beta));
            all = std::max(all, v);
            if (i < samples) half = std::max(half, v);
        }
        const std::string id = "pointwise/n=" + std::to_string(n) + "/beta=" + tag(beta);
        if (n == 2) {
            // From Q = 4(beta+1) Re (1 - z)^-(beta+2) - 2(beta+1) and |1 - z| <= 2.
            const double C = (beta + 1) * (4 + std::pow(2.0, beta + 3));
            rep.add(id, all, C, 0.0, Check::le, {{"samples", 2 * samples}, {"bound", "analytic"}});
        } else {
            rep.add(id, all / half, 1.0, 1.0, Check::le,
                    {{"C", all}, {"C_half", half}, {"samples", 2 * samples}, {"bound", "sample doubling"}});
        }
        rep.add(id + "/finite", std::isfinite(all) ? 1.0 : 0.0, 1.0, 0.0, Check::flag);
    }
    return rep;
}

VerificationReport qm(Context& ctx) {
    const Params& P = ctx.params;
    const auto N = P.ints("n"), M = P.ints("m");
    const auto D = P.nums("delta"), G = P.nums("gamma_offsets");
    const int j0 = P.integer("j0"), j1 = P.integer("j1"), samples = P.integer("bound_samples");
    const double stol = P.num("slope_tol");
    for (int n : N) P.require(n == 1 || n == 2, "n in {1, 2}");
    for (int m : M) P.require(m >= 0, "integer m >= 0");
    for (double d : D) P.require(d > -1, "delta > -1");
    for (double g : G) P.require(g > 0, "gamma > n + 1 + delta (gamma_offsets > 0)");
    P.require(j0 >= 0 && j1 - j0 >= 3 && j1 <= 20, "0 <= j0, j1 - j0 >= 3, j1 <= 20");
    P.require(samples >= 1, "bound_samples >= 1");

    struct Job {
        int n, m;
        double delta, gamma;
    };
    std::vector<Job> jobs;
    for (int n : N)
        for (int m : M)
            for (double d : D)
                for (double g : G) jobs.push_back({n, m, d, n + 1 + d + g});
    const auto fits = parallel_map(jobs.size(), ctx.threads, [&](std::size_t i) {
        const Job J = jobs[i];
        const double power = J.gamma / (J.n + J.m + 1);
        std::vector<double> ts, vals;
        for (int j = j0; j <= j1; ++j) {
            const double t = std::exp2(-j);
            // Q_m(z, w) with z = (0, t) depends on |y|^2 and t + s; the rule is graded at the scale t.
            const HalfSpaceRule rule{16, std::min(0.125, 0.25 * t), 1e4, 32};
            auto F = [&](const std::vector<double>& y, double s) {
                double d2 = 0.0;
                for (double v : y) d2 += v * v;
                return std::pow(std::abs(bergman_q_halfspace_profile(J.n, J.m, d2, t + s)), power);
            };
            ts.push_back(t);
            vals.push_back(integrate_halfspace(F, J.n, std::vector<double>(J.n, 0.0), J.delta, rule,
                                               J.gamma - J.delta - J.n));
        }
        return fit_power_law(ts, vals);
    });
    VerificationReport rep;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        const Job& J = jobs[i];
        add_slope(rep, "integral/n=" + std::to_string(J.n) + "/m=" + std::to_string(J.m) + "/delta=" + tag(J.delta) +
                           "/gamma=" + tag(J.gamma),
                  fits[i], J.delta - J.gamma + J.n + 1, stol);
    }

    // |Q_m| [|x - y|^2 + (s + t)^2]^((n+m+1)/2) is homogeneous of degree 0, a function of the angle
    // psi = atan(|x - y| / (s + t)) in [0, pi/2]. Its sup, by grid and golden search, bounds random samples.
    for (int n : N)
        for (int m : M) {
            const double e = 0.5 * (n + m + 1);
            auto h = [&](double psi) {
                const double d2 = std::sin(psi) * std::sin(psi), tau = std::cos(psi);
                return std::abs(bergman_q_halfspace_profile(n, m, d2, tau));
            };
            double best = 0.0, arg = 0.0;
            const int cells = 256;
            for (int i = 0; i < cells; ++i) {
                const double a = 0.5 * pi * i / cells, b = 0.5 * pi * (i + 1) / cells;
                const auto [x, v] = maximize_1d(h, a, b, 1e-13);
                if (v > best) best = v, arg = x;
            }
            auto rng = case_rng(ctx, static_cast<std::uint64_t>(5000 + 10 * n + m));
            double worst = 0.0;
            for (int i = 0; i < samples; ++i) {
                const double t = std::exp2(uniform(rng, -20.0, 5.0)), s = std::exp2(uniform(rng, -20.0, 5.0));
                const double d = std::exp2(uniform(rng, -25.0, 8.0));
                const double d2 = d * d, tau = s + t;
                const double v = std::abs(bergman_q_halfspace_profile(n, m, d2, tau)) * std::pow(d2 + tau * tau, e);
                worst = std::max(worst, v);
            }
            rep.add("pointwise/n=" + std::to_string(n) + "/m=" + std::to_string(m), worst, best, best * 1e-9,
                    Check::le, {{"C", best}, {"psi_max", arg}, {"samples", samples}});
        }
    return rep;
}

VerificationReport fy_estimates(Context& ctx) {
    const Params& P = ctx.params;
    const int n = P.integer("n"), j0 = P.integer("j0"), j1 = P.integer("j1");
    const double m = P.num("m"), alpha = P.num("alpha"), p = P.num("p"), stol = P.num("slope_tol");
    P.require(n == 2 || n == 3, "n in {2, 3}");
    P.require(m == std::floor(m) && m >= 1, "m a positive integer (M_inf and B^{p,inf} estimates)");
    P.require(alpha > 0, "alpha > 0");
    P.require(m > alpha, "m > alpha");
    P.require(p >= 1, "p >= 1");
    P.require(j0 >= 1 && j1 - j0 >= 3 && j1 <= 14, "1 <= j0, j1 - j0 >= 3, j1 <= 14");

    struct Estimate {
        std::string id;
        double slope;
    };
    const std::vector<Estimate> est{{"M_inf", -n - m},           {"M_1", -1 - m},
                                    {"B^{p,1}", alpha - 1 - m},  {"B^{p,inf}", alpha - n - m},
                                    {"A^1", alpha - m},          {"H^1", alpha - 1 - m}};
    std::vector<double> ds;
    for (int j = j0; j <= j1; ++j) ds.push_back(std::exp2(-j));
    // rows: estimate, columns: |y|
    const auto cols = parallel_map(ds.size(), ctx.threads, [&](std::size_t i) {
        const double ry = 1.0 - ds[i];
        const BallFunction f = kernel_function(m, BallPoint(ry, Vec::axis(n, 0)));
        return std::vector<double>{radial_mean(f, INFINITY, ry),
                                   radial_mean(f, 1.0, ry),
                                   space_norm(f, SpaceSpec::B(p, 1.0, alpha)).value,
                                   space_norm(f, SpaceSpec::B(p, INFINITY, alpha)).value,
                                   space_norm(f, SpaceSpec::A(1.0, alpha)).value,
                                   space_norm(f, SpaceSpec::H(1.0, alpha)).value};
    });
    VerificationReport rep;
    for (std::size_t e = 0; e < est.size(); ++e) {
        std::vector<double> v;
        for (const auto& c : cols) v.push_back(c[e]);
        add_slope(rep, est[e].id, fit_power_law(ds, v), est[e].slope, stol,
                  {{"n", n}, {"m", m}, {"alpha", alpha}, {"p", p}});
    }
    return rep;
}

} // namespace harmspace::suite
