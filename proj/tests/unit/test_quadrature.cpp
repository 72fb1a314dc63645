#include <doctest.h>

#include <cmath>

#include "harmspace/error.hpp"
#include "harmspace/quadrature.hpp"
#include "harmspace/special.hpp"
#include "harmspace/spharm.hpp"

using namespace harmspace;

TEST_CASE("radial rule integrates constants") {
    for (int order : {16, 20}) {
        const RadialRule r(order, 20);
        CHECK(integrate_radial([](double) { return 1.0; }, 0.0, r) == doctest::Approx(1.0).epsilon(1e-12));
        for (double x : r.nodes()) {
            CHECK(x >= 0.0);
            CHECK(x < 1.0);
        }
        for (double w : r.weights()) CHECK(w > 0.0);
    }
}

TEST_CASE("radial rule reproduces the Gamma closed form") {
    const RadialRule base(16, 24);
    for (double s : {-0.5, 0.0, 1.0, 2.5})
        for (double t : {0.0, 0.5, 3.0})
            for (int n : {2, 3}) {
                const double q = integrate_radial(
                    [&](double r) { return std::pow(1.0 + r, s) * std::pow(r, 2 * t + n - 1); }, s, base);
                CHECK(q == doctest::Approx(radial_gamma_integral(s, t, n)).epsilon(1e-10));
            }
    CHECK(integrate_radial([](double r) { return (1 + r) * r; }, 1.0, base) ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("radial rule against a dense midpoint sum") {
    // Oracle: composite midpoint rule with 10^7 panels plus Richardson step.
    auto f = [](double r) { return 1.0 / std::pow(1.0 - 0.5 * r, 3); };
    auto mid = [&](long N) {
        long double s = 0;
        const long double h = 1.0L / N;
        for (long i = 0; i < N; ++i) {
            const long double r = (i + 0.5L) * h;
            s += f(static_cast<double>(r)) * (1 - r);
        }
        return static_cast<double>(s * h);
    };
    const double m1 = mid(10000000), m2 = mid(5000000);
    const double oracle = m1 + (m1 - m2) / 3.0;
    const double q = integrate_radial(f, 1.0, RadialRule(16, 20));
    CHECK(q == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("radial rule errors") {
    CHECK_THROWS_AS(integrate_radial([](double) { return 1.0; }, -1.0, RadialRule(8, 4)), DomainError);
    CHECK_THROWS_AS(integrate_radial([](double r) { return r > 0.9 ? NAN : 1.0; }, 0.0, RadialRule(8, 4)),
                    EvaluationError);
}

TEST_CASE("order doubling is self-consistent") {
    auto f = [](double r) { return std::exp(r) / std::pow(1.0 - 0.9 * r, 1.5); };
    const double a = integrate_radial(f, 0.5, RadialRule(12, 20));
    const double b = integrate_radial(f, 0.5, RadialRule(24, 20));
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("Gauss-Jacobi rule integrates weighted monomials") {
    for (double a : {-0.5, 0.3, 2.0}) {
        const Rule1D g = gauss_jacobi(10, a, 0.0);
        // int_{-1}^1 (1-x)^a dx = 2^{a+1}/(a+1)
        double s = 0;
        for (std::size_t i = 0; i < g.size(); ++i) s += g.w[i];
        CHECK(s == doctest::Approx(std::pow(2.0, a + 1) / (a + 1)).epsilon(1e-13));
        // int (1-x)^a (1+x) dx = 2^{a+2} B(a+1, 2)
        double t = 0;
        for (std::size_t i = 0; i < g.size(); ++i) t += g.w[i] * (1 + g.x[i]);
        CHECK(t == doctest::Approx(std::pow(2.0, a + 2) * beta_function(a + 1, 2)).epsilon(1e-13));
    }
}

TEST_CASE("sphere rules") {
    for (int n : {2, 3}) {
        const SphereRule s = SphereRule::make(n, 26);
        CHECK(integrate_sphere([](const Vec&) { return 1.0; }, s) == doctest::Approx(1.0).epsilon(1e-14));
        for (const Vec& v : s.nodes) CHECK(std::abs(v.norm() - 1.0) < 1e-14);
        const HarmonicBasis b(n, 12);
        std::vector<std::vector<double>> vals;
        for (const Vec& v : s.nodes) vals.push_back(b.evaluate_all(v));
        for (std::size_t i = 0; i < b.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) {
                double acc = 0;
                for (std::size_t q = 0; q < s.size(); ++q) acc += s.weights[q] * vals[q][i] * vals[q][j];
                CHECK(std::abs(acc - (i == j ? 1.0 : 0.0)) < 1e-12);
            }
    }
}

TEST_CASE("axial and zonal rules") {
    for (int n : {2, 3}) {
        const Vec e = n == 2 ? Vec(0.6, 0.8) : Vec(0.0, 0.6, 0.8);
        const SphereRule a = SphereRule::axial(n, e, 1e-3, 16, 24);
        CHECK(integrate_sphere([](const Vec&) { return 1.0; }, a) == doctest::Approx(1.0).epsilon(1e-13));
        // Poisson kernel at r = 0.999 has unit mass.
        const double r = 0.999;
        auto P = [&](const Vec& x) {
            const double q = (x.scaled(r) - e).dot(x.scaled(r) - e);
            return (1 - r * r) / std::pow(q, 0.5 * n);
        };
        CHECK(integrate_sphere(P, a) == doctest::Approx(1.0).epsilon(1e-10));
        const Rule1D z = zonal_rule(n, 1e-3, 16);
        const double zq = z.integrate([&](double th) {
            const double omu = 2 * std::sin(th / 2) * std::sin(th / 2);
            return (1 - r * r) / std::pow((1 - r) * (1 - r) + 2 * r * omu, 0.5 * n);
        });
        CHECK(zq == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("decay fits") {
    const auto grid = dyadic_grid(2, 12);
    CHECK(fit_decay_exponent([](double r) { return std::pow(1 - r, -2.0); }, grid).slope ==
          doctest::Approx(-2.0).epsilon(1e-9));
    CHECK(fit_decay_exponent([](double r) { return 3 * std::sqrt(1 - r); }, grid).slope ==
          doctest::Approx(0.5).epsilon(1e-9));
    for (double e : {-5.0, -1.3, 0.0, 0.7, 2.0}) {
        const DecayFit f = fit_decay_exponent([&](double r) { return 2.5 * std::pow(1 - r, e); }, grid);
        CHECK(std::abs(f.slope - e) < 1e-6);
        CHECK(f.residual >= 0.0);
    }
    const RadialRule base(16, 30);
    auto g = [&](double rho) {
        const RadialRule rr = RadialRule::for_scale(16, 1 - rho);
        return integrate_radial([&](double r) { return 1.0 / std::pow(1 - rho * r, 2); }, 0.0, rr);
    };
    CHECK(std::abs(fit_decay_exponent(g, dyadic_grid(6, 16)).slope + 1.0) < 0.05);
    CHECK_THROWS_AS(fit_decay_exponent([](double) { return -1.0; }, grid), DomainError);
    CHECK_THROWS_AS(fit_decay_exponent([](double) { return 1.0; }, dyadic_grid(2, 5)), DomainError);
}

TEST_CASE("maximize_1d") {
    const auto [x, v] = maximize_1d([](double t) { return -(t - 0.3) * (t - 0.3) + 2; }, 0, 1);
    CHECK(x == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(v == doctest::Approx(2.0));
}
