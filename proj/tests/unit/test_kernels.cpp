#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "harmspace/error.hpp"
#include "harmspace/halfspace.hpp"
#include "harmspace/kernels.hpp"
#include "harmspace/quadrature.hpp"
#include "harmspace/spharm.hpp"
#include "helpers.hpp"

using namespace harmspace;
using testing_helpers::random_unit;

TEST_CASE("ball Poisson kernel values") {
    std::mt19937_64 rng(1);
    for (int n : {2, 3})
        for (int i = 0; i < 5; ++i)
            CHECK(poisson_ball(BallPoint(0.0, Vec::axis(n, 0)), random_unit(n, rng)) == doctest::Approx(1.0));
    CHECK(poisson_ball(BallPoint(0.5, Vec(1, 0)), Vec(1, 0)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK_THROWS_AS(poisson_ball_profile(2, 1.0, 0.0), DomainError);
}

TEST_CASE("ball Poisson kernel has unit mass") {
    for (int n : {2, 3})
        for (double r : {0.0, 0.5, 0.9}) {
            const Vec axis = Vec::axis(n, n - 1);
            const SphereRule rule = SphereRule::axial(n, axis, std::max(0.5 * (1 - r), 1e-3), 24, 32);
            const BallPoint x(r, axis);
            const double m = integrate_sphere([&](const Vec& y) { return poisson_ball(x, y); }, rule);
            CHECK(m == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("Poisson series matches closed form") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        const Vec a = random_unit(3, rng), b = random_unit(3, rng);
        const BallPoint x(0.5, a);
        CHECK(std::abs(poisson_ball_series(x, b, 60) - poisson_ball(x, b)) <= 1e-10);
    }
    const BallPoint x(0.9, Vec(1, 0));
    CHECK(std::abs(poisson_ball_series(x, Vec(-1, 0), 400) - 0.19 / (1.9 * 1.9)) <= 1e-8);
    CHECK(poisson_ball_series(BallPoint(0.0, Vec(0, 1)), Vec(1, 0), 30) == 1.0);
    // Stated tail bound dominates the actual truncation error.
    for (int n : {2, 3})
        for (int K : {5, 10, 20}) {
            const BallPoint z(0.7, Vec::axis(n, 0));
            const double err = std::abs(poisson_ball_series(z, Vec::axis(n, 0), K) - poisson_ball(z, Vec::axis(n, 0)));
            CHECK(err <= poisson_series_tail_bound(n, 0.7, K));
        }
}

TEST_CASE("Bergman kernel coefficients and constant term") {
    for (int n : {2, 3})
        for (double beta : {0.0, 0.5, 2.0}) {
            const BergmanKernelBall q(n, beta);
            const auto lam = q.coefficients(30);
            for (int k = 0; k <= 30; ++k) {
                const double oracle = 2.0 * std::exp(std::lgamma(beta + 1 + k + 0.5 * n) - std::lgamma(beta + 1) -
                                                     std::lgamma(k + 0.5 * n));
                CHECK(lam[k] == doctest::Approx(oracle).epsilon(1e-13));
            }
            const BallPoint x(0.6, Vec::axis(n, 0));
            CHECK(bergman_q_ball(beta, x, BallPoint(0.0, Vec::axis(n, 1)), 40) == doctest::Approx(lam[0]));
        }
    CHECK(BergmanKernelBall(2, 0.0).coefficients(0)[0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("Bergman kernel n=2 beta=0 against explicit cosine series") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int i = 0; i < 30; ++i) {
        const double r = 0.9 * U(rng), rho = 0.9 * U(rng), a = 6.3 * U(rng), b = 6.3 * U(rng);
        const double s = r * rho;
        double oracle = 2.0;
        double sk = 1.0;
        for (int k = 1; k < 2000; ++k) {
            sk *= s;
            oracle += 2.0 * (k + 1) * sk * 2.0 * std::cos(k * (a - b));
        }
        const double v = bergman_q_ball(0.0, BallPoint(r, testing_helpers::polar(a)),
                                        BallPoint(rho, testing_helpers::polar(b)), 600);
        CHECK(std::abs(v - oracle) <= 1e-10 * std::max(1.0, std::abs(oracle)));
    }
}

TEST_CASE("Bergman closed form agrees with series") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (int n : {2, 3})
        for (int beta : {0, 1, 2, 3}) {
            const BergmanKernelBall q(n, beta);
            REQUIRE(q.has_closed_form());
            for (int i = 0; i < 25; ++i) {
                const double s = 0.85 * U(rng), u = 2 * U(rng) - 1;
                const double ser = q.series(s, u);
                const double cl = q.closed(s, 1.0 - u);
                CHECK(std::abs(ser - cl) <= 1e-11 * std::max(1.0, std::abs(ser)));
            }
        }
    CHECK_FALSE(BergmanKernelBall(2, 0.5).has_closed_form());
}

TEST_CASE("Bergman kernel symmetry") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> U(0.0, 0.95);
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + i % 2;
        const BallPoint x(U(rng), random_unit(n, rng)), y(U(rng), random_unit(n, rng));
        const double a = bergman_q_ball(1.5, x, y, 200), b = bergman_q_ball(1.5, y, x, 200);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
    CHECK_THROWS_AS(BergmanKernelBall(2, -1.0), DomainError);
}

TEST_CASE("extremal f_{m,y} evaluates to the kernel") {
    const int n = 3;
    const BallPoint y0(0.0, Vec::axis(n, 2));
    const HarmonicFunction c = extremal_fmy(2.0, y0, 10);
    const double expect = 2.0 * std::tgamma(3.0 + 1.5) / (std::tgamma(3.0) * std::tgamma(1.5));
    CHECK(c.eval(BallPoint(0.7, Vec::axis(n, 0))) == doctest::Approx(expect).epsilon(1e-13));
    std::mt19937_64 rng(21);
    const BallPoint y(0.6, random_unit(n, rng));
    const HarmonicFunction f = extremal_fmy(1.0, y, 120);
    for (int i = 0; i < 10; ++i) {
        const BallPoint x(0.8, random_unit(n, rng));
        const double q = BergmanKernelBall(n, 1.0).profile(0.48, 1.0 - x.direction.dot(y.direction));
        CHECK(f.eval(x) == doctest::Approx(q).epsilon(1e-10));
    }
    CHECK_THROWS_AS(extremal_fmy(0.0, y, 5), DomainError);
}

TEST_CASE("half-space Poisson kernel normalization and scaling") {
    for (int n : {1, 2}) {
        const double cn = std::tgamma(0.5 * (n + 1)) / std::pow(std::numbers::pi, 0.5 * (n + 1));
        CHECK(poisson_halfspace_constant(n) == doctest::Approx(cn).epsilon(1e-15));
        for (double t : {0.5, 1.0, 2.0}) {
            // tail of int_{|x|>R} P dx ~ R^{-1}: radial density decays like R^{-n-1} times R^n
            const double mass = integrate_radial_rn([&](double r) { return poisson_halfspace_profile(n, r * r, t); },
                                                    n, t / 8, 1e4 * t, 20, 2.0);
            CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
            std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
            CHECK(poisson_halfspace(zero, t) == doctest::Approx(cn * std::pow(t, -n)).epsilon(1e-14));
        }
        std::mt19937_64 rng(n);
        std::uniform_real_distribution<double> U(-2.0, 2.0);
        for (int i = 0; i < 20; ++i) {
            std::vector<double> x(static_cast<std::size_t>(n)), lx(x.size());
            for (auto& v : x) v = U(rng);
            const double t = std::abs(U(rng)) + 0.01, lam = std::abs(U(rng)) + 0.1;
            for (std::size_t k = 0; k < x.size(); ++k) lx[k] = lam * x[k];
            CHECK(poisson_halfspace(lx, lam * t) ==
                  doctest::Approx(std::pow(lam, -n) * poisson_halfspace(x, t)).epsilon(1e-13));
        }
        CHECK_THROWS_AS(poisson_halfspace(std::vector<double>(static_cast<std::size_t>(n), 0.0), 0.0), DomainError);
    }
}

namespace {
// Hand-differentiated derivatives of c tau A^{-a}, A = d2 + tau^2, a = (n+1)/2.
double dP(int order, int n, double d2, double tau) {
    const double c = poisson_halfspace_constant(n), a = 0.5 * (n + 1), A = d2 + tau * tau;
    switch (order) {
    case 1: return c * (std::pow(A, -a) - 2 * a * tau * tau * std::pow(A, -a - 1));
    case 2: return c * (-6 * a * tau * std::pow(A, -a - 1) + 4 * a * (a + 1) * std::pow(tau, 3) * std::pow(A, -a - 2));
    case 3:
        return c * (-6 * a * std::pow(A, -a - 1) + 24 * a * (a + 1) * tau * tau * std::pow(A, -a - 2) -
                    8 * a * (a + 1) * (a + 2) * std::pow(tau, 4) * std::pow(A, -a - 3));
    }
    return NAN;
}
} // namespace

TEST_CASE("half-space Bergman kernel matches hand derivatives") {
    for (int n : {1, 2}) {
        const double cn = poisson_halfspace_constant(n);
        for (double tau : {0.3, 1.0, 2.5})
            CHECK(bergman_q_halfspace_profile(n, 0, 0.0, tau) ==
                  doctest::Approx(2 * n * cn * std::pow(tau, -(n + 1))).epsilon(1e-13));
        for (double d2 : {0.0, 0.4, 3.0})
            for (double tau : {0.2, 1.0, 4.0}) {
                CHECK(bergman_q_halfspace_profile(n, 0, d2, tau) == doctest::Approx(-2 * dP(1, n, d2, tau)).epsilon(1e-12));
                CHECK(bergman_q_halfspace_profile(n, 1, d2, tau) == doctest::Approx(4 * dP(2, n, d2, tau)).epsilon(1e-12));
                CHECK(bergman_q_halfspace_profile(n, 2, d2, tau) == doctest::Approx(-4 * dP(3, n, d2, tau)).epsilon(1e-12));
            }
    }
}

TEST_CASE("half-space Bergman kernel symmetry") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const int n = 1 + i % 2, m = i % 4;
        std::vector<double> x(static_cast<std::size_t>(n)), y(x.size());
        for (auto& v : x) v = U(rng);
        for (auto& v : y) v = U(rng);
        const HalfSpacePoint z(x, std::abs(U(rng)) + 0.05), w(y, std::abs(U(rng)) + 0.05);
        const double a = bergman_q_halfspace(m, z, w), b = bergman_q_halfspace(m, w, z);
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("disc kernel from the binomial series matches the general kernel") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    for (double beta : {-0.5, 0.0, 1.0, 2.0, 2.5}) {
        const BergmanKernelBall q(2, beta);
        for (int i = 0; i < 30; ++i) {
            const double r = 0.95 * U(rng), rho = 0.95 * U(rng), d = 6.28 * U(rng);
            const double a = bergman_q_disc(beta, r, rho, d);
            const double b = q.profile(r * rho, 1.0 - std::cos(d));
            CHECK(std::abs(a - b) <= 1e-11 * std::max(1.0, std::abs(b)));
        }
    }
    CHECK_THROWS_AS(bergman_q_disc(1.0, 1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("half-plane kernel from the complex form matches the jet form") {
    for (int m = 0; m <= 4; ++m)
        for (double x : {-3.0, -0.4, 0.0, 0.7, 5.0})
            for (double tau : {0.01, 0.3, 1.0, 7.0}) {
                const double a = bergman_q_halfplane(m, x, tau);
                const double b = bergman_q_halfspace_profile(1, m, x * x, tau);
                CHECK(std::abs(a - b) <= 1e-11 * std::abs(b) + 1e-300);
            }
}
