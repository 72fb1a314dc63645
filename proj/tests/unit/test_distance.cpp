#include <doctest.h>

#include <cmath>
#include <random>

#include "harmspace/distance.hpp"
#include "harmspace/kernels.hpp"
#include "harmspace/norms.hpp"
#include "harmspace/special.hpp"
#include "helpers.hpp"

using namespace harmspace;
using testing_helpers::random_unit;

namespace {

BallFunction constant(double M) {
    return BallFunction::zonal(2, Vec(1.0, 0.0), [M](double, double) { return M; }, 0.0);
}

// x^4 - 6 x^2 y^2 + y^4 + 0.5 (x^2 - y^2) + 0.3 y + 1, harmonic in the plane.
double poly2(const Vec& x) {
    const double a = x[0], b = x[1];
    return a * a * a * a - 6 * a * a * b * b + b * b * b * b + 0.5 * (a * a - b * b) + 0.3 * b + 1.0;
}

// Harmonic in R^3: x^2 - y^2 + x y z + z^3 - 1.5 z (x^2 + y^2) + 0.2.
double poly3(const Vec& x) {
    const double a = x[0], b = x[1], c = x[2];
    return a * a - b * b + a * b * c + c * c * c - 1.5 * c * (a * a + b * b) + 0.2;
}

} // namespace

TEST_CASE("representation integral reproduces constants and polynomials") {
    const BallFunction one = constant(1.0);
    const BallFunction p2 = BallFunction::sampled(2, poly2, 4);
    const BallFunction p3 = BallFunction::sampled(3, poly3, 3);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> U(0.0, 0.9);
    for (int beta : {1, 2}) {
        for (int i = 0; i < 5; ++i) {
            const Vec x2 = random_unit(2, rng).scaled(U(rng));
            CHECK(std::abs(representation_integral(one, beta, x2) - 1.0) < 1e-10);
            CHECK(std::abs(representation_integral(p2, beta, x2) - poly2(x2)) < 1e-9);
            const Vec x3 = random_unit(3, rng).scaled(U(rng));
            CHECK(std::abs(representation_integral(p3, beta, x3) - poly3(x3)) < 1e-9);
        }
    }
}

TEST_CASE("sublevel set of a constant is a centred disc") {
    const double M = 2.0, eps = 0.1, t = 1.5;
    const SublevelSet U(constant(M), eps, t);
    const double r0 = 1.0 - std::pow(eps / M, 1.0 / t);
    const auto iv = U.ray(0.7);
    REQUIRE(iv.size() == 1);
    CHECK(iv[0].first == 0.0);
    CHECK(std::abs(iv[0].second - r0) < 1e-13);
    CHECK(U.indicator(Vec(0.0, r0 - 1e-6)));
    CHECK_FALSE(U.indicator(Vec(r0 + 1e-6, 0.0)));
}

TEST_CASE("ray slices keep the thin gap around a zero of f") {
    // Along theta = 0, (1 - r) |r - 0.3| >= eps: roots of r^2 - 1.3 r + 0.3 -+ eps.
    const double eps = 1e-9;
    const BallFunction f = BallFunction::sampled(2, [](const Vec& x) { return x[0] - 0.3; }, 1);
    const auto iv = SublevelSet(f, eps, 1.0).ray(0.0);
    REQUIRE(iv.size() == 2);
    const double big1 = 0.5 * (1.3 + std::sqrt(0.49 + 4.0 * eps));
    const double big2 = 0.5 * (1.3 + std::sqrt(0.49 - 4.0 * eps));
    CHECK(iv[0].first == 0.0);
    CHECK(std::abs(iv[0].second - (0.3 - eps) / big1) < 1e-14);
    CHECK(std::abs(iv[1].first - (0.3 + eps) / big2) < 1e-14);
    CHECK(std::abs(iv[1].second - big2) < 1e-14);
}

TEST_CASE("decomposition of a constant against the closed form") {
    // U is the disc of radius r0, so f2 = M (1 - (1 - r0^2)^(beta+1)) and f1 = M - f2.
    const DistanceParams P{2, 2.0, 1.8, 1};
    const double M = 1.0;
    for (double eps : {0.05, 0.01}) {
        const Decomposition D = decompose(constant(M), eps, P);
        const double r0 = 1.0 - std::pow(eps / M, 1.0 / P.t());
        const double f2 = M * (1.0 - std::pow(1.0 - r0 * r0, P.beta + 1));
        for (const Vec& x : {Vec(0.0, 0.0), Vec(0.3, -0.2), Vec(-0.6, 0.5), Vec(0.0, 0.97)}) {
            CHECK(std::abs(D.f2(x) - f2) < 1e-10);
            CHECK(std::abs(D.f2_direct(x) - f2) < 1e-9);
            CHECK(std::abs(D.f1(x) - (M - f2)) < 1e-9);
        }
        CHECK(std::abs(D.f2_norm(2.0, P.alpha) - f2 * std::sqrt(beta_function(2.0, P.alpha + 1.0))) < 1e-10);
        CHECK(std::abs(D.remainder_norm(P.t()) - (M - f2)) < 1e-9);
    }
}

TEST_CASE("decomposition with an empty sublevel set and additivity for a polynomial") {
    const DistanceParams P{2, 2.0, 1.8, 1};
    const BallFunction p2 = BallFunction::sampled(2, poly2, 4);
    const Decomposition big = decompose(p2, 1e3, P);
    CHECK(big.empty());
    for (const Vec& x : {Vec(0.1, 0.2), Vec(-0.5, 0.45)}) {
        CHECK(big.f2(x) == 0.0);
        CHECK(std::abs(big.f1(x) - poly2(x)) < 1e-6);
    }
    const Decomposition D = decompose(p2, 0.02, P);
    CHECK_FALSE(D.empty());
    for (const Vec& x : {Vec(0.1, 0.2), Vec(-0.5, 0.45), Vec(0.0, -0.9)}) {
        CHECK(std::abs(D.f1(x) + D.f2(x) - poly2(x)) < 1e-6);
        CHECK(std::abs(D.f2(x) - D.f2_direct(x)) < 1e-6);
    }
}

TEST_CASE("t2 integral: empty set, monotonicity, verdicts") {
    const DistanceParams P{2, 2.0, 1.8, 1};
    DistanceRules R;
    R.t2_angles = 64;
    const BallFunction one = constant(1.0);
    const auto v = t2_integrals(one, {1.5, 0.5, 0.1, 0.01}, P, R);
    CHECK(v[0].empty);
    CHECK(v[0].value == 0.0);
    CHECK(v[0].finite);
    CHECK(v[1].value <= v[2].value);
    CHECK(v[2].value <= v[3].value);
    CHECK(v[3].value > 0.0);
    for (const auto& x : v) CHECK(x.finite);

    // The boundary kernel with exponent t sits on the frontier: U reaches the circle for eps < 1.
    const BallFunction g = boundary_kernel_function(P.t(), Vec(1.0, 0.0));
    const auto w = t2_integrals(g, {0.5, 1.5}, P, R);
    CHECK_FALSE(w[0].finite);
    CHECK(w[0].inner_exponent == doctest::Approx(-P.t()).epsilon(0.05));
    CHECK(w[1].finite);
    CHECK(w[1].value == 0.0);
}

TEST_CASE("distance parameters are validated") {
    CHECK_THROWS_AS((DistanceParams{2, 1.0, 0.0, 1}).validate(), DomainError);
    CHECK_THROWS_AS((DistanceParams{2, 2.0, -1.0, 1}).validate(), DomainError);
    CHECK_THROWS_AS((DistanceParams{2, 2.0, 1.8, 0}).validate(), DomainError);
    CHECK_THROWS_AS((DistanceParams{3, 2.0, 1.8, 1}).validate(), UnsupportedConfiguration);
    CHECK_NOTHROW((DistanceParams{2, 2.0, 1.8, 1}).validate());
    CHECK_THROWS_AS((HalfSpaceDistanceParams{1, 4.0, 0.0, 0}).validate(), DomainError);
}

TEST_CASE("zero function: empty sets and a zero functional") {
    const DistanceParams P{2, 2.0, 1.8, 1};
    DistanceRules R;
    R.t2_angles = 32;
    const BallFunction z = constant(0.0);
    const DistanceEstimate e = distance_bound_check(z, P, {0.25, 0.5}, R);
    CHECK(e.t2 == 0.0);
    for (const auto& l : e.levels) CHECK(l.t2.value == 0.0);
    CHECK(e.report.passed());
}

TEST_CASE("half-space representation of a shifted Poisson kernel") {
    for (int n : {1, 2}) {
        const HalfSpaceFunction f = HalfSpaceFunction::shifted_poisson(n, 1.0);
        HalfSpaceRule rule;
        for (double t : {0.3, 1.5}) {
            const HalfSpacePoint z(std::vector<double>(static_cast<std::size_t>(n), 0.4), t);
            const double v = halfspace_representation(f, 1, z, rule);
            const double want = f(z.x, z.t);
            CHECK(std::abs(v - want) < 1e-3 * want);
        }
    }
}

TEST_CASE("s2 integral: empty set, monotonicity, doubling") {
    const HalfSpaceDistanceParams P{1, 4.0, 0.0, 1};
    const HalfSpaceFunction f = HalfSpaceFunction::shifted_poisson(1, 1.0);
    S2Rules R;
    const std::vector<double> eps{0.02, 0.05, 0.1, 0.2};
    const auto v = s2_integrals(f, eps, P, R);
    CHECK(v[3].value == 0.0);
    for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i].value <= v[i - 1].value);
    S2Rules R2 = R;
    R2.rule.R *= 2.0;
    const auto w = s2_integrals(f, eps, P, R2);
    for (std::size_t i = 0; i < v.size(); ++i) {
        CHECK(v[i].finite);
        CHECK(w[i].finite == v[i].finite);
        if (v[i].value > 0.0) CHECK(std::abs(w[i].value - v[i].value) <= 1e-3 * v[i].value);
    }
}
