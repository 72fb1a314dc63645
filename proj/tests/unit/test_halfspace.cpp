#include <doctest.h>

#include <cmath>
#include <numbers>

#include "harmspace/error.hpp"
#include "harmspace/halfspace.hpp"
#include "harmspace/kernels.hpp"
#include "harmspace/norms.hpp"

using namespace harmspace;

namespace {
constexpr double pi = std::numbers::pi;

// ||P(., . + 1)||^2 in L^2(t^alpha dx dt): the x-integral of P^2 is
// 1 / (2 pi tau) for n = 1 and 1 / (8 pi tau^2) for n = 2.
double poisson_l2_squared(int n, double alpha) {
    if (n == 1) return 0.5 / std::sin(pi * (alpha + 1.0));
    return (1.0 / (8.0 * pi)) * std::tgamma(alpha + 1.0) * std::tgamma(1.0 - alpha);
}
} // namespace

TEST_CASE("half-space integral of P^2 against closed forms") {
    for (int n : {1, 2})
        for (double alpha : {-0.5, -0.25}) {
            const auto f = HalfSpaceFunction::shifted_poisson(n, 1.0);
            const NormResult r = halfspace_norm(f, SpaceSpec::Atilde(2.0, alpha));
            CHECK(r.value * r.value == doctest::Approx(poisson_l2_squared(n, alpha)).epsilon(1e-6));
        }
    const auto f = HalfSpaceFunction::shifted_poisson(2, 1.0);
    const NormResult r = halfspace_norm(f, SpaceSpec::Atilde(2.0, 0.5));
    CHECK(r.value * r.value == doctest::Approx(poisson_l2_squared(2, 0.5)).epsilon(1e-6));
}

TEST_CASE("half-space norm scaling") {
    // P(lx, lt + 1) = l^-n P(x, t + 1/l); the norm scales by l^{-(n+1+alpha)/p}.
    for (int n : {1, 2}) {
        const double p = 3.0, alpha = 0.2;
        const double base = halfspace_norm(HalfSpaceFunction::shifted_poisson(n, 1.0), SpaceSpec::Atilde(p, alpha)).value;
        for (double lam : {0.5, 4.0}) {
            const double v = halfspace_norm(HalfSpaceFunction::shifted_poisson(n, 1.0 / lam), SpaceSpec::Atilde(p, alpha)).value;
            CHECK(std::pow(lam, -n) * v == doctest::Approx(std::pow(lam, -(n + 1 + alpha) / p) * base).epsilon(1e-7));
        }
    }
}

TEST_CASE("half-space norm edge cases") {
    CHECK(halfspace_norm(HalfSpaceFunction::zero(2), SpaceSpec::Atilde(2.0, 0.0)).value == 0.0);
    // n = 1, p = 2, alpha = 0: the integral diverges logarithmically.
    CHECK_THROWS_AS(halfspace_norm(HalfSpaceFunction::shifted_poisson(1, 1.0), SpaceSpec::Atilde(2.0, 0.0)),
                    DomainError);
    CHECK_THROWS_AS(SpaceSpec::Atilde(2.0, -1.0).validate(), ConfigError);
}

TEST_CASE("weighted sup on the half-space") {
    // sup t^alpha P(x, t + 1) sits at x = 0, t = alpha / (n - alpha).
    for (int n : {1, 2})
        for (double alpha : {0.3, 0.8}) {
            const double t = alpha / (n - alpha);
            const double expect = poisson_halfspace_constant(n) * std::pow(t, alpha) * std::pow(t + 1.0, -n);
            const double v = halfspace_norm(HalfSpaceFunction::shifted_poisson(n, 1.0), SpaceSpec::Atilde_inf(alpha)).value;
            CHECK(v == doctest::Approx(expect).epsilon(1e-10));
        }
}

TEST_CASE("sphere areas") {
    CHECK(sphere_area(1) == doctest::Approx(2.0));
    CHECK(sphere_area(2) == doctest::Approx(2 * pi));
    CHECK(sphere_area(3) == doctest::Approx(4 * pi));
}
