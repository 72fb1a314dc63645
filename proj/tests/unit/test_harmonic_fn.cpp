#include <doctest.h>

#include <cmath>
#include <random>

#include "harmspace/error.hpp"
#include "harmspace/harmonic_fn.hpp"
#include "harmspace/quadrature.hpp"
#include "harmspace/spharm.hpp"
#include "helpers.hpp"

using namespace harmspace;
using testing_helpers::random_field;
using testing_helpers::random_unit;

TEST_CASE("evaluation of simple expansions") {
    const HarmonicFunction five(CoefficientField::constant(3, 0, 5.0));
    CHECK(five.eval(BallPoint(0.4, Vec(0, 0, 1))) == 5.0);
    CoefficientField c(2, 1);
    c.at(1, 1) = 1.7;
    const HarmonicFunction f(c);
    CHECK(f.eval(BallPoint(0.5, Vec(1, 0))) == doctest::Approx(0.5 * std::sqrt(2.0) * 1.7).epsilon(1e-15));
}

TEST_CASE("spherical mean equals the constant coefficient") {
    std::mt19937_64 rng(2);
    for (int n : {2, 3}) {
        const HarmonicFunction f(random_field(n, 7, rng));
        const SphereRule rule = SphereRule::make(n, 10);
        for (double r : {0.3, 0.8}) {
            const double m = integrate_sphere([&](const Vec& x) { return f.eval(BallPoint(r, x)); }, rule);
            CHECK(m == doctest::Approx(f.coefficients().at(0, 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("coefficient recovery by sphere quadrature matches the data model") {
    std::mt19937_64 rng(4);
    for (int n : {2, 3}) {
        const int K = 5;
        const HarmonicFunction f(random_field(n, K, rng));
        const SphereRule rule = SphereRule::make(n, 2 * K + 2);
        for (int k = 0; k <= K; ++k)
            for (int j = 1; j <= dim_harmonics(n, k); ++j) {
                const double b = integrate_sphere(
                    [&](const Vec& x) { return f.eval(x) * basis_eval(n, k, j, x); },
                    rule);
                CHECK(b == doctest::Approx(f.coefficients().at(k, j)).epsilon(1e-12));
            }
    }
}

TEST_CASE("Hadamard convolution") {
    std::mt19937_64 rng(6);
    const HarmonicFunction f(random_field(2, 8, rng));
    const HarmonicFunction id = convolve(CoefficientField::constant(2, 8, 1.0), f);
    CHECK(id.coefficients().data() == f.coefficients().data());
    const HarmonicFunction z = convolve(CoefficientField::constant(2, 8, 0.0), f);
    for (double v : z.coefficients().data()) CHECK(v == 0.0);
    const CoefficientField c = random_field(2, 5, rng);
    const HarmonicFunction cf = convolve(c, f);
    CHECK(cf.max_degree() == 5);
    for (int k = 0; k <= 5; ++k)
        for (int j = 1; j <= dim_harmonics(2, k); ++j)
            CHECK(cf.coefficients().at(k, j) == c.at(k, j) * f.coefficients().at(k, j));
    CHECK_THROWS_AS(convolve(CoefficientField(3, 2), f), DomainError);
}

TEST_CASE("convolution as a sphere integral against g_c * P") {
    std::mt19937_64 rng(8);
    for (int n : {2, 3}) {
        const int K = 6;
        const CoefficientField c = random_field(n, K, rng);
        const HarmonicFunction g(c), f(random_field(n, K, rng));
        const SphereRule rule = SphereRule::make(n, 2 * K + 2);
        for (int i = 0; i < 5; ++i) {
            const double r = 0.3 + 0.1 * i;
            const Vec x = random_unit(n, rng);
            const double rhs = integrate_sphere(
                [&](const Vec& y) { return convolved_poisson(g, y).eval(BallPoint(r, x)) * f.eval(BallPoint(r, y)); },
                rule);
            CHECK(convolve(c, f).eval(BallPoint(r * r, x)) == doctest::Approx(rhs).epsilon(1e-12));
        }
    }
}

TEST_CASE("fractional derivative factors") {
    CoefficientField c(2, 3);
    c.at(0, 1) = 1.0;
    c.at(3, 1) = 1.0;
    c.at(3, 2) = -2.0;
    const HarmonicFunction d = fractional_derivative(HarmonicFunction(c), 1.0);
    CHECK(d.coefficients().at(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.coefficients().at(3, 1) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(d.coefficients().at(3, 2) == doctest::Approx(-8.0).epsilon(1e-14));
    CHECK_THROWS_AS(fractional_derivative(HarmonicFunction(c), 0.0), DomainError);

    std::mt19937_64 rng(10);
    const HarmonicFunction f(random_field(3, 6, rng)), g(random_field(3, 6, rng));
    const auto lhs = fractional_derivative(f.scaled(2.0) + g.scaled(-3.0), 1.7).coefficients().data();
    const auto a = fractional_derivative(f, 1.7).coefficients().data();
    const auto b = fractional_derivative(g, 1.7).coefficients().data();
    for (std::size_t i = 0; i < lhs.size(); ++i) CHECK(lhs[i] == doctest::Approx(2 * a[i] - 3 * b[i]).epsilon(1e-14));
}

TEST_CASE("convolved Poisson symmetry and commutation with Lambda") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> U(0.0, 0.99);
    const HarmonicFunction one(CoefficientField::constant(2, 0, 4.0));
    CHECK(convolved_poisson(one, Vec(0, 1)).eval(BallPoint(0.7, Vec(1, 0))) == doctest::Approx(4.0));
    for (int i = 0; i < 100; ++i) {
        const int n = 2 + i % 2;
        const HarmonicFunction g(random_field(n, 8, rng));
        const Vec x = random_unit(n, rng), y = random_unit(n, rng);
        const double r = U(rng);
        const double a = convolved_poisson(g, y).eval(BallPoint(r, x));
        const double b = convolved_poisson(g, x).eval(BallPoint(r, y));
        CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)));
        if (i % 10 == 0) {
            const auto l = fractional_derivative(convolved_poisson(g, y), 1.3).coefficients().data();
            const auto m = convolved_poisson(fractional_derivative(g, 1.3), y).coefficients().data();
            for (std::size_t k = 0; k < l.size(); ++k) CHECK(l[k] == doctest::Approx(m[k]).epsilon(1e-14));
        }
    }
}

TEST_CASE("pairing identity") {
    const HarmonicFunction one(CoefficientField::constant(2, 0, 1.0));
    for (double m : {-0.5, 0.0, 2.0}) {
        const VerificationReport rep = pairing_identity_check(one, one, m, 0.6, 0.7, Vec(1, 0));
        CHECK(rep.passed());
        for (const auto& c : rep.cases)
            if (c.case_id != "sides-agree") CHECK(c.value == doctest::Approx(1.0).epsilon(1e-10));
    }
    std::mt19937_64 rng(14);
    for (int i = 0; i < 5; ++i) {
        const HarmonicFunction f(random_field(2, 6, rng)), g(random_field(2, 6, rng));
        CHECK(pairing_identity_check(f, g, 0.5, 0.8, 0.9, random_unit(2, rng)).passed());
        CHECK(pairing_identity_check(f, g, 0.5, 0.0, 0.9, random_unit(2, rng)).passed());
    }
}

TEST_CASE("coefficient JSON round trip is lossless") {
    std::mt19937_64 rng(16);
    const CoefficientField c = random_field(3, 5, rng);
    const CoefficientField d = CoefficientField::from_json(nlohmann::json::parse(c.to_json().dump()));
    CHECK(d.dimension() == 3);
    CHECK(d.max_degree() == 5);
    CHECK(d.data() == c.data());
    CHECK_THROWS(CoefficientField::from_json(nlohmann::json::parse(R"({"n":2,"K":1,"rows":[[1],[1]]})")));
}
