#include <doctest.h>

#include <cmath>
#include <random>

#include "harmspace/ball_function.hpp"
#include "harmspace/error.hpp"
#include "harmspace/kernels.hpp"
#include "harmspace/norms.hpp"
#include "harmspace/special.hpp"
#include "harmspace/spharm.hpp"
#include "helpers.hpp"

using namespace harmspace;
using testing_helpers::random_field;
using testing_helpers::random_unit;

namespace {
double beta_fn(double a, double b) { return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)); }
} // namespace

TEST_CASE("spherical means of constants") {
    for (int n : {2, 3}) {
        const HarmonicFunction one(CoefficientField::constant(n, 0, 1.0));
        for (double p : {0.5, 1.0, 2.0, 3.0, double(INFINITY)})
            for (double r : {0.0, 0.5, 0.99}) CHECK(radial_mean(one, p, r) == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("M_2 by Parseval") {
    std::mt19937_64 rng(20);
    for (int n : {2, 3})
        for (int i = 0; i < 5; ++i) {
            const HarmonicFunction f(random_field(n, 9, rng));
            for (double r : {0.2, 0.7, 0.95}) {
                double s = 0.0;
                for (int k = 0; k <= 9; ++k)
                    for (double b : f.coefficients().row(k)) s += std::pow(r, 2 * k) * b * b;
                CHECK(std::abs(radial_mean(f, 2.0, r) - std::sqrt(s)) <= 1e-10 * std::max(1.0, std::sqrt(s)));
            }
        }
}

TEST_CASE("spherical means increase with the radius") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 40; ++i) {
        const int n = 2 + i % 2;
        const HarmonicFunction f(random_field(n, 6, rng));
        for (double p : {1.0, 2.0, 3.0}) {
            double prev = 0.0;
            for (double r : {0.0, 0.2, 0.4, 0.6, 0.8, 0.95}) {
                const double m = radial_mean(f, p, r);
                CHECK(prev <= m + 1e-10);
                prev = m;
            }
        }
    }
}

TEST_CASE("norms of constants") {
    for (int n : {2, 3}) {
        const HarmonicFunction one(CoefficientField::constant(n, 0, 1.0));
        for (double p : {1.0, 2.5})
            for (double alpha : {-0.5, 0.0, 1.5}) {
                const double expect =
                    std::pow(std::tgamma(alpha + 1) * std::tgamma(n) / std::tgamma(alpha + 1 + n), 1.0 / p);
                CHECK(space_norm(one, SpaceSpec::A(p, alpha)).value == doctest::Approx(expect).epsilon(1e-12));
            }
        for (double p : {1.0, 2.0, 3.0})
            for (double alpha : {0.5, 1.0}) {
                const double ap = alpha * p;
                const double expect = std::pow(0.5 * std::tgamma(ap) * std::tgamma(0.5 * n) / std::tgamma(ap + 0.5 * n), 1.0 / p);
                CHECK(space_norm(one, SpaceSpec::B(p, 2.0, alpha)).value == doctest::Approx(expect).epsilon(1e-12));
            }
        CHECK(space_norm(one, SpaceSpec::H(2.0, 0.5)).value == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(space_norm(one, SpaceSpec::Ainf(0.5)).value == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("A^2 norms by Parseval and Beta integrals") {
    std::mt19937_64 rng(24);
    for (int n : {2, 3})
        for (double alpha : {-0.5, 0.0, 2.0}) {
            const HarmonicFunction f(random_field(n, 8, rng));
            double s = 0.0;
            for (int k = 0; k <= 8; ++k) {
                double row = 0.0;
                for (double b : f.coefficients().row(k)) row += b * b;
                s += row * beta_fn(2 * k + n, alpha + 1);
            }
            CHECK(space_norm(f, SpaceSpec::A(2.0, alpha)).value == doctest::Approx(std::sqrt(s)).epsilon(1e-8));
        }
}

TEST_CASE("A^inf and H^inf agree, B^{inf,q} and H^q agree") {
    std::mt19937_64 rng(26);
    for (int i = 0; i < 6; ++i) {
        const int n = 2 + i % 2;
        const BallFunction f = BallFunction::from_expansion(HarmonicFunction(random_field(n, 6, rng)));
        for (double alpha : {0.5, 1.0}) {
            const double a = space_norm(f, SpaceSpec::Ainf(alpha)).value;
            const double h = space_norm(f, SpaceSpec::H(INFINITY, alpha)).value;
            CHECK(std::abs(a - h) <= 1e-10 * a);
            for (double q : {1.0, 2.0})
                CHECK(space_norm(f, SpaceSpec::B(INFINITY, q, alpha)).value ==
                      doctest::Approx(space_norm(f, SpaceSpec::H(q, alpha)).value).epsilon(1e-12));
        }
    }
}

TEST_CASE("zonal kernel representation agrees with its expansion") {
    // n = 2, |y| = 0.5 changes sign, so p = 1 integrands have a kink that limits the expansion side.
    for (int n : {2, 3}) {
        const BallPoint y(n == 2 ? 0.5 : 0.3, Vec::axis(n, 0));
        const BallFunction z = kernel_function(1.0, y);
        const BallFunction e = BallFunction::from_expansion(extremal_fmy(1.0, y, n == 2 ? 80 : 30));
        for (const SpaceSpec& s : {SpaceSpec::A(2.0, 0.0), SpaceSpec::B(1.0, 2.0, 1.0), SpaceSpec::Ainf(2.5),
                                   SpaceSpec::H(INFINITY, 1.0)})
            CHECK(space_norm(z, s).value == doctest::Approx(space_norm(e, s).value).epsilon(1e-10));
        if (n == 2)
            for (const SpaceSpec& s : {SpaceSpec::A(1.0, 0.5), SpaceSpec::H(1.0, 1.0)})
                CHECK(space_norm(z, s).value == doctest::Approx(space_norm(e, s).value).epsilon(1e-6));
    }
}

TEST_CASE("embedding ratios") {
    const HarmonicFunction one(CoefficientField::constant(2, 0, 1.0));
    const BallFunction f = BallFunction::from_expansion(one);
    const double n1 = space_norm(one, SpaceSpec::A(2.0, 0.5)).value;
    CHECK(embedding_ratio(f, 2.0, 0.5) == doctest::Approx(1.0 / n1).epsilon(1e-12));
    std::mt19937_64 rng(28);
    const BallFunction g = BallFunction::from_expansion(HarmonicFunction(random_field(3, 5, rng)));
    CHECK(embedding_ratio(g.scaled(7.0), 1.5, 0.0) == doctest::Approx(embedding_ratio(g, 1.5, 0.0)).epsilon(1e-13));
}

TEST_CASE("space spec validation and JSON") {
    CHECK_THROWS_AS(SpaceSpec::A(2.0, -1.0).validate(), ConfigError);
    CHECK_THROWS_AS(SpaceSpec::H(2.0, -0.1).validate(), ConfigError);
    CHECK_THROWS_AS(SpaceSpec::B(2.0, 1.0, 0.0).validate(), ConfigError);
    CHECK_THROWS_AS(SpaceSpec::Atilde_inf(0.0).validate(), ConfigError);
    const SpaceSpec s = SpaceSpec::from_json(nlohmann::json::parse(R"({"family":"B","p":"inf","q":2,"alpha":0.5})"));
    CHECK(std::isinf(s.p));
    const SpaceSpec t = SpaceSpec::from_json(s.to_json());
    CHECK(t.family == Family::B);
    CHECK(t.q == 2.0);
    CHECK_THROWS_AS(SpaceSpec::from_json(nlohmann::json::parse(R"({"family":"Z"})")), ConfigError);
}
