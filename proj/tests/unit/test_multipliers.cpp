#include <doctest.h>

#include <cmath>
#include <random>

#include "harmspace/error.hpp"
#include "harmspace/kernels.hpp"
#include "harmspace/multipliers.hpp"
#include "harmspace/spharm.hpp"
#include "helpers.hpp"

using namespace harmspace;
using testing_helpers::random_field;
using testing_helpers::random_unit;

TEST_CASE("associated g carries the sequence") {
    std::mt19937_64 rng(30);
    const CoefficientField c = random_field(3, 4, rng);
    CHECK(associated_g(c).coefficients().data() == c.data());
    const HarmonicFunction three = associated_g(CoefficientField::constant(2, 0, 3.0));
    CHECK(three.eval(BallPoint(0.9, Vec(0, 1))) == 3.0);
    const HarmonicFunction zero = associated_g(CoefficientField(2, 5));
    for (double v : zero.coefficients().data()) CHECK(v == 0.0);
}

TEST_CASE("N_s and M_t of constants") {
    for (int n : {2, 3})
        for (double m : {0.5, 1.0, 2.0}) {
            const double c0 = -1.75;
            const HarmonicFunction g(CoefficientField::constant(n, 0, c0));
            const double expect = std::abs(c0) * std::tgamma(0.5 * n + m + 1) / (std::tgamma(0.5 * n) * std::tgamma(m + 1));
            CHECK(ns_functional(g, 1.0, m, 0.5, 0.5) == doctest::Approx(expect).epsilon(1e-13));
            CHECK(ns_functional(g, 2.0, m, 0.5, 0.5) == doctest::Approx(expect).epsilon(1e-13));
            CHECK(mt_functional(g, m, 0.5) == doctest::Approx(expect).epsilon(1e-13));
        }
    const HarmonicFunction zero(CoefficientField(2, 6));
    CHECK(ns_functional(zero, 1.0, 1.0, 1.0, 1.0) == 0.0);
    CHECK(mt_functional(zero, 1.0, 1.0) == 0.0);
}

TEST_CASE("functionals are homogeneous and monotone in the weight") {
    std::mt19937_64 rng(32);
    const HarmonicFunction g(random_field(2, 12, rng, 0.2));
    const double N = ns_functional(g, 1.0, 1.0, 1.0, 0.5);
    CHECK(ns_functional(g.scaled(-2.0), 1.0, 1.0, 1.0, 0.5) == 2.0 * N);
    CHECK(mt_functional(g.scaled(-2.0), 1.0, 1.5) == 2.0 * mt_functional(g, 1.0, 1.5));
    double prev = INFINITY;
    for (double t : {0.0, 0.5, 1.0, 2.0}) {
        const double v = mt_functional(g, 1.0, t);
        CHECK(v <= prev);
        prev = v;
    }
    CHECK_THROWS_AS(ns_functional(g, 0.5, 1.0, 1.0, 0.5), DomainError);
}

TEST_CASE("multiplier operator") {
    std::mt19937_64 rng(34);
    const HarmonicFunction f(random_field(2, 10, rng)), h(random_field(2, 10, rng));
    const MultiplierProblem id{SpaceSpec::B(2, 1, 1), SpaceSpec::B(2, 1, 1), CoefficientField::constant(2, 10, 1.0), 1.0};
    CHECK(apply_multiplier(id, f).coefficients().data() == f.coefficients().data());
    const MultiplierProblem pr{SpaceSpec::B(2, 1, 1), SpaceSpec::B(2, 1, 1), random_field(2, 10, rng), 1.0};
    const auto a = apply_multiplier(pr, f.scaled(3.0) + h).coefficients().data();
    const auto b = apply_multiplier(pr, f).coefficients().data();
    const auto c = apply_multiplier(pr, h).coefficients().data();
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(3.0 * b[i] + c[i]).epsilon(1e-14));
}

TEST_CASE("h_y coefficients against the Gamma formula") {
    std::mt19937_64 rng(36);
    for (int n : {2, 3}) {
        const int K = 10;
        const double m = 1.5;
        const CoefficientField c = random_field(n, K, rng);
        const BallPoint y(0.7, random_unit(n, rng));
        const MultiplierProblem pr{SpaceSpec::B(2, 1, 1), SpaceSpec::B(2, 1, 1), c, m};
        const HarmonicFunction hy = apply_multiplier(pr, extremal_fmy(m, y, K));
        for (int k = 0; k <= K; ++k)
            for (int j = 1; j <= dim_harmonics(n, k); ++j) {
                const double gamma = std::exp(std::lgamma(k + 0.5 * n + m + 1) - std::lgamma(k + 0.5 * n) - std::lgamma(m + 1));
                const double expect = 2.0 * gamma * std::pow(0.7, k) * c.at(k, j) * basis_eval(n, k, j, y.direction);
                CHECK(std::abs(hy.coefficients().at(k, j) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
            }
    }
}

TEST_CASE("shape classification") {
    const CoefficientField c = CoefficientField::constant(2, 4, 1.0);
    CHECK(MultiplierProblem{SpaceSpec::B(2, 1, 1), SpaceSpec::B(3, 1, 1), c, 1}.shape() == MultiplierShape::bpbp);
    CHECK(MultiplierProblem{SpaceSpec::B(1, 1, 1), SpaceSpec::B(3, 1, 1), c, 1}.shape() == MultiplierShape::main1);
    CHECK(MultiplierProblem{SpaceSpec::B(0.5, 1, 1), SpaceSpec::H(2, 0), c, 1}.shape() == MultiplierShape::bh);
    CHECK(MultiplierProblem{SpaceSpec::H(1, 0), SpaceSpec::H(2, 1), c, 1}.shape() == MultiplierShape::haha);
    CHECK_THROWS_AS(MultiplierProblem({SpaceSpec::A(2, 1), SpaceSpec::A(2, 1), c, 1}).shape(), UnsupportedConfiguration);
    CHECK_THROWS_AS(MultiplierProblem({SpaceSpec::B(3, 1, 1), SpaceSpec::B(2, 1, 1), c, 1}).shape(),
                    UnsupportedConfiguration);
    CHECK_THROWS_AS(MultiplierProblem({SpaceSpec::B(2, 1, 2.5), SpaceSpec::B(2, 1, 1), c, 1}).shape(), ConfigError);
}

TEST_CASE("zero and identity multipliers") {
    const std::vector<TestFamily> fams{make_test_family(2, 12, 1.0, 3)};
    MultiplierOptions opt;
    opt.C_sufficiency = 1.0;
    opt.C_necessity = 2.0;
    const MultiplierProblem zero{SpaceSpec::B(2, 1, 1), SpaceSpec::B(2, 1, 1), CoefficientField(2, 12), 1.0};
    const MultiplierCertificate z = verify_multiplier_theorem(zero, fams, opt);
    CHECK(z.N == 0.0);
    CHECK(z.R[0] == 0.0);
    CHECK(z.verdict());
    const MultiplierProblem id{SpaceSpec::B(2, 1, 1), SpaceSpec::B(2, 1, 1), CoefficientField::constant(2, 12, 1.0), 1.0};
    const MultiplierCertificate one = verify_multiplier_theorem(id, fams, opt);
    CHECK(std::isfinite(one.N));
    // Identity with equal spaces: every ratio is exactly one up to rounding.
    CHECK(one.R[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(one.verdict());
}

TEST_CASE("empirical constant is stable across random families") {
    // c_k^j = (k+1)^-3, alpha = beta = 1, p = q = 2, m = 1.
    CoefficientField c(2, 24);
    for (int k = 0; k <= 24; ++k)
        for (double& v : c.row(k)) v = std::pow(k + 1.0, -3.0);
    const MultiplierProblem pr{SpaceSpec::B(2, 1, 1), SpaceSpec::B(2, 1, 1), c, 1.0};
    std::vector<TestFamily> fams;
    for (std::uint64_t s = 1; s <= 5; ++s) fams.push_back(make_test_family(2, 24, 1.0, s));
    MultiplierOptions opt;
    opt.C_necessity = 2.0;
    const MultiplierCertificate cert = verify_multiplier_theorem(pr, fams, opt);
    const auto [lo, hi] = std::minmax_element(cert.C.begin(), cert.C.end());
    CHECK(*lo > 0.0);
    CHECK(*hi <= 1.2 * *lo);
}

TEST_CASE("Young proposition") {
    std::mt19937_64 rng(38);
    const HarmonicFunction g(random_field(2, 10, rng, 0.3));
    std::vector<HarmonicFunction> fam;
    for (int i = 0; i < 4; ++i) fam.emplace_back(random_field(2, 10, rng, 0.2));
    fam.emplace_back(CoefficientField::constant(2, 0, 2.0));
    CHECK(verify_young_proposition(g, 1.0, 2.0, 2.0, 0.5, 0.5, 0.0, fam, 2.5).passed());
    const VerificationReport z = verify_young_proposition(HarmonicFunction(CoefficientField(2, 10)), 1.0, 2.0, 2.0,
                                                          0.5, 0.5, 0.0, fam, 2.5);
    CHECK(z.passed());
    CHECK_THROWS_AS(verify_young_proposition(g, 1.0, 2.0, 3.0, 0.5, 0.5, 0.0, fam), DomainError);
    CHECK_THROWS_AS(verify_young_proposition(g, 1.0, 2.0, 2.0, 0.5, 1.0, 0.0, fam), DomainError);
}
