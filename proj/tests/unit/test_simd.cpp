#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "harmspace/simd.hpp"
#include "harmspace/spharm.hpp"

using namespace harmspace;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

std::vector<simd::Backend> backends() {
    std::vector<simd::Backend> out;
    for (auto b : {simd::Backend::scalar, simd::Backend::avx2, simd::Backend::neon})
        if (simd::available(b)) out.push_back(b);
    return out;
}

} // namespace

TEST_CASE("reductions are bit-identical across backends") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (std::size_t len : {0u, 1u, 3u, 4u, 5u, 17u, 1000u, 1003u}) {
        std::vector<double> a(len), b(len);
        for (auto& v : a) v = d(rng) * 1e3;
        for (auto& v : b) v = d(rng);
        const double ref_dot = simd::dot(simd::Backend::scalar, a, b);
        const double ref_sum = simd::sum(simd::Backend::scalar, a);
        for (auto be : backends()) {
            CHECK(same_bits(simd::dot(be, a, b), ref_dot));
            CHECK(same_bits(simd::sum(be, a), ref_sum));
        }
    }
}

TEST_CASE("zonal series is bit-identical across backends and matches the profiles") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int n : {2, 3}) {
        std::vector<double> c(30), u(37), ref(37), out(37);
        for (auto& v : c) v = d(rng);
        for (auto& v : u) v = d(rng);
        simd::zonal_series(simd::Backend::scalar, n, c, u, ref);
        for (auto be : backends()) {
            simd::zonal_series(be, n, c, u, out);
            for (std::size_t i = 0; i < u.size(); ++i) CHECK(same_bits(out[i], ref[i]));
        }
        for (std::size_t i = 0; i < u.size(); ++i) {
            double direct = 0.0;
            for (int k = 0; k < 30; ++k) direct += c[k] * zonal_profile(n, k, u[i]);
            CHECK(ref[i] == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("dot rejects mismatched lengths") {
    std::vector<double> a(3), b(4);
    CHECK_THROWS(simd::dot(a, b));
}
