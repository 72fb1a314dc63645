#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "harmspace/geometry.hpp"
#include "harmspace/harmonic_fn.hpp"

namespace testing_helpers {

inline harmspace::CoefficientField random_field(int n, int K, std::mt19937_64& rng, double decay = 0.0) {
    std::normal_distribution<double> g(0.0, 1.0);
    harmspace::CoefficientField c(n, K);
    for (int k = 0; k <= K; ++k)
        for (double& v : c.row(k)) v = g(rng) * std::exp(-decay * k);
    return c;
}

inline harmspace::Vec random_unit(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    if (n == 2) return harmspace::Vec(g(rng), g(rng)).normalized();
    return harmspace::Vec(g(rng), g(rng), g(rng)).normalized();
}

inline harmspace::Vec polar(double theta) { return harmspace::Vec(std::cos(theta), std::sin(theta)); }

} // namespace testing_helpers
