#pragma once

// Shared plumbing for the verification suites: parameter access with range checks,
// per-case seeds, and an order-preserving parallel map.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "harmspace/error.hpp"
#include "harmspace/geometry.hpp"
#include "harmspace/harmonic_fn.hpp"
#include "harmspace/report.hpp"
#include "harmspace/suites.hpp"

namespace harmspace::suite {

/// Suite parameters: the suite's defaults overlaid with the user's overrides.
/// Unknown keys and ill-typed values are ConfigErrors.
class Params {
public:
    Params(std::string suite, const nlohmann::json& defaults, const nlohmann::json& overrides);

    double num(const std::string& key) const;
    int integer(const std::string& key) const;
    bool flag(const std::string& key) const;
    std::string str(const std::string& key) const;
    std::vector<double> nums(const std::string& key) const;
    std::vector<int> ints(const std::string& key) const;
    /// List of fixed-length numeric tuples, e.g. [[n, beta], ...].
    std::vector<std::vector<double>> tuples(const std::string& key, std::size_t width) const;
    const nlohmann::json& raw(const std::string& key) const;
    const nlohmann::json& merged() const { return p_; }

    /// ConfigError "<suite>: <constraint>" unless ok.
    void require(bool ok, const std::string& constraint) const;

private:
    std::string suite_;
    nlohmann::json p_;
};

struct Context {
    const SuiteConfig& config;
    Params params;
    bool heavy = false;
    unsigned threads = 1;
};

/// Independent stream for case `index` (SplitMix64 of seed and index).
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index);
std::mt19937_64 case_rng(const Context& ctx, std::uint64_t index);

Vec random_direction(int n, std::mt19937_64& rng);
/// Gaussian coefficients scaled by decay^k.
CoefficientField random_field(int n, int K, std::mt19937_64& rng, double decay = 0.7);

double uniform(std::mt19937_64& rng, double a, double b);

/// "%.6g", for case ids.
std::string tag(double v);

/// fn(i) for i < count on up to `threads` workers; results in index order. The first
/// exception by index is rethrown.
template <class F>
auto parallel_map(std::size_t count, unsigned threads, F fn) -> std::vector<decltype(fn(std::size_t{0}))> {
    using R = decltype(fn(std::size_t{0}));
    std::vector<R> out(count);
    std::vector<std::exception_ptr> err(count);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                out[i] = fn(i);
            } catch (...) {
                err[i] = std::current_exception();
            }
        }
    };
    const unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
    if (nt == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : err)
        if (e) std::rethrow_exception(e);
    return out;
}

/// Appends the cases of `sub` with ids prefixed by `prefix`.
void merge_cases(VerificationReport& into, const VerificationReport& sub, const std::string& prefix);

// Suites over kernels, radial integrals and quadrature.
VerificationReport gamma_exact(Context& ctx);
VerificationReport poisson_consistency(Context& ctx);
VerificationReport rro(Context& ctx);
VerificationReport wellkn(Context& ctx);
VerificationReport qbeta(Context& ctx);
VerificationReport kernel_estimates(Context& ctx);
VerificationReport qm(Context& ctx);
VerificationReport fy_estimates(Context& ctx);

// Suites over harmonic functions, norms, multipliers and distances.
VerificationReport reproduction_ball(Context& ctx);
VerificationReport reproduction_halfspace(Context& ctx);
VerificationReport pairing(Context& ctx);
VerificationReport convolution_formula(Context& ctx);
VerificationReport multiplier(Context& ctx, const std::string& shape);
VerificationReport young(Context& ctx);
VerificationReport embedding(Context& ctx);
VerificationReport norm_identities(Context& ctx);
VerificationReport distance_ball(Context& ctx);
VerificationReport distance_halfspace(Context& ctx);

} // namespace harmspace::suite
