#include "harmspace/suites.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <thread>

#include "suite_support.hpp"

namespace harmspace {

using nlohmann::json;

namespace {

struct Entry {
    SuiteInfo info;
    /// Overrides applied over the defaults for the heavy tier.
    json heavy;
    std::function<VerificationReport(suite::Context&)> run;
};

std::vector<std::string> keys_of(const json& j) {
    std::vector<std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
    return out;
}

Entry entry(std::string name, std::string anchor, json defaults, json heavy,
            std::function<VerificationReport(suite::Context&)> run) {
    Entry e;
    e.info.name = std::move(name);
    e.info.anchor = std::move(anchor);
    e.info.required = keys_of(defaults);
    e.info.defaults = std::move(defaults);
    e.heavy = std::move(heavy);
    e.run = std::move(run);
    return e;
}

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = [] {
        std::vector<Entry> v;
        v.push_back(entry(
            "gamma-exact",
            "int_0^1 (1 - r^2)^s r^(2t + n - 1) dr = Gamma(s + 1) Gamma(t + n/2) / (2 Gamma(s + 1 + t + n/2)) for "
            "s > -1, 2t + n > 0; radial quadrature against the closed form",
            {{"s", {-0.5, 0.0, 1.0, 2.5}}, {"t", {0.0, 0.5, 3.0}}, {"n", {2, 3}}, {"order", 16}, {"depth", 4},
             {"tol", 1e-8}},
            {{"s", {-0.9, -0.5, 0.0, 0.5, 1.0, 2.5, 7.0}}, {"t", {0.0, 0.25, 0.5, 3.0, 10.0}}},
            suite::gamma_exact));
        v.push_back(entry(
            "poisson-consistency",
            "P(x, y') = (1 - |x|^2) / |x - y'|^n equals sum_k r^k Z_k(x', y') with unit mass on the sphere, and "
            "Z_k(x', y') = sum_j Y_j^(k)(x') Y_j^(k)(y') (addition theorem)",
            {{"samples", 200}, {"r_max", 0.9}, {"tol", 1e-8}, {"addition_kmax", 12}, {"addition_pairs", 100},
             {"addition_tol", 1e-10}},
            {{"samples", 2000}, {"addition_pairs", 1000}}, suite::poisson_consistency));
        v.push_back(entry(
            "reproduction-ball",
            "f(x) = int_B Q_beta(x, y) f(y) (1 - |y|^2)^beta dy for harmonic f and beta >= 0, with Q_beta = sum_k "
            "2 Gamma(beta + 1 + k + n/2) / (Gamma(beta + 1) Gamma(k + n/2)) Z_k",
            {{"n", {2, 3}}, {"beta", {1, 2}}, {"degree", 4}, {"points", 50}, {"r_max", 0.9}, {"tol", 1e-6},
             {"order", 16}, {"n_phi", 24}},
            {{"points", 200}}, suite::reproduction_ball));
        v.push_back(entry(
            "reproduction-halfspace",
            "f(z) = int f(w) Q_m(z, w) s^m dw on the upper half-space, Q_m the (m+1)-st vertical derivative of the "
            "Poisson kernel scaled by (-2)^(m+1) / m!, applied to P(x, t + a)",
            {{"n", 1}, {"m", 1}, {"shift", 1.0}, {"points", 10}, {"tol", 0.01}},
            {{"points", 40}}, suite::reproduction_halfspace));
        v.push_back(entry(
            "rro",
            "int_0^1 (1 - r)^alpha / (1 - rho r)^lambda dr ~ (1 - rho)^(alpha + 1 - lambda) as rho -> 1, for "
            "alpha > -1 and lambda > alpha + 1",
            {{"pairs", {{0.0, 2.0}, {0.5, 3.0}, {-0.5, 1.0}, {1.0, 2.5}}}, {"j0", 6}, {"j1", 20}, {"order", 16},
             {"slope_tol", 0.05}},
            {{"pairs", {{0.0, 2.0}, {0.5, 3.0}, {-0.5, 1.0}, {1.0, 2.5}, {-0.9, 0.5}, {3.0, 4.5}, {0.0, 1.2}}},
             {"j1", 30}},
            suite::rro));
        v.push_back(entry(
            "wellkn",
            "For positive increasing G on [0, 1), alpha > -1, beta > -1, gamma >= 0, 0 < q <= 1: (int_0^1 G(r) "
            "(1 - r)^beta (1 - rho r)^-gamma r^alpha dr)^q <= C int_0^1 G(r)^q (1 - r)^(beta q + q - 1) "
            "(1 - rho r)^(-q gamma) r^alpha dr uniformly in rho",
            {{"functions", 100}, {"q", {0.3, 0.5, 1.0}}, {"alpha", 0.5}, {"beta", 0.3}, {"gamma", 1.5},
             {"steps", 8}, {"jmax", 12}, {"order", 16}, {"stability_factor", 2.0}},
            {{"functions", 400}, {"jmax", 16}}, suite::wellkn));
        v.push_back(entry(
            "qbeta",
            "For integer beta > 0, delta > -1 and gamma > n + delta: int_B |Q_beta(rx', y)|^(gamma/(n+beta)) "
            "(1 - |y|)^delta dy ~ (1 - r)^(delta - gamma + n) as r -> 1",
            {{"n", 3}, {"beta", {1, 2}}, {"delta", {0.0, 0.5}}, {"gamma_offsets", {0.5, 1.5}}, {"j0", 8}, {"j1", 16},
             {"order", 16}, {"slope_tol", 0.07}},
            {{"n", 2}, {"j1", 20}}, suite::qbeta));
        v.push_back(entry(
            "kernel-estimates",
            "int_S |Q_beta(s x', y')| dsigma(y') ~ (1 - s)^-(1 + beta); int_S |r x' - y'|^-b dsigma(y') ~ "
            "(1 - r)^-(b - n + 1) for b > n - 1; |Q_beta(x, y)| <= C / |x - y|^(n + beta) type bound for integer beta",
            {{"q_cases", {{2, 0.5}, {2, 1}, {2, 2}, {3, 1}, {3, 2}}}, {"b_offsets", {0.5, 1.5}}, {"n", {2, 3}},
             {"j0", 6}, {"j1", 16}, {"order", 16}, {"slope_tol", 0.05}, {"bound_samples", 2000}},
            {{"j1", 22}, {"bound_samples", 20000}}, suite::kernel_estimates));
        v.push_back(entry(
            "qm",
            "On the upper half-space, for delta > -1 and gamma > n + 1 + delta: int |Q_m(z, w)|^(gamma/(n+m+1)) "
            "s^delta dw ~ t^(delta - gamma + n + 1) as t -> 0, together with |Q_m(z, w)| <= C |z - conj w|^-(n+m+1)",
            {{"n", {1, 2}}, {"m", {0, 1}}, {"delta", {0.0, 0.5}}, {"gamma_offsets", {0.5, 1.5}}, {"j0", 2},
             {"j1", 10}, {"slope_tol", 0.07}, {"bound_samples", 10000}},
            {{"j1", 14}, {"bound_samples", 100000}}, suite::qm));
        v.push_back(entry(
            "fy-estimates",
            "Norm estimates of f_y = Q_m(., y) as |y| -> 1: M_inf(f_y, |y|) ~ (1 - |y|)^-(n+m), M_1 ~ (1 - |y|)^-(1+m), "
            "B^{p,1}_alpha ~ (1 - |y|)^(alpha - 1 - m), B^{p,inf}_alpha ~ (1 - |y|)^(alpha - n - m), "
            "A^1_alpha ~ (1 - |y|)^(alpha - m), H^1_alpha ~ (1 - |y|)^(alpha - 1 - m)",
            {{"n", 2}, {"m", 2.0}, {"alpha", 0.5}, {"p", 2.0}, {"j0", 5}, {"j1", 12}, {"slope_tol", 0.07}},
            {{"j1", 14}}, suite::fy_estimates));
        v.push_back(entry(
            "pairing",
            "int_S (g * P_y')(r x') f(rho x') dsigma = 2 int_0^1 int_S Lambda_(m+1)(g * P_y')(r R x') f(rho R x') "
            "(1 - R^2)^m R^(n-1) dsigma dR = sum_k (r rho)^k sum_j b_k^j(f) b_k^j(g) Y_j^(k)(y') for m > -1",
            {{"cases", 50}, {"degree", 6}, {"m_min", -0.5}, {"m_max", 2.0}, {"r_max", 0.9}, {"tol", 1e-8}},
            {{"cases", 400}, {"degree", 10}}, suite::pairing));
        v.push_back(entry(
            "convolution-formula",
            "(c * f)(r^2 x') = int_S (g_c * P_y')(r x') f(r y') dsigma(y'), where b(g_c) = c; convolution is "
            "symmetric and commutes with Lambda_t",
            {{"cases", 30}, {"degree", 8}, {"r_max", 0.9}, {"t", 1.5}, {"tol", 1e-10}},
            {{"cases", 300}, {"degree", 14}}, suite::convolution_formula));
        auto mult = [](std::string shape) {
            return [shape](suite::Context& ctx) { return suite::multiplier(ctx, shape); };
        };
        const json mult_heavy = {{"sequences", 60}, {"families", 5}, {"K", 24}};
        v.push_back(entry(
            "multiplier-bpbp",
            "c in M_H(B^{p,1}_alpha, B^{q,1}_beta), 1 < p <= q, iff N_1(g_c) = sup_rho (1 - rho)^(m + 1 - alpha + "
            "beta) int_S |Lambda_(m+1)(g_c * P_x')(rho y')| dx' < inf",
            {{"n", 2}, {"K", 16}, {"sequences", 20}, {"families", 3}, {"p", 2.0}, {"q", 2.0}, {"alpha", 1.0},
             {"beta", 1.0}, {"m", 1.0}, {"C_sufficiency", 1.0}, {"C_necessity", 2.0},
             {"stability_factor", 2.0}},
            mult_heavy, mult("bpbp")));
        v.push_back(entry(
            "multiplier-main1",
            "c in M_H(B^{p,1}_alpha, B^{q,1}_beta), 0 < p <= 1, p <= q, m > alpha - 1, iff N_1(g_c) < inf",
            {{"n", 2}, {"K", 16}, {"sequences", 20}, {"families", 3}, {"p", 1.0}, {"q", 2.0}, {"alpha", 1.0},
             {"beta", 1.0}, {"m", 1.0}, {"C_sufficiency", 1.0}, {"C_necessity", 2.0},
             {"stability_factor", 2.0}},
            mult_heavy, mult("main1")));
        v.push_back(entry(
            "multiplier-bh",
            "c in M_H(B^{p,1}_alpha, H^s_beta), 0 < p <= 1, s >= 1, iff N_s(g_c) = sup_rho (1 - rho)^(m + 1 - alpha "
            "+ beta) (int_S |Lambda_(m+1)(g_c * P_x')(rho y')|^s dx')^(1/s) < inf",
            {{"n", 2}, {"K", 16}, {"sequences", 20}, {"families", 3}, {"p", 1.0}, {"s", 1.0}, {"alpha", 1.0},
             {"beta", 1.0}, {"m", 2.0}, {"C_sufficiency", 1.0}, {"C_necessity", 2.0},
             {"stability_factor", 2.0}},
            mult_heavy, mult("bh")));
        v.push_back(entry(
            "multiplier-haha",
            "c in M_H(H^1_alpha, H^s_beta), alpha >= 0, beta > 0, s >= 1, iff N_s(g_c) < inf",
            {{"n", 2}, {"K", 16}, {"sequences", 20}, {"families", 3}, {"alpha", 0.5}, {"s", 1.0}, {"beta", 1.0},
             {"m", 1.0}, {"C_sufficiency", 1.0}, {"C_necessity", 2.0},
             {"stability_factor", 2.0}},
            mult_heavy, mult("haha")));
        v.push_back(entry(
            "young",
            "||c * f||_{H^r_beta} <= C ||g_c||_{H^p_gamma} ||f||_{H^q_alpha} when 1/q + 1/p = 1 + 1/r and "
            "alpha + gamma = beta",
            {{"n", 2}, {"K", 10}, {"p", 1.0}, {"q", 2.0}, {"r", 2.0}, {"alpha", 0.5}, {"beta", 0.5}, {"gamma", 0.0},
             {"C", 2.5}, {"multipliers", 10}, {"family", 6}},
            {{"multipliers", 40}, {"family", 12}}, suite::young));
        v.push_back(entry(
            "embedding",
            "A^p_alpha embeds in A^inf_((alpha + n)/p): |f(x)| (1 - |x|)^((alpha + n)/p) <= C ||f||_{A^p_alpha}, from "
            "subharmonicity of |f|^p",
            {{"n", 2}, {"p", {1.0, 2.0, 4.0}}, {"alpha", {-0.5, 0.0, 1.0}}, {"radii", {0.5, 0.9, 0.99}},
             {"degree", 4}, {"slope_tol", 0.05}},
            {{"radii", {0.5, 0.9, 0.99, 0.999}}}, suite::embedding));
        v.push_back(entry(
            "norm-identities",
            "A^inf_alpha = H^inf_alpha, B^{inf,q}_alpha = H^q_alpha, Parseval for A^2_alpha, and B^{p0,1}_alpha "
            "contained in B^{p1,1}_alpha for p0 <= p1",
            {{"n", {2, 3}}, {"functions", 6}, {"degree", 6}, {"tol", 1e-8}},
            {{"functions", 30}, {"degree", 10}}, suite::norm_identities));
        v.push_back(entry(
            "distance-ball",
            "For f in A^inf_t, t = (alpha + n)/p, the distance from f to A^p_alpha is comparable to the infimum of "
            "eps > 0 for which int_U int_B |Q_beta(x, y)|^p ... < inf over U = {|f(x)| (1 - |x|)^t >= eps}; "
            "constructively f = f1 + f2 with ||f1||_{A^inf_t} <~ eps and f2 in A^p_alpha",
            {{"p", 2.0}, {"alpha", 1.8}, {"beta", 1}, {"eps_j0", 6}, {"eps_j1", 10}, {"slope_tol", 0.1},
             {"additivity_tol", 1e-6}, {"frontier", true}},
            {{"eps_j1", 12}}, suite::distance_ball));
        v.push_back(entry(
            "distance-halfspace",
            "For f in A~^inf_lambda on the upper half-space, lambda = (alpha + n + 1)/p, the distance to A~^p_alpha "
            "is comparable to the infimum of eps for which the Q_m integral over V = {|f(x, t)| t^lambda >= eps} is "
            "finite",
            {{"p", 4.0}, {"alpha", 0.0}, {"m", 1}, {"shift", 1.0}, {"eps_j0", 4}, {"eps_j1", 8},
             {"doubling_tol", 1e-3}},
            {{"eps_j1", 12}}, suite::distance_halfspace));
        return v;
    }();
    return r;
}

const Entry& find_entry(const std::string& name) {
    for (const Entry& e : registry())
        if (e.info.name == name) return e;
    throw UsageError("unknown suite '" + name + "' (see `harmspace list`)");
}

} // namespace

SuiteConfig SuiteConfig::from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("suite config must be a JSON object");
    SuiteConfig c;
    json params = json::object();
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "suite") {
            if (!it->is_string()) throw ConfigError("config: 'suite' must be a string");
            c.suite = it->get<std::string>();
        } else if (k == "seed") {
            if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
                throw ConfigError("config: 'seed' must be a non-negative integer");
            c.seed = it->get<std::uint64_t>();
        } else if (k == "tier") {
            if (!it->is_string()) throw ConfigError("config: 'tier' must be a string");
            c.tier = it->get<std::string>();
        } else if (k == "threads") {
            if (!it->is_number_integer() || it->get<long long>() < 0)
                throw ConfigError("config: 'threads' must be a non-negative integer");
            c.threads = it->get<unsigned>();
        } else if (k == "params") {
            if (!it->is_object()) throw ConfigError("config: 'params' must be an object");
            for (auto p = it->begin(); p != it->end(); ++p) params[p.key()] = *p;
        } else {
            params[k] = *it;
        }
    }
    c.params = std::move(params);
    return c;
}

json SuiteConfig::to_json() const {
    return {{"suite", suite}, {"seed", seed}, {"tier", tier}, {"params", params}};
}

const std::vector<SuiteInfo>& list_suites() {
    static const std::vector<SuiteInfo> infos = [] {
        std::vector<SuiteInfo> v;
        for (const Entry& e : registry()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

const SuiteInfo& find_suite(const std::string& name) { return find_entry(name).info; }

VerificationReport run_suite(const SuiteConfig& config) {
    const Entry& e = find_entry(config.suite);
    if (config.tier != "desk" && config.tier != "heavy")
        throw UsageError("unknown tier '" + config.tier + "' (desk or heavy)");
    const bool heavy = config.tier == "heavy";
    json defaults = e.info.defaults;
    if (heavy)
        for (auto it = e.heavy.begin(); it != e.heavy.end(); ++it) defaults[it.key()] = *it;
    suite::Context ctx{config, suite::Params(e.info.name, defaults, config.params), heavy,
                       config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency())};

    const auto t0 = std::chrono::steady_clock::now();
    VerificationReport r = e.run(ctx);
    r.suite = e.info.name;
    r.config = {{"seed", config.seed}, {"tier", config.tier}, {"params", ctx.params.merged()}};
    r.timing_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

json suites_catalog() {
    json out = json::array();
    for (const SuiteInfo& s : list_suites())
        out.push_back({{"name", s.name}, {"anchor", s.anchor}, {"defaults", s.defaults}, {"required", s.required}});
    return out;
}

namespace suite {

Params::Params(std::string suite, const json& defaults, const json& overrides) : suite_(std::move(suite)), p_(defaults) {
    if (!overrides.is_object()) throw ConfigError(suite_ + ": parameters must be a JSON object");
    for (auto it = overrides.begin(); it != overrides.end(); ++it) {
        if (!p_.contains(it.key())) throw ConfigError(suite_ + ": unknown parameter '" + it.key() + "'");
        const json& d = p_[it.key()];
        const bool same_kind = (d.is_number() && it->is_number()) || (d.is_boolean() && it->is_boolean()) ||
                               (d.is_string() && it->is_string()) || (d.is_array() && it->is_array());
        if (!same_kind) throw ConfigError(suite_ + ": parameter '" + it.key() + "' has the wrong type");
        p_[it.key()] = *it;
    }
}

const json& Params::raw(const std::string& key) const {
    if (!p_.contains(key)) throw ConfigError(suite_ + ": missing parameter '" + key + "'");
    return p_.at(key);
}

double Params::num(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(suite_ + ": parameter '" + key + "' must be a number");
    return v.get<double>();
}

int Params::integer(const std::string& key) const {
    const double v = num(key);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ConfigError(suite_ + ": parameter '" + key + "' must be an integer");
    return static_cast<int>(v);
}

bool Params::flag(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(suite_ + ": parameter '" + key + "' must be true or false");
    return v.get<bool>();
}

std::string Params::str(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(suite_ + ": parameter '" + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<double> Params::nums(const std::string& key) const {
    const json& v = raw(key);
    if (!v.is_array() || v.empty()) throw ConfigError(suite_ + ": parameter '" + key + "' must be a non-empty list");
    std::vector<double> out;
    for (const json& x : v) {
        if (!x.is_number()) throw ConfigError(suite_ + ": parameter '" + key + "' must list numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

std::vector<int> Params::ints(const std::string& key) const {
    std::vector<int> out;
    for (double x : nums(key)) {
        if (x != std::floor(x)) throw ConfigError(suite_ + ": parameter '" + key + "' must list integers");
        out.push_back(static_cast<int>(x));
    }
    return out;
}

std::vector<std::vector<double>> Params::tuples(const std::string& key, std::size_t width) const {
    const json& v = raw(key);
    if (!v.is_array() || v.empty()) throw ConfigError(suite_ + ": parameter '" + key + "' must be a non-empty list");
    std::vector<std::vector<double>> out;
    for (const json& row : v) {
        if (!row.is_array() || row.size() != width)
            throw ConfigError(suite_ + ": parameter '" + key + "' must list " + std::to_string(width) + "-tuples");
        std::vector<double> t;
        for (const json& x : row) {
            if (!x.is_number()) throw ConfigError(suite_ + ": parameter '" + key + "' must list numbers");
            t.push_back(x.get<double>());
        }
        out.push_back(std::move(t));
    }
    return out;
}

void Params::require(bool ok, const std::string& constraint) const {
    if (!ok) throw ConfigError(suite_ + ": " + constraint);
}

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + index + 0x632be59bd9b4e019ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::mt19937_64 case_rng(const Context& ctx, std::uint64_t index) {
    return std::mt19937_64(case_seed(ctx.config.seed, index));
}

// Distributions are written out rather than taken from <random> so the streams
// are identical across standard libraries.
namespace {
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
double gaussian(std::mt19937_64& rng) {
    const double u1 = 1.0 - uniform01(rng), u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}
} // namespace

double uniform(std::mt19937_64& rng, double a, double b) { return a + (b - a) * uniform01(rng); }

Vec random_direction(int n, std::mt19937_64& rng) {
    for (;;) {
        Vec v = Vec::zero(n);
        for (int i = 0; i < n; ++i) v[i] = gaussian(rng);
        const double r = v.norm();
        if (r > 1e-3) return v.scaled(1.0 / r);
    }
}

CoefficientField random_field(int n, int K, std::mt19937_64& rng, double decay) {
    CoefficientField c(n, K);
    for (int k = 0; k <= K; ++k)
        for (double& v : c.row(k)) v = gaussian(rng) * std::pow(decay, k);
    return c;
}

std::string tag(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void merge_cases(VerificationReport& into, const VerificationReport& sub, const std::string& prefix) {
    for (CaseResult c : sub.cases) {
        c.case_id = prefix + c.case_id;
        into.add(std::move(c));
    }
}

} // namespace suite

} // namespace harmspace
