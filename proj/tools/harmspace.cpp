// harmspace: run verification suites, list them, and evaluate norms and distance estimates.
//
// Exit codes: 0 every verdict passes, 1 some verdict fails, 2 usage or configuration error,
// 3 any other error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "harmspace/distance.hpp"
#include "harmspace/error.hpp"
#include "harmspace/norms.hpp"
#include "harmspace/report.hpp"
#include "harmspace/suites.hpp"

using namespace harmspace;
using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

/// Inline JSON, or the path of a JSON file.
json json_arg(const std::string& s) {
    try {
        return json::parse(s);
    } catch (const json::parse_error&) {
        return read_json_file(s);
    }
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << text;
    if (!out) throw Error("write failed: " + path);
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("--eps-grid: cannot read '" + item + "' as a number");
        }
    }
    if (v.empty()) throw UsageError("--eps-grid: empty list");
    return v;
}

int cmd_list(bool as_json) {
    if (as_json) {
        std::cout << suites_catalog().dump(2) << '\n';
        return 0;
    }
    for (const SuiteInfo& s : list_suites()) {
        std::cout << s.name << "\n  " << s.anchor << "\n  parameters:";
        for (const std::string& k : s.required) std::cout << ' ' << k;
        std::cout << "\n";
    }
    return 0;
}

struct VerifyArgs {
    std::string suite, config, out, format = "json", tier;
    std::uint64_t seed = 0;
    bool seed_set = false;
    unsigned threads = 0;
    bool timing = false;
};

int cmd_verify(const VerifyArgs& a) {
    SuiteConfig cfg;
    if (!a.config.empty()) cfg = SuiteConfig::from_json(read_json_file(a.config));
    if (!cfg.suite.empty() && cfg.suite != a.suite)
        throw UsageError("config names suite '" + cfg.suite + "' but '" + a.suite + "' was requested");
    cfg.suite = a.suite;
    if (a.seed_set) cfg.seed = a.seed;
    if (!a.tier.empty()) cfg.tier = a.tier;
    if (a.threads) cfg.threads = a.threads;
    const VerificationReport r = run_suite(cfg);
    write_output(render_report(r, a.format, a.timing), a.out);
    std::fprintf(stderr, "%s: %zu cases, %zu failed, %.2f s\n", r.suite.c_str(), r.cases.size(), r.failures(),
                 r.timing_seconds);
    for (const CaseResult& c : r.cases)
        if (!c.pass)
            std::fprintf(stderr, "  FAIL %s value=%.17g expected=%.17g tol=%.3g\n", c.case_id.c_str(), c.value,
                         c.expected, c.tol);
    return r.passed() ? 0 : 1;
}

int cmd_norm(const std::string& coeffs, const std::string& space, const NormOptions& opt) {
    const HarmonicFunction f(CoefficientField::from_json(read_json_file(coeffs)));
    const SpaceSpec spec = SpaceSpec::from_json(json_arg(space));
    spec.validate();
    if (spec.family == Family::Atilde || spec.family == Family::Atilde_inf)
        throw UsageError("norm: half-space families need a half-space function, not ball coefficients");
    const NormResult r = space_norm(f, spec, opt);
    json out = r.to_json();
    out["space"] = spec.to_json();
    out["label"] = spec.label();
    std::cout << out.dump(2) << '\n';
    return 0;
}

int cmd_distance(const std::string& coeffs, double p, double alpha, int beta, const std::string& grid,
                 const std::string& format, const std::string& out_path) {
    const HarmonicFunction f(CoefficientField::from_json(read_json_file(coeffs)));
    if (f.dimension() != 2) throw UnsupportedConfiguration("distance: n = 2 only");
    DistanceParams P;
    P.p = p;
    P.alpha = alpha;
    // Smallest integer kernel order above max(t - 1, alpha / p) unless given.
    P.beta = beta > 0 ? beta : static_cast<int>(std::floor(std::max({P.t() - 1.0, alpha / p, 0.0}))) + 1;
    try {
        P.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    const DistanceEstimate est = distance_bound_check(BallFunction::from_expansion(f), P, parse_grid(grid));
    write_output(format == "csv" ? est.to_csv() : est.to_json().dump(2), out_path);
    return est.report.passed() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Harmonic function spaces: verification suites, norms and distance estimates"};
    app.require_subcommand(1);

    bool list_json = false;
    auto* list = app.add_subcommand("list", "List suites with the statement each checks and its parameters");
    list->add_flag("--json", list_json, "Print the catalog as JSON");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run one verification suite");
    verify->add_option("suite", va.suite, "Suite name (see list)")->required();
    verify->add_option("--config", va.config, "JSON config: {\"params\": {...}, \"seed\": N, \"tier\": ...}");
    verify->add_option("--seed", va.seed, "RNG seed (overrides the config)")->each([&](const std::string&) {
        va.seed_set = true;
    });
    verify->add_option("--out", va.out, "Output path (default stdout)");
    verify->add_option("--format", va.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--tier", va.tier, "desk (default) or heavy")->check(CLI::IsMember({"desk", "heavy"}));
    verify->add_option("--threads", va.threads, "Worker threads (default: hardware concurrency)");
    verify->add_flag("--timing", va.timing, "Include the wall time in the report (breaks byte-stability)");

    std::string n_coeffs, n_space;
    NormOptions nopt;
    auto* norm = app.add_subcommand("norm", "Norm of a harmonic function given by its coefficients");
    norm->add_option("--coeffs", n_coeffs, "Coefficient file {n, K, rows}")->required();
    norm->add_option("--space", n_space, "Space as JSON (inline or file), e.g. {\"family\":\"A\",\"p\":2,\"alpha\":1}")
        ->required();
    norm->add_option("--radial-order", nopt.radial_order, "Radial panel order");
    norm->add_option("--sphere-degree", nopt.sphere_degree, "Sphere rule degree (0: automatic)");

    std::string d_coeffs, d_grid, d_format = "json", d_out;
    double d_p = 2.0, d_alpha = 1.8;
    int d_beta = 0;
    auto* dist = app.add_subcommand("distance", "t2 verdicts and the f = f1 + f2 decomposition in the disc");
    dist->add_option("--coeffs", d_coeffs, "Coefficient file {n: 2, K, rows}")->required();
    dist->add_option("--p", d_p, "Exponent p");
    dist->add_option("--alpha", d_alpha, "Weight alpha");
    dist->add_option("--beta", d_beta, "Integer kernel order (default: smallest admissible)");
    dist->add_option("--eps-grid", d_grid, "Comma-separated eps values")->required();
    dist->add_option("--format", d_format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    dist->add_option("--out", d_out, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*list) return cmd_list(list_json);
        if (*verify) return cmd_verify(va);
        if (*norm) return cmd_norm(n_coeffs, n_space, nopt);
        if (*dist) return cmd_distance(d_coeffs, d_p, d_alpha, d_beta, d_grid, d_format, d_out);
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const UnsupportedConfiguration& e) {
        std::fprintf(stderr, "unsupported: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
