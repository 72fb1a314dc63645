// Acceptance run: one PASS/FAIL line per criterion on stdout, failing case ids on stderr.
// Every tolerance and runtime limit is pinned here, independent of suite defaults.
// Exit status 0 only if all criteria pass.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "harmspace/report.hpp"
#include "harmspace/suites.hpp"

using namespace harmspace;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 1;

struct Run {
    std::string suite;
    json params;
};

struct Outcome {
    bool pass = true;
    std::size_t cases = 0, failed = 0;
    double seconds = 0;
};

Outcome run_all(const std::vector<Run>& runs) {
    Outcome o;
    for (const Run& r : runs) {
        SuiteConfig c;
        c.suite = r.suite;
        c.params = r.params;
        c.seed = kSeed;
        const auto t0 = std::chrono::steady_clock::now();
        VerificationReport rep;
        try {
            rep = run_suite(c);
        } catch (const std::exception& e) {
            std::fprintf(stderr, "  %s: error: %s\n", r.suite.c_str(), e.what());
            o.pass = false;
            continue;
        }
        o.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        o.cases += rep.cases.size();
        o.failed += rep.failures();
        if (rep.cases.empty()) o.pass = false;
        for (const CaseResult& cr : rep.cases)
            if (!cr.pass) {
                o.pass = false;
                std::fprintf(stderr, "  %s: FAIL %s value=%.6g expected=%.6g tol=%.3g\n", r.suite.c_str(),
                             cr.case_id.c_str(), cr.value, cr.expected, cr.tol);
            }
    }
    return o;
}

bool report(int id, const char* what, const Outcome& o, double limit_s) {
    const bool in_time = limit_s <= 0 || o.seconds < limit_s;
    const bool ok = o.pass && in_time;
    std::printf("criterion %d %s: %s (%zu cases, %zu failed, %.1f s", id, what, ok ? "PASS" : "FAIL", o.cases,
                o.failed, o.seconds);
    if (limit_s > 0) std::printf(", limit %.0f s%s", limit_s, in_time ? "" : " exceeded");
    std::printf(")\n");
    std::fflush(stdout);
    return ok;
}

bool determinism() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::size_t compared = 0;
    for (const char* suite : {"gamma-exact", "poisson-consistency", "pairing", "multiplier-bpbp"}) {
        SuiteConfig c;
        c.suite = suite;
        c.seed = 7;
        c.threads = 1;
        const std::string a = render_report(run_suite(c), "json");
        const std::string b = render_report(run_suite(c), "json");
        c.threads = 3;
        const std::string d = render_report(run_suite(c), "json");
        const std::string csv1 = render_report(run_suite(c), "csv");
        const std::string csv2 = render_report(run_suite(c), "csv");
        compared += 4;
        if (a != b || a != d || csv1 != csv2) {
            ok = false;
            std::fprintf(stderr, "  %s: reports differ between identical runs\n", suite);
        }
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion 9 determinism: %s (%zu report comparisons, %.1f s)\n", ok ? "PASS" : "FAIL", compared, s);
    std::fflush(stdout);
    return ok;
}

} // namespace

int main() {
    int failed = 0;
    auto tally = [&](bool ok) { failed += ok ? 0 : 1; };

    tally(report(1, "gamma integral", run_all({{"gamma-exact", {{"tol", 1e-8}}}}), 1));

    tally(report(2, "poisson consistency",
                 run_all({{"poisson-consistency",
                           {{"samples", 200}, {"r_max", 0.9}, {"tol", 1e-8}, {"addition_kmax", 12},
                            {"addition_tol", 1e-10}}}}),
                 10));

    tally(report(3, "reproduction",
                 run_all({{"reproduction-ball",
                           {{"n", {2, 3}}, {"beta", {1, 2}}, {"degree", 4}, {"points", 50}, {"tol", 1e-6}}},
                          {"reproduction-halfspace", {{"points", 10}, {"shift", 1.0}, {"tol", 0.01}}}}),
                 60));

    tally(report(4, "asymptotic exponents",
                 run_all({{"rro", {{"slope_tol", 0.05}}},
                          {"qbeta", {{"slope_tol", 0.07}}},
                          {"qm", {{"slope_tol", 0.07}}},
                          {"fy-estimates", {{"slope_tol", 0.07}}}}),
                 120));

    tally(report(5, "increasing-G inequality",
                 run_all({{"wellkn", {{"functions", 100}, {"q", {0.3, 0.5, 1.0}}, {"stability_factor", 2.0}}}}), 0));

    tally(report(6, "pairing identity", run_all({{"pairing", {{"cases", 50}, {"tol", 1e-8}}}}), 0));

    const json mult = {{"sequences", 20}, {"stability_factor", 2.0}};
    tally(report(7, "multiplier characterizations",
                 run_all({{"multiplier-bpbp", mult},
                          {"multiplier-main1", mult},
                          {"multiplier-bh", mult},
                          {"multiplier-haha", mult}}),
                 0));

    tally(report(8, "distance decomposition",
                 run_all({{"distance-ball", {{"slope_tol", 0.1}, {"additivity_tol", 1e-6}}}}), 300));

    tally(determinism());

    std::printf("%d of 9 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
