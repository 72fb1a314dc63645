#include <doctest.h>

#include <set>
#include <string>

#include "harmspace/error.hpp"
#include "harmspace/report.hpp"
#include "harmspace/suites.hpp"

using namespace harmspace;
using nlohmann::json;

namespace {
SuiteConfig config(const std::string& suite, json params = json::object(), std::uint64_t seed = 1) {
    SuiteConfig c;
    c.suite = suite;
    c.params = std::move(params);
    c.seed = seed;
    c.threads = 1;
    return c;
}
} // namespace

TEST_CASE("catalog lists every suite with a statement and defaults") {
    std::set<std::string> names;
    for (const SuiteInfo& s : list_suites()) {
        CHECK_FALSE(s.anchor.empty());
        CHECK(s.defaults.is_object());
        CHECK(s.required.size() == s.defaults.size());
        CHECK(names.insert(s.name).second);
    }
    for (const char* n : {"gamma-exact", "poisson-consistency", "reproduction-ball", "reproduction-halfspace", "rro",
                          "wellkn", "qbeta", "qm", "fy-estimates", "pairing", "multiplier-bpbp", "multiplier-main1",
                          "multiplier-bh", "multiplier-haha", "distance-ball", "distance-halfspace"})
        CHECK(names.count(n) == 1);
    CHECK(suites_catalog().size() == list_suites().size());
    CHECK_THROWS_AS(find_suite("no-such-suite"), UsageError);
}

TEST_CASE("unknown suite and tier are usage errors") {
    CHECK_THROWS_AS(run_suite(config("no-such-suite")), UsageError);
    SuiteConfig c = config("gamma-exact");
    c.tier = "huge";
    CHECK_THROWS_AS(run_suite(c), UsageError);
}

TEST_CASE("bad parameters are config errors") {
    CHECK_THROWS_AS(run_suite(config("gamma-exact", {{"bogus", 1}})), ConfigError);
    CHECK_THROWS_AS(run_suite(config("gamma-exact", {{"tol", "small"}})), ConfigError);
    CHECK_THROWS_AS(run_suite(config("gamma-exact", {{"tol", -1.0}})), ConfigError);
    CHECK_THROWS_AS(run_suite(config("poisson-consistency", {{"r_max", 1.0}})), ConfigError);
    CHECK_THROWS_AS(run_suite(config("rro", {{"pairs", json::array({json::array({-2.0, 1.0})})}})), ConfigError);
}

TEST_CASE("config parsing accepts nested and flat parameters") {
    const SuiteConfig a = SuiteConfig::from_json(
        json::parse(R"({"suite": "gamma-exact", "seed": 9, "tier": "heavy", "params": {"tol": 1e-9}})"));
    CHECK(a.suite == "gamma-exact");
    CHECK(a.seed == 9);
    CHECK(a.tier == "heavy");
    CHECK(a.params.at("tol").get<double>() == 1e-9);
    const SuiteConfig b = SuiteConfig::from_json(json::parse(R"({"tol": 1e-9, "order": 20})"));
    CHECK(b.params.at("order").get<int>() == 20);
    CHECK(SuiteConfig::from_json(a.to_json()).to_json() == a.to_json());
    CHECK_THROWS_AS(SuiteConfig::from_json(json::parse(R"({"seed": "x"})")), ConfigError);
}

TEST_CASE("report records the merged config") {
    const VerificationReport r = run_suite(config("gamma-exact", {{"tol", 1e-9}}, 5));
    CHECK(r.suite == "gamma-exact");
    CHECK(r.config.at("seed").get<std::uint64_t>() == 5);
    CHECK(r.config.at("params").at("tol").get<double>() == 1e-9);
    CHECK(r.config.at("params").contains("order"));
    CHECK(r.cases.size() == 24);
    CHECK(r.passed());
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    SuiteConfig c = config("poisson-consistency", {{"samples", 40}, {"addition_pairs", 20}}, 11);
    const std::string a = render_report(run_suite(c), "json");
    const std::string b = render_report(run_suite(c), "json");
    c.threads = 4;
    const std::string d = render_report(run_suite(c), "json");
    CHECK(a == b);
    CHECK(a == d);
    c.seed = 12;
    CHECK(render_report(run_suite(c), "json") != a);
}
