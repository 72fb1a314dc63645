#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "harmspace/error.hpp"
#include "harmspace/report.hpp"

using namespace harmspace;

namespace {
VerificationReport sample() {
    VerificationReport r;
    r.suite = "sample";
    r.config = {{"seed", 7}, {"alpha", 0.1}};
    r.add("a", 0.1 + 0.2, 0.3, 1e-15, Check::abs);
    r.add("b", 1.0 / 3.0, 0.3, 1e-3, Check::rel);
    r.add("c", INFINITY, 1.0, 0.0, Check::le);
    r.add("d", NAN, 0.0, 0.0, Check::ge);
    r.add("e", 1.0, 1.0, 0.0, Check::flag, {{"note", "x"}});
    return r;
}
} // namespace

TEST_CASE("verdicts follow the check kind") {
    const VerificationReport r = sample();
    CHECK(r.cases[0].pass);
    CHECK_FALSE(r.cases[1].pass);
    CHECK_FALSE(r.cases[2].pass);
    CHECK_FALSE(r.cases[3].pass);
    CHECK(r.cases[4].pass);
    CHECK(r.failures() == 3);
    CHECK_FALSE(r.passed());
    for (const auto& c : r.cases) CHECK(c.recompute() == c.pass);
}

TEST_CASE("JSON round trip and canonical form") {
    const VerificationReport r = sample();
    const std::string a = render_report(r, "json");
    CHECK(a == render_report(r, "json"));
    const VerificationReport back = VerificationReport::from_json(nlohmann::json::parse(a));
    CHECK(back == r);
    CHECK(render_report(back, "json") == a);
    CHECK(a.find("\"inf\"") != std::string::npos);
    CHECK(a.find("timing") == std::string::npos);
    CHECK(number_from_json(json_number(0.1)) == 0.1);
    CHECK(std::isnan(number_from_json(json_number(NAN))));
}

TEST_CASE("CSV schema and round trip") {
    const VerificationReport r = sample();
    const std::string csv = r.to_csv();
    CHECK(csv.rfind("suite,case_id,value,expected,tol,verdict\n", 0) == 0);
    const VerificationReport back = VerificationReport::from_csv(csv);
    REQUIRE(back.cases.size() == r.cases.size());
    for (std::size_t i = 0; i < r.cases.size(); ++i) {
        CHECK(back.cases[i].case_id == r.cases[i].case_id);
        CHECK(back.cases[i].pass == r.cases[i].pass);
        if (std::isfinite(r.cases[i].value)) CHECK(back.cases[i].value == r.cases[i].value);
    }
}

TEST_CASE("export and import through files") {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string path = (dir / "harmspace_report_test.json").string();
    const VerificationReport r = sample();
    export_report(r, "json", path);
    CHECK(import_report(path) == r);
    std::remove(path.c_str());
    CHECK_THROWS(export_report(r, "json", "/nonexistent-dir/x/report.json"));
    CHECK_THROWS(export_report(r, "xml", path));
}
