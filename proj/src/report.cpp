#include "harmspace/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "harmspace/error.hpp"

namespace harmspace {

namespace {

const char* check_name(Check c) {
    switch (c) {
    case Check::abs: return "abs";
    case Check::rel: return "rel";
    case Check::le: return "le";
    case Check::ge: return "ge";
    case Check::flag: return "flag";
    }
    return "abs";
}

Check check_from(const std::string& s) {
    if (s == "abs") return Check::abs;
    if (s == "rel") return Check::rel;
    if (s == "le") return Check::le;
    if (s == "ge") return Check::ge;
    if (s == "flag") return Check::flag;
    throw ConfigError("unknown check kind: " + s);
}

std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse17(const std::string& s) {
    if (s == "nan") return NAN;
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    return std::stod(s);
}

} // namespace

nlohmann::json json_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double number_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse17(j.get<std::string>());
    return j.get<double>();
}

bool CaseResult::recompute() const {
    if (std::isnan(value)) return false;
    switch (check) {
    case Check::abs: return std::abs(value - expected) <= tol;
    case Check::rel: return std::abs(value - expected) <= tol * std::abs(expected);
    case Check::le: return value <= expected + tol;
    case Check::ge: return value >= expected - tol;
    case Check::flag: return value == expected;
    }
    return false;
}

CaseResult CaseResult::make(std::string id, double value, double expected, double tol, Check check,
                            nlohmann::json detail) {
    CaseResult c;
    c.case_id = std::move(id);
    c.value = value;
    c.expected = expected;
    c.tol = tol;
    c.check = check;
    c.detail = std::move(detail);
    c.pass = c.recompute();
    return c;
}

CaseResult& VerificationReport::add(CaseResult c) {
    cases.push_back(std::move(c));
    return cases.back();
}

CaseResult& VerificationReport::add(std::string id, double value, double expected, double tol, Check check,
                                    nlohmann::json detail) {
    return add(CaseResult::make(std::move(id), value, expected, tol, check, std::move(detail)));
}

bool VerificationReport::passed() const { return failures() == 0; }

std::size_t VerificationReport::failures() const {
    std::size_t f = 0;
    for (const auto& c : cases)
        if (!c.pass) ++f;
    return f;
}

nlohmann::json VerificationReport::to_json(bool include_timing) const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : cases) {
        cs.push_back({{"case_id", c.case_id},
                      {"value", json_number(c.value)},
                      {"expected", json_number(c.expected)},
                      {"tol", json_number(c.tol)},
                      {"check", check_name(c.check)},
                      {"verdict", c.pass ? "pass" : "fail"},
                      {"detail", c.detail}});
    }
    nlohmann::json j{{"suite", suite},
                     {"config", config},
                     {"cases", cs},
                     {"metadata", metadata},
                     {"verdict", passed() ? "pass" : "fail"}};
    if (include_timing) j["timing_seconds"] = timing_seconds;
    return j;
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
    VerificationReport r;
    r.suite = j.at("suite").get<std::string>();
    r.config = j.value("config", nlohmann::json::object());
    r.metadata = j.value("metadata", nlohmann::json::object());
    r.timing_seconds = j.value("timing_seconds", 0.0);
    for (const auto& c : j.at("cases")) {
        CaseResult cr;
        cr.case_id = c.at("case_id").get<std::string>();
        cr.value = number_from_json(c.at("value"));
        cr.expected = number_from_json(c.at("expected"));
        cr.tol = number_from_json(c.at("tol"));
        cr.check = check_from(c.value("check", std::string("abs")));
        cr.pass = c.at("verdict").get<std::string>() == "pass";
        cr.detail = c.value("detail", nlohmann::json::object());
        r.cases.push_back(std::move(cr));
    }
    return r;
}

std::string VerificationReport::to_csv() const {
    std::ostringstream os;
    os << "suite,case_id,value,expected,tol,verdict\n";
    for (const auto& c : cases)
        os << suite << ',' << c.case_id << ',' << fmt17(c.value) << ',' << fmt17(c.expected) << ',' << fmt17(c.tol)
           << ',' << (c.pass ? "pass" : "fail") << '\n';
    return os.str();
}

VerificationReport VerificationReport::from_csv(const std::string& text) {
    VerificationReport r;
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    if (line != "suite,case_id,value,expected,tol,verdict") throw ConfigError("report CSV: unexpected header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) f.push_back(cell);
        if (f.size() != 6) throw ConfigError("report CSV: expected 6 columns");
        r.suite = f[0];
        CaseResult c;
        c.case_id = f[1];
        c.value = parse17(f[2]);
        c.expected = parse17(f[3]);
        c.tol = parse17(f[4]);
        c.pass = f[5] == "pass";
        r.cases.push_back(std::move(c));
    }
    return r;
}

namespace {
bool same_number(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }
} // namespace

bool VerificationReport::operator==(const VerificationReport& o) const {
    if (suite != o.suite || config != o.config || metadata != o.metadata || cases.size() != o.cases.size())
        return false;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto &a = cases[i], &b = o.cases[i];
        if (a.case_id != b.case_id || !same_number(a.value, b.value) || !same_number(a.expected, b.expected) ||
            !same_number(a.tol, b.tol) || a.check != b.check || a.pass != b.pass || a.detail != b.detail)
            return false;
    }
    return true;
}

std::string render_report(const VerificationReport& r, const std::string& format, bool include_timing) {
    if (format == "json") return r.to_json(include_timing).dump(2) + "\n";
    if (format == "csv") return r.to_csv();
    throw UsageError("unknown report format: " + format);
}

void export_report(const VerificationReport& r, const std::string& format, const std::string& path,
                   bool include_timing) {
    const std::string text = render_report(r, format, include_timing);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open report file for writing: " + path);
    out << text;
    if (!out) throw Error("failed writing report file: " + path);
}

VerificationReport import_report(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open report file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    if (!text.empty() && text[0] == '{') return VerificationReport::from_json(nlohmann::json::parse(text));
    return VerificationReport::from_csv(text);
}

} // namespace harmspace
