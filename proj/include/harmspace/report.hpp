#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace harmspace {

/// How a case's verdict follows from (value, expected, tol).
enum class Check {
    abs,   // |value - expected| <= tol
    rel,   // |value - expected| <= tol * |expected|
    le,    // value <= expected + tol
    ge,    // value >= expected - tol
    flag,  // value == expected (tol ignored)
};

struct CaseResult {
    std::string case_id;
    double value = 0.0;
    double expected = 0.0;
    double tol = 0.0;
    Check check = Check::abs;
    bool pass = false;
    nlohmann::json detail = nlohmann::json::object();

    static CaseResult make(std::string id, double value, double expected, double tol, Check check,
                           nlohmann::json detail = nlohmann::json::object());
    bool recompute() const;
};

struct VerificationReport {
    std::string suite;
    nlohmann::json config = nlohmann::json::object();
    std::vector<CaseResult> cases;
    nlohmann::json metadata = nlohmann::json::object();
    double timing_seconds = 0.0;

    CaseResult& add(CaseResult c);
    CaseResult& add(std::string id, double value, double expected, double tol, Check check,
                    nlohmann::json detail = nlohmann::json::object());
    bool passed() const;
    std::size_t failures() const;

    /// Canonical JSON: sorted keys, shortest round-trip numbers, non-finite values as strings.
    nlohmann::json to_json(bool include_timing = false) const;
    static VerificationReport from_json(const nlohmann::json& j);

    /// Columns: suite, case_id, value, expected, tol, verdict; numbers with 17 significant digits.
    std::string to_csv() const;
    static VerificationReport from_csv(const std::string& text);

    bool operator==(const VerificationReport& o) const;
};

/// Number to JSON, mapping inf / -inf / nan to strings so the document stays valid.
nlohmann::json json_number(double v);
double number_from_json(const nlohmann::json& j);

/// Writes the report in the given format ("json" or "csv"); throws with the path on I/O failure.
void export_report(const VerificationReport& r, const std::string& format, const std::string& path,
                   bool include_timing = false);
std::string render_report(const VerificationReport& r, const std::string& format, bool include_timing = false);
VerificationReport import_report(const std::string& path);

} // namespace harmspace
