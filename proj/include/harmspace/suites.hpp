#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "harmspace/report.hpp"

namespace harmspace {

/// Suite name, parameter overrides (merged over the suite's defaults), seed and tier.
/// "desk" keeps every suite within desk-scale runtime; "heavy" enlarges grids and samples.
struct SuiteConfig {
    std::string suite;
    nlohmann::json params = nlohmann::json::object();
    std::uint64_t seed = 1;
    std::string tier = "desk";
    /// Worker threads for case-level parallelism; 0 picks the hardware concurrency.
    unsigned threads = 0;

    /// Accepts {"suite", "seed", "tier", "params": {...}}; keys other than these are
    /// read as parameters too, so a flat file of parameters also works.
    static SuiteConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct SuiteInfo {
    std::string name;
    /// The statement the suite checks, in words.
    std::string anchor;
    /// Default parameters; every key listed here may be overridden.
    nlohmann::json defaults;
    /// Parameters the suite requires a value for (all have defaults).
    std::vector<std::string> required;
};

const std::vector<SuiteInfo>& list_suites();
const SuiteInfo& find_suite(const std::string& name);

/// Runs one suite. UsageError for an unknown suite, ConfigError naming the violated
/// constraint for parameters out of range. Deterministic for a fixed config.
VerificationReport run_suite(const SuiteConfig& config);

/// The catalog as JSON: [{name, anchor, defaults, required}].
nlohmann::json suites_catalog();

} // namespace harmspace
