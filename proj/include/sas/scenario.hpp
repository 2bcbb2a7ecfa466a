#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "sas/engine.hpp"
#include "sas/population.hpp"

namespace sas {

inline constexpr std::uint64_t kSchemaVersion = 1;

struct ScenarioMetadata {
    std::string name;
    std::string description;
    friend bool operator==(const ScenarioMetadata&, const ScenarioMetadata&) = default;
};

struct ReportOptions {
    bool include_events = true;
    friend bool operator==(const ReportOptions&, const ReportOptions&) = default;
};

struct ScenarioFile {
    std::uint64_t schema_version = kSchemaVersion;
    ScenarioMetadata metadata;
    Population population;
    SimConfig sim;
    ReportOptions report;

    friend bool operator==(const ScenarioFile&, const ScenarioFile&) = default;
};

// Throws SchemaError (with a line or field locus), DanglingReference,
// DuplicateId, InvalidBand or InvalidConfig.
ScenarioFile parse_scenario(std::string_view text);

// Pretty-printed JSON with sorted keys.
std::string emit_scenario(const ScenarioFile& scenario);

ScenarioFile load_scenario(const std::filesystem::path& path);

} // namespace sas
