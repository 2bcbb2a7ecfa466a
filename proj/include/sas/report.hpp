#pragma once

#include <string>

#include "sas/engine.hpp"

namespace sas {

inline constexpr int kReportSchemaVersion = 1;

// Pretty JSON with sorted keys; byte-identical for identical reports.
std::string report_json(const SimReport& report, bool include_events = true);

// Flat per-tick state table, one row per (tick, agent, class).
std::string states_csv(const SimReport& report);

} // namespace sas
