#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sas/entitlement.hpp"
#include "sas/population.hpp"
#include "sas/strategy.hpp"

namespace sas {

// Met when every agent declaring `cls` sits in one of `states`.
struct StopCondition {
    ResourceClass cls = ResourceClass::Goods;
    std::vector<SasState> states;

    bool met(const Snapshot& snapshot) const;

    friend bool operator==(const StopCondition&, const StopCondition&) = default;
};

struct SimConfig {
    std::uint64_t ticks = 1;
    std::uint64_t seed = 0;
    Mode mode = Mode::Raw;
    bool partial_commit = false;
    std::string context{kDefaultContext};
    std::vector<StopCondition> stop_conditions;

    // Throws InvalidConfig when ticks == 0.
    void validate() const;
    ExchangeOptions exchange_options() const { return {mode, context, partial_commit}; }

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

enum class EventKind : std::uint8_t {
    TickStart,
    DeliveryDue,
    OwnershipAsserted,
    StateSnapshot,
    StrategySelected,
    Annotation,
    RequirementAdjusted,
    OutcomeCommitted,
    OutcomeFailed,
    InvestScheduled,
    NonConservingEvent,
    TickEnd,
};

std::string_view to_string(EventKind kind);

struct ItemDelta {
    std::string holder_id;
    ResourceItem item;
    std::int64_t delta = 0;
};

struct Event {
    std::uint64_t tick = 0;
    std::uint64_t seq = 0;  // position within the tick
    EventKind kind = EventKind::TickStart;
    std::string agent_id;
    std::string counterparty_id;
    std::string rule_id;
    std::optional<OutcomeStatus> status;
    std::optional<FailureReason> reason;
    bool rule_violation = false;
    std::vector<Transfer> transfers;
    std::vector<ItemDelta> deltas;
    std::string detail;
};

struct StepResult {
    Population population;
    std::vector<Event> events;
    Rng rng;
};

// One tick: matured deliveries, ownership assertions, snapshot, strategy
// selection on that snapshot, own-state mutations, then proposals resolved
// in agent order against the updated holdings. Never throws for exchange
// errors; they become OutcomeFailed events.
StepResult step(Population pop, const SimConfig& config, Rng rng);

struct StateRow {
    std::uint64_t tick = 0;
    std::string agent_id;
    ResourceClass cls = ResourceClass::Goods;
    std::uint64_t required = 0;
    std::uint64_t available = 0;
    SasState individual = SasState::Undefined;
    SasState system = SasState::Undefined;
    CrossState cross = CrossState::Undefined;
    EntitlementSign entitlement = EntitlementSign::Undetermined;
};

struct SystemRow {
    std::uint64_t tick = 0;
    ResourceClass cls = ResourceClass::Goods;
    std::uint64_t required = 0;
    std::uint64_t available = 0;
    SasState state = SasState::Undefined;
};

struct AuditViolation {
    std::uint64_t tick = 0;
    ResourceClass cls = ResourceClass::Goods;
    std::string kind;
    std::int64_t observed = 0;  // change in system total
    std::int64_t flagged = 0;   // sum of NonConservingEvent deltas
};

struct SimReport {
    std::string scenario;
    std::uint64_t seed = 0;
    Mode mode = Mode::Raw;
    std::uint64_t ticks_requested = 0;
    std::uint64_t ticks_run = 0;
    bool stopped_early = false;
    std::vector<StateRow> rows;  // sorted by (tick, agent id, class)
    std::vector<SystemRow> system_rows;
    std::uint64_t successes = 0;
    std::uint64_t failures = 0;
    std::map<std::string, std::uint64_t> failures_by_reason;
    std::uint64_t audited_ticks = 0;
    std::vector<AuditViolation> audit_violations;
    std::vector<Event> events;
    Population final_population;

    bool conservation_ok() const { return audit_violations.empty(); }
    const StateRow* row(std::uint64_t tick, std::string_view agent_id, ResourceClass cls) const;
    const SystemRow* system_row(std::uint64_t tick, ResourceClass cls) const;
};

// Rows for one snapshot: declared classes plus classes the agent holds.
void append_rows(const Snapshot& snapshot, std::uint64_t tick, std::vector<StateRow>& rows,
                 std::vector<SystemRow>& system_rows);

// Throws InvalidConfig for bad config, plus any Population::validate error.
SimReport run(Population pop, const SimConfig& config, std::string scenario_name = {});

} // namespace sas
