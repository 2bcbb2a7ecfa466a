#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sas/classifier.hpp"
#include "sas/profile.hpp"
#include "sas/resource.hpp"
#include "sas/rule.hpp"

namespace sas {

// Id of the pseudo-agent standing for the generalized system counterparty.
inline constexpr std::string_view kReservoirId = "reservoir";

struct Requirement {
    ItemBag items;
    std::optional<SufficiencyBand> band;  // absent => exact |items|

    SufficiencyBand effective_band() const {
        return band ? *band : SufficiencyBand::exact(items.cardinality());
    }

    friend bool operator==(const Requirement&, const Requirement&) = default;
};

struct Agent {
    std::string id;
    std::map<ResourceClass, Requirement> requirements;  // declared relations only
    ItemBag holdings;
    StrategyProfile strategy;
    std::map<std::string, std::string> attributes;

    bool declares(ResourceClass cls) const { return requirements.count(cls) != 0; }
    bool is_reservoir() const { return id == kReservoirId; }

    friend bool operator==(const Agent&, const Agent&) = default;
};

struct ScheduledDelivery {
    std::uint64_t due_tick = 0;
    std::string subject_id;
    std::string counterparty_id;
    std::string rule_id;
    std::string origin_rule_id;

    friend bool operator==(const ScheduledDelivery&, const ScheduledDelivery&) = default;
};

// The closed system: every agent, the optional reservoir, the rules in force
// and the substitution conventions. The last three fields are run state.
struct Population {
    std::vector<Agent> agents;
    std::vector<EntitlementRule> rules;
    std::optional<Agent> reservoir;
    SubstitutionPolicy policy;
    std::map<ResourceClass, SufficiencyBand> system_bands;

    std::uint64_t tick = 0;
    std::map<std::string, std::uint64_t> rule_uses;  // this tick
    std::vector<ScheduledDelivery> pending;

    const Agent* find(std::string_view id) const;
    Agent* find(std::string_view id);
    const EntitlementRule* rule(std::string_view id) const;

    // Throws DuplicateId / InvalidConfig / DanglingReference.
    void validate() const;

    friend bool operator==(const Population&, const Population&) = default;
};

struct SystemView {
    std::map<ResourceClass, ItemBag> requirements;  // R_s, declared classes only
    std::map<ResourceClass, ItemBag> resources;     // A_s, reservoir included

    bool declares(ResourceClass cls) const { return requirements.count(cls) != 0; }
    ItemBag required_in(ResourceClass cls) const;
    ItemBag available_in(ResourceClass cls) const;
};

SystemView aggregate(const Population& pop);

// Bag sum of every holder's holdings.
ItemBag total_holdings(const Population& pop);

struct ClassStatus {
    std::uint64_t required = 0;
    std::uint64_t available = 0;
    SasState individual = SasState::Undefined;
    SasState system = SasState::Undefined;
    CrossState cross = CrossState::Undefined;
};

struct AgentStatus {
    std::string agent_id;
    std::map<ResourceClass, ClassStatus> classes;

    std::map<ResourceClass, SasState> individual_states() const;
};

struct SystemStatus {
    std::uint64_t required = 0;
    std::uint64_t available = 0;
    SasState state = SasState::Undefined;
};

struct Snapshot {
    std::vector<AgentStatus> agents;  // population order
    std::map<ResourceClass, SystemStatus> system;

    const AgentStatus* find(std::string_view agent_id) const;
    SasState state_of(std::string_view agent_id, ResourceClass cls) const;
};

std::map<ResourceClass, SystemStatus> classify_system(const Population& pop, Mode mode,
                                                      std::string_view context = kDefaultContext);

Snapshot snapshot_states(const Population& pop, Mode mode, std::string_view context = kDefaultContext);

} // namespace sas
