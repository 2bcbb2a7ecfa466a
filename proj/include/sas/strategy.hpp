#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sas/entitlement.hpp"
#include "sas/population.hpp"
#include "sas/profile.hpp"

namespace sas {

using Rng = std::mt19937_64;

// One cell of the 4 x 3 coping grid. `number` follows the grid's row-major
// numbering (1 = defensive/scarcity ... 12 = creative/sufficiency).
struct StrategyCell {
    int number = 0;
    Stance stance = Stance::Defensive;
    SasState state = SasState::Scarcity;
    std::string label;
    std::vector<Effect> effects;
    ResourceClass focus = ResourceClass::Goods;  // class the cell was selected for
};

// The twelve built-in cells with their default recipes:
//   1 debt                       propose a trade delivering the class
//   2 market_efficiency          propose a trade draining the surplus
//   3 greed_gluttony             raise the band by one
//   4 simplifying_austerity      lower the band by one
//   5 homophily_stereotypes      annotation only
//   6 opulence_self_destruction  annotation only
//   7 innovation                 propose any transferring rule delivering the class
//   8 serialism_multiculturalism annotation only
//   9 modesty_frugality          hoard the class
//  10 sacrifice_speculation      annotation only
//  11 lavishness_feasting        destroy the surplus above the band
//  12 generosity_charity         give one unit to an agent in scarcity
const std::vector<StrategyCell>& strategy_catalog();

// Throws InvalidConfig for an Undefined state.
const StrategyCell& catalog_cell(Stance stance, SasState state);

// Picks the most salient (state, class) pair and the agent's stance for it.
// Draws from rng only for profiles with stance weights.
std::optional<StrategyCell> select(const Agent& agent, const std::map<ResourceClass, SasState>& class_states,
                                   const StrategyProfile& profile, Rng& rng);

struct Proposal {
    std::string proposer_id;
    std::string subject_id;
    std::string counterparty_id;
    std::string rule_id;  // empty => no applicable rule was found
    std::string origin;   // cell label
    std::optional<Invest> invest;
    std::string detail;
};

struct RequirementChange {
    std::string agent_id;
    ResourceClass cls = ResourceClass::Goods;
    SufficiencyBand band;
};

struct Destruction {
    std::string agent_id;
    ResourceItem item;
    std::uint64_t count = 0;
};

struct Enactment {
    std::vector<Proposal> proposals;
    std::vector<RequirementChange> requirement_changes;
    std::vector<Destruction> destructions;
    std::vector<ResourceClass> hoards;
    std::vector<std::string> annotations;
};

// Pure: reads the agent, the population and its snapshot; every movement
// between holders is returned as a proposal for the entitlement engine.
Enactment enact(const StrategyCell& cell, const Agent& agent, const Population& pop, const Snapshot& snapshot,
                std::string_view context = kDefaultContext);

} // namespace sas
