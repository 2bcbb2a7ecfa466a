#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "sas/classifier.hpp"
#include "sas/rule.hpp"

namespace sas {

// Coping stance toward a resource state: avoid, reduce, embrace, inflate.
enum class Stance : std::uint8_t { Defensive, Reactive, Adaptive, Creative };

inline constexpr std::array<Stance, 4> kAllStances = {Stance::Defensive, Stance::Reactive, Stance::Adaptive,
                                                      Stance::Creative};

std::string_view to_string(Stance stance);
std::optional<Stance> parse_stance(std::string_view name);

// Effect primitives. A missing class means "the class the cell was selected for".

// Shifts the sufficiency band (both bounds, clamped at zero) or replaces it.
struct AdjustRequirement {
    std::optional<ResourceClass> cls;
    std::int64_t delta = 0;
    std::optional<SufficiencyBand> target;
    friend bool operator==(const AdjustRequirement&, const AdjustRequirement&) = default;
};

// Removes own holdings from the system. Without a count, destroys the
// surplus above the band's upper bound.
struct DestroyResources {
    std::optional<ResourceClass> cls;
    std::optional<std::string> kind;
    std::optional<std::uint64_t> count;
    friend bool operator==(const DestroyResources&, const DestroyResources&) = default;
};

// Withholds own holdings of the class from counterparties this tick.
struct HoardResources {
    std::optional<ResourceClass> cls;
    friend bool operator==(const HoardResources&, const HoardResources&) = default;
};

enum class CounterpartyScope : std::uint8_t { Any, Agents, Reservoir };

std::string_view to_string(CounterpartyScope scope);
std::optional<CounterpartyScope> parse_counterparty_scope(std::string_view name);

// Seeks a rule delivering the class. Empty rule_types means any transferring type.
struct ProposeExchange {
    std::optional<ResourceClass> cls;
    std::vector<EntitlementType> rule_types;
    std::optional<std::string> rule_id;
    CounterpartyScope counterparty = CounterpartyScope::Any;
    friend bool operator==(const ProposeExchange&, const ProposeExchange&) = default;
};

// Commits through commit_rule (whose receive leg is a Service-class promise)
// and schedules delivery_rule against the same counterparty after `maturity` ticks.
struct Invest {
    std::string commit_rule;
    std::string delivery_rule;
    std::uint64_t maturity = 1;
    friend bool operator==(const Invest&, const Invest&) = default;
};

// Gift proposals to a recipient: "scarcity" picks the first agent scarce in the class.
struct GiveAway {
    std::optional<ResourceClass> cls;
    std::optional<std::string> kind;
    std::uint64_t count = 1;
    std::string recipient = "scarcity";
    friend bool operator==(const GiveAway&, const GiveAway&) = default;
};

// Log-only marker for cells without an exchange reading.
struct Annotate {
    std::string note;
    friend bool operator==(const Annotate&, const Annotate&) = default;
};

using Effect = std::variant<AdjustRequirement, DestroyResources, HoardResources, ProposeExchange, Invest, GiveAway,
                            Annotate>;

struct CellOverride {
    Stance stance = Stance::Defensive;
    SasState state = SasState::Scarcity;
    std::vector<Effect> effects;
    friend bool operator==(const CellOverride&, const CellOverride&) = default;
};

struct StanceWeight {
    Stance stance = Stance::Defensive;
    std::uint32_t weight = 1;
    friend bool operator==(const StanceWeight&, const StanceWeight&) = default;
};

// No stance and no weights means the agent never acts.
struct StrategyProfile {
    std::optional<Stance> stance;
    std::vector<StanceWeight> stance_weights;  // non-empty => stochastic stance per tick
    bool act_on_sufficiency = false;
    std::vector<SasState> state_salience{SasState::Scarcity, SasState::Abundance, SasState::Sufficiency};
    std::vector<ResourceClass> class_salience{ResourceClass::Goods,       ResourceClass::Money,
                                              ResourceClass::Service,     ResourceClass::Information,
                                              ResourceClass::Status,      ResourceClass::Love};
    std::vector<CellOverride> overrides;

    bool stochastic() const { return !stance_weights.empty(); }

    friend bool operator==(const StrategyProfile&, const StrategyProfile&) = default;
};

} // namespace sas
