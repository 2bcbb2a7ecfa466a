#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sas/population.hpp"
#include "sas/rule.hpp"

namespace sas {

// E+ / E-.
enum class OutcomeStatus : std::uint8_t { Success, Failure };

enum class FailureReason : std::uint8_t { DesignFlaw, RuleViolation, InsufficientHoldings, NoApplicableRule };

enum class Direction : std::uint8_t { ToSubject, ToCounterparty };

std::string_view to_string(OutcomeStatus status);
std::string_view to_string(FailureReason reason);
std::string_view to_string(Direction direction);

struct Transfer {
    Direction direction = Direction::ToSubject;
    ResourceItem item;
    std::uint64_t count = 0;

    friend bool operator==(const Transfer&, const Transfer&) = default;
};

// Holder's total of (class, kind) at evaluation time; apply refuses to commit
// when any of these has moved since.
struct HoldingBasis {
    std::string holder_id;
    ResourceClass cls = ResourceClass::Goods;
    std::string kind;
    std::uint64_t count = 0;

    friend bool operator==(const HoldingBasis&, const HoldingBasis&) = default;
};

struct ExchangeOutcome {
    std::string rule_id;
    EntitlementType type = EntitlementType::Trade;
    std::string subject_id;
    std::string counterparty_id;  // empty for ownership assertions
    std::vector<Transfer> transfers;
    OutcomeStatus status = OutcomeStatus::Failure;
    std::optional<FailureReason> failure_reason;
    bool complete = false;        // every specified leg executable in full
    bool rule_violation = false;  // the rule used is not socially legitimate
    std::vector<HoldingBasis> basis;
    std::string detail;

    bool success() const { return status == OutcomeStatus::Success; }

    friend bool operator==(const ExchangeOutcome&, const ExchangeOutcome&) = default;
};

struct ExchangeOptions {
    Mode mode = Mode::Raw;
    std::string context{kDefaultContext};
    // Unilateral legs (gift, extraction) may move what is available when
    // short; trades stay all-or-nothing.
    bool partial_commit = false;
};

// True when the holder's requirement for cls is undeclared or met
// (sufficiency or abundance) given the holdings.
bool requirement_met(const Agent& holder, ResourceClass cls, const ItemBag& holdings, const Population& pop,
                     const ExchangeOptions& options);

// Pure. Success iff every leg executes in full and the subject's requested
// class ends at sufficiency or abundance.
// Throws SelfExchange, NonMatchingParties.
ExchangeOutcome evaluate(const EntitlementRule& rule, const Agent& subject, const Agent& counterparty,
                         const Population& pop, const ExchangeOptions& options = {});

// Same contract with the reservoir as counterparty. Throws NoReservoir.
ExchangeOutcome evaluate_with_system(const EntitlementRule& rule, const Agent& subject, const Population& pop,
                                     const ExchangeOptions& options = {});

// Ownership: no transfer, success iff the subject holds the owned items.
ExchangeOutcome evaluate_ownership(const EntitlementRule& rule, const Agent& subject);

// Failure outcome for a proposal that found no rule.
ExchangeOutcome no_applicable_rule(std::string subject_id, std::string detail);

// Moves the outcome's transfers. Throws StaleOutcome when holdings changed
// since evaluation. Rule use counters advance when anything moved.
void apply_in_place(const ExchangeOutcome& outcome, Population& pop);
Population apply(const ExchangeOutcome& outcome, Population pop);

// E+ where the individual state meets the requirement, E- under scarcity.
enum class EntitlementSign : std::uint8_t { Plus, Minus, Undetermined };
EntitlementSign entitlement_sign(SasState individual);
std::string_view to_string(EntitlementSign sign);

} // namespace sas
