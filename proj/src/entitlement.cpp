#include "sas/entitlement.hpp"

#include <algorithm>

namespace sas {

std::string_view to_string(EntitlementType type) {
    switch (type) {
    case EntitlementType::Ownership: return "ownership";
    case EntitlementType::Trade: return "trade";
    case EntitlementType::Gift: return "gift";
    case EntitlementType::Extraction: return "extraction";
    }
    return "?";
}

std::optional<EntitlementType> parse_entitlement_type(std::string_view name) {
    for (auto t : {EntitlementType::Ownership, EntitlementType::Trade, EntitlementType::Gift,
                   EntitlementType::Extraction})
        if (to_string(t) == name) return t;
    return std::nullopt;
}

std::string describe(const ItemSpec& spec) {
    return std::string(to_string(spec.cls)) + ":" + spec.kind + ":" + std::to_string(spec.count);
}

bool PartyMatcher::matches(const Agent& party) const {
    if (reservoir && !party.is_reservoir()) return false;
    if (id && *id != party.id) return false;
    for (const auto& [key, accepted] : attributes) {
        auto it = party.attributes.find(key);
        if (it == party.attributes.end()) return false;
        if (std::find(accepted.begin(), accepted.end(), it->second) == accepted.end()) return false;
    }
    return true;
}

void EntitlementRule::validate() const {
    auto fail = [this](const std::string& why) { throw Error(ErrorCode::SchemaError, "rule '" + id + "': " + why); };
    if (id.empty()) fail("id must be non-empty");
    for (const auto* spec : {&give, &receive}) {
        if (!*spec) continue;
        if ((*spec)->kind.empty()) fail("leg kind must be non-empty");
        if ((*spec)->count == 0) fail("leg count must be positive");
    }
    switch (type) {
    case EntitlementType::Trade:
        if (!give || !receive) fail("trade needs both give and receive legs");
        break;
    case EntitlementType::Gift:
        if (give || !receive) fail("gift has only a receive leg");
        break;
    case EntitlementType::Extraction:
        if (!give || receive) fail("extraction has only a give leg");
        break;
    case EntitlementType::Ownership:
        if (!give || receive) fail("ownership names the owned items in its give leg only");
        break;
    }
}

std::string_view to_string(OutcomeStatus status) { return status == OutcomeStatus::Success ? "E+" : "E-"; }

std::string_view to_string(FailureReason reason) {
    switch (reason) {
    case FailureReason::DesignFlaw: return "DesignFlaw";
    case FailureReason::RuleViolation: return "RuleViolation";
    case FailureReason::InsufficientHoldings: return "InsufficientHoldings";
    case FailureReason::NoApplicableRule: return "NoApplicableRule";
    }
    return "?";
}

std::string_view to_string(Direction direction) {
    return direction == Direction::ToSubject ? "to-subject" : "to-counterparty";
}

EntitlementSign entitlement_sign(SasState individual) {
    switch (individual) {
    case SasState::Scarcity: return EntitlementSign::Minus;
    case SasState::Sufficiency:
    case SasState::Abundance: return EntitlementSign::Plus;
    case SasState::Undefined: break;
    }
    return EntitlementSign::Undetermined;
}

std::string_view to_string(EntitlementSign sign) {
    switch (sign) {
    case EntitlementSign::Plus: return "E+";
    case EntitlementSign::Minus: return "E-";
    case EntitlementSign::Undetermined: break;
    }
    return "~";
}

namespace {

std::uint64_t held_of(const Agent& holder, ResourceClass cls, std::string_view kind) {
    std::uint64_t n = 0;
    for (const auto& [item, count] : holder.holdings)
        if (item.cls == cls && item.kind == kind) n += count;
    return n;
}

// Concrete items covering `amount` of a (class, kind) leg, in holding order.
void pick_items(const Agent& holder, const ItemSpec& spec, std::uint64_t amount, Direction direction,
                std::vector<Transfer>& out) {
    for (const auto& [item, count] : holder.holdings) {
        if (amount == 0) break;
        if (item.cls != spec.cls || item.kind != spec.kind) continue;
        const auto take = std::min(count, amount);
        out.push_back({direction, item, take});
        amount -= take;
    }
}

struct Leg {
    const Agent* from;
    ItemSpec spec;
    Direction direction;
};

ItemBag holdings_after(const Agent& holder, const std::vector<Transfer>& transfers, bool holder_is_subject) {
    ItemBag bag = holder.holdings;
    for (const auto& t : transfers) {
        const bool inbound = (t.direction == Direction::ToSubject) == holder_is_subject;
        if (inbound)
            bag.add(t.item, t.count);
        else
            bag.remove(t.item, t.count);
    }
    return bag;
}

} // namespace

bool requirement_met(const Agent& holder, ResourceClass cls, const ItemBag& holdings, const Population& pop,
                     const ExchangeOptions& options) {
    auto it = holder.requirements.find(cls);
    if (it == holder.requirements.end()) return true;
    const auto m = measure(it->second.items, in_class(holdings, cls), options.mode, pop.policy, options.context);
    return classify(m.required, m.available, it->second.band) != SasState::Scarcity;
}

ExchangeOutcome evaluate_ownership(const EntitlementRule& rule, const Agent& subject) {
    ExchangeOutcome out;
    out.rule_id = rule.id;
    out.type = rule.type;
    out.subject_id = subject.id;
    out.rule_violation = !rule.legitimate;
    const auto& owned = *rule.give;
    const auto held = held_of(subject, owned.cls, owned.kind);
    out.basis.push_back({subject.id, owned.cls, owned.kind, held});
    out.complete = held >= owned.count;
    if (out.complete) {
        out.status = OutcomeStatus::Success;
    } else {
        out.failure_reason = rule.legitimate ? FailureReason::InsufficientHoldings : FailureReason::RuleViolation;
        out.detail = "holds " + std::to_string(held) + " of " + describe(owned);
    }
    return out;
}

ExchangeOutcome evaluate(const EntitlementRule& rule, const Agent& subject, const Agent& counterparty,
                         const Population& pop, const ExchangeOptions& options) {
    if (subject.id == counterparty.id)
        throw Error(ErrorCode::SelfExchange, "rule '" + rule.id + "' pairs '" + subject.id + "' with itself");
    if (!rule.subject.matches(subject) || !rule.counterparty.matches(counterparty))
        throw Error(ErrorCode::NonMatchingParties,
                    "rule '" + rule.id + "' does not admit '" + subject.id + "' with '" + counterparty.id + "'");
    if (rule.type == EntitlementType::Ownership) return evaluate_ownership(rule, subject);

    ExchangeOutcome out;
    out.rule_id = rule.id;
    out.type = rule.type;
    out.subject_id = subject.id;
    out.counterparty_id = counterparty.id;
    out.rule_violation = !rule.legitimate;

    std::vector<Leg> legs;
    if (rule.give && (rule.type == EntitlementType::Trade || rule.type == EntitlementType::Extraction))
        legs.push_back({&subject, *rule.give, Direction::ToCounterparty});
    if (rule.receive && (rule.type == EntitlementType::Trade || rule.type == EntitlementType::Gift))
        legs.push_back({&counterparty, *rule.receive, Direction::ToSubject});

    auto fail = [&out, &rule](FailureReason reason, std::string detail) {
        out.status = OutcomeStatus::Failure;
        out.failure_reason = rule.legitimate ? reason : FailureReason::RuleViolation;
        out.detail = std::move(detail);
        return out;
    };

    std::vector<std::uint64_t> feasible;
    out.complete = true;
    for (const auto& leg : legs) {
        const auto held = held_of(*leg.from, leg.spec.cls, leg.spec.kind);
        out.basis.push_back({leg.from->id, leg.spec.cls, leg.spec.kind, held});
        feasible.push_back(std::min(held, leg.spec.count));
        if (held < leg.spec.count) out.complete = false;
    }

    if (rule.capacity) {
        auto it = pop.rule_uses.find(rule.id);
        const auto used = it == pop.rule_uses.end() ? 0 : it->second;
        if (used >= *rule.capacity) {
            out.complete = false;
            return fail(FailureReason::DesignFlaw, "capacity of " + std::to_string(*rule.capacity) + " exhausted");
        }
    }

    if (!out.complete) {
        if (options.partial_commit && rule.type != EntitlementType::Trade)
            for (std::size_t i = 0; i < legs.size(); ++i)
                pick_items(*legs[i].from, legs[i].spec, feasible[i], legs[i].direction, out.transfers);
        std::string detail;
        for (std::size_t i = 0; i < legs.size(); ++i)
            if (feasible[i] < legs[i].spec.count)
                detail += "'" + legs[i].from->id + "' holds " + std::to_string(feasible[i]) + " of " +
                          describe(legs[i].spec) + "; ";
        return fail(FailureReason::InsufficientHoldings, detail);
    }

    for (const auto& leg : legs) pick_items(*leg.from, leg.spec, leg.spec.count, leg.direction, out.transfers);

    if (rule.receive && rule.type != EntitlementType::Extraction) {
        const auto after = holdings_after(subject, out.transfers, true);
        if (!requirement_met(subject, rule.receive->cls, after, pop, options))
            return fail(FailureReason::DesignFlaw, "exchange executed but " +
                                                       std::string(to_string(rule.receive->cls)) +
                                                       " requirement still unmet");
    }
    out.status = OutcomeStatus::Success;
    return out;
}

ExchangeOutcome evaluate_with_system(const EntitlementRule& rule, const Agent& subject, const Population& pop,
                                     const ExchangeOptions& options) {
    if (!pop.reservoir) throw Error(ErrorCode::NoReservoir, "rule '" + rule.id + "' needs a reservoir");
    return evaluate(rule, subject, *pop.reservoir, pop, options);
}

ExchangeOutcome no_applicable_rule(std::string subject_id, std::string detail) {
    ExchangeOutcome out;
    out.subject_id = std::move(subject_id);
    out.status = OutcomeStatus::Failure;
    out.failure_reason = FailureReason::NoApplicableRule;
    out.detail = std::move(detail);
    return out;
}

void apply_in_place(const ExchangeOutcome& outcome, Population& pop) {
    if (outcome.transfers.empty()) return;
    Agent* subject = pop.find(outcome.subject_id);
    Agent* counterparty = pop.find(outcome.counterparty_id);
    if (!subject || !counterparty)
        throw Error(ErrorCode::StaleOutcome, "outcome of rule '" + outcome.rule_id + "' names a missing party");
    for (const auto& b : outcome.basis) {
        const Agent* holder = pop.find(b.holder_id);
        if (!holder || held_of(*holder, b.cls, b.kind) != b.count)
            throw Error(ErrorCode::StaleOutcome, "holdings of '" + b.holder_id + "' changed since evaluation of '" +
                                                     outcome.rule_id + "'");
    }
    for (const auto& t : outcome.transfers) {
        Agent& from = t.direction == Direction::ToSubject ? *counterparty : *subject;
        Agent& to = t.direction == Direction::ToSubject ? *subject : *counterparty;
        from.holdings.remove(t.item, t.count);
        to.holdings.add(t.item, t.count);
    }
    if (!outcome.rule_id.empty()) ++pop.rule_uses[outcome.rule_id];
}

Population apply(const ExchangeOutcome& outcome, Population pop) {
    apply_in_place(outcome, pop);
    return pop;
}

} // namespace sas
