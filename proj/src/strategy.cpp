#include "sas/strategy.hpp"

#include <algorithm>

namespace sas {

std::string_view to_string(Stance stance) {
    switch (stance) {
    case Stance::Defensive: return "defensive";
    case Stance::Reactive: return "reactive";
    case Stance::Adaptive: return "adaptive";
    case Stance::Creative: return "creative";
    }
    return "?";
}

std::optional<Stance> parse_stance(std::string_view name) {
    for (auto s : kAllStances)
        if (to_string(s) == name) return s;
    return std::nullopt;
}

std::string_view to_string(CounterpartyScope scope) {
    switch (scope) {
    case CounterpartyScope::Any: return "any";
    case CounterpartyScope::Agents: return "agents";
    case CounterpartyScope::Reservoir: return "reservoir";
    }
    return "?";
}

std::optional<CounterpartyScope> parse_counterparty_scope(std::string_view name) {
    for (auto s : {CounterpartyScope::Any, CounterpartyScope::Agents, CounterpartyScope::Reservoir})
        if (to_string(s) == name) return s;
    return std::nullopt;
}

namespace {

int state_column(SasState state) {
    switch (state) {
    case SasState::Scarcity: return 0;
    case SasState::Abundance: return 1;
    case SasState::Sufficiency: return 2;
    case SasState::Undefined: break;
    }
    return -1;
}

std::vector<StrategyCell> build_catalog() {
    using T = EntitlementType;
    auto cell = [](Stance stance, SasState state, std::string label, std::vector<Effect> effects) {
        StrategyCell c;
        c.number = static_cast<int>(stance) * 3 + state_column(state) + 1;
        c.stance = stance;
        c.state = state;
        c.label = std::move(label);
        c.effects = std::move(effects);
        return c;
    };
    const auto S = SasState::Scarcity;
    const auto A = SasState::Abundance;
    const auto F = SasState::Sufficiency;
    return {
        cell(Stance::Defensive, S, "debt", {ProposeExchange{std::nullopt, {T::Trade}, std::nullopt, CounterpartyScope::Any}}),
        cell(Stance::Defensive, A, "market_efficiency", {ProposeExchange{std::nullopt, {T::Trade}, std::nullopt, CounterpartyScope::Any}}),
        cell(Stance::Defensive, F, "greed_gluttony", {AdjustRequirement{std::nullopt, +1, std::nullopt}}),
        cell(Stance::Reactive, S, "simplifying_austerity", {AdjustRequirement{std::nullopt, -1, std::nullopt}}),
        cell(Stance::Reactive, A, "homophily_stereotypes", {Annotate{"homophily, stereotypes"}}),
        cell(Stance::Reactive, F, "opulence_self_destruction", {Annotate{"opulence, self-destructive behavior"}}),
        cell(Stance::Adaptive, S, "innovation", {ProposeExchange{}}),
        cell(Stance::Adaptive, A, "serialism_multiculturalism", {Annotate{"serialism, multiculturalism"}}),
        cell(Stance::Adaptive, F, "modesty_frugality", {HoardResources{}}),
        cell(Stance::Creative, S, "sacrifice_speculation",
             {Annotate{"sadism, masochism, ritual sacrifice, speculation"}}),
        cell(Stance::Creative, A, "lavishness_feasting", {DestroyResources{}}),
        cell(Stance::Creative, F, "generosity_charity", {GiveAway{}}),
    };
}

Stance draw_stance(const std::vector<StanceWeight>& weights, Rng& rng) {
    std::uint64_t total = 0;
    for (const auto& w : weights) total += w.weight;
    if (total == 0) return weights.front().stance;
    // Plain modulo on the raw 64-bit draw: the engine's output is then fixed
    // by the mt19937_64 sequence alone, independent of library distributions.
    auto r = rng() % total;
    for (const auto& w : weights) {
        if (r < w.weight) return w.stance;
        r -= w.weight;
    }
    return weights.back().stance;
}

std::uint64_t held_of(const Agent& holder, ResourceClass cls, std::string_view kind) {
    std::uint64_t n = 0;
    for (const auto& [item, count] : holder.holdings)
        if (item.cls == cls && item.kind == kind) n += count;
    return n;
}

// Holders admissible as counterparty, in population order with the reservoir last.
std::vector<const Agent*> counterparties(const Population& pop, const Agent& self, const PartyMatcher& matcher,
                                         CounterpartyScope scope) {
    std::vector<const Agent*> out;
    if (scope != CounterpartyScope::Reservoir)
        for (const auto& a : pop.agents)
            if (a.id != self.id && matcher.matches(a)) out.push_back(&a);
    if (scope != CounterpartyScope::Agents && pop.reservoir && matcher.matches(*pop.reservoir))
        out.push_back(&*pop.reservoir);
    return out;
}

// First admissible counterparty able to cover the rule's receive leg, else
// the first admissible one at all (the proposal will then fail on holdings).
const Agent* choose_counterparty(const Population& pop, const Agent& self, const EntitlementRule& rule,
                                 CounterpartyScope scope) {
    const auto candidates = counterparties(pop, self, rule.counterparty, scope);
    if (candidates.empty()) return nullptr;
    if (rule.receive && rule.type != EntitlementType::Extraction)
        for (const auto* c : candidates)
            if (held_of(*c, rule.receive->cls, rule.receive->kind) >= rule.receive->count) return c;
    return candidates.front();
}

std::vector<const EntitlementRule*> rules_by_id(const Population& pop) {
    std::vector<const EntitlementRule*> out;
    for (const auto& r : pop.rules) out.push_back(&r);
    std::sort(out.begin(), out.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    return out;
}

bool useful_delivery(const Agent& agent, const ItemSpec& spec, const Population& pop, std::string_view context) {
    auto it = agent.requirements.find(spec.cls);
    if (it == agent.requirements.end() || it->second.items.empty()) return true;
    const ResourceItem offered(spec.cls, spec.kind);
    for (const auto& [required, n] : it->second.items)
        if (satisfies(offered, required, pop.policy, context)) return true;
    return false;
}

void propose_exchange(const ProposeExchange& effect, const StrategyCell& cell, const Agent& agent,
                      const Population& pop, std::string_view context, Enactment& out) {
    const auto cls = effect.cls.value_or(cell.focus);
    const bool drain = cell.state == SasState::Abundance;
    auto type_allowed = [&effect](EntitlementType t) {
        if (effect.rule_types.empty()) return t == EntitlementType::Trade || t == EntitlementType::Gift;
        return std::find(effect.rule_types.begin(), effect.rule_types.end(), t) != effect.rule_types.end();
    };

    for (const auto* rule : rules_by_id(pop)) {
        if (effect.rule_id && rule->id != *effect.rule_id) continue;
        if (!type_allowed(rule->type) || rule->type == EntitlementType::Ownership) continue;
        if (!rule->subject.matches(agent)) continue;
        if (drain) {
            if (!rule->give || rule->give->cls != cls || held_of(agent, cls, rule->give->kind) == 0) continue;
        } else {
            if (!rule->receive || rule->receive->cls != cls) continue;
            if (!useful_delivery(agent, *rule->receive, pop, context)) continue;
        }
        const auto* counterparty = choose_counterparty(pop, agent, *rule, effect.counterparty);
        if (!counterparty) continue;
        out.proposals.push_back({agent.id, agent.id, counterparty->id, rule->id, cell.label, std::nullopt, {}});
        return;
    }
    out.proposals.push_back({agent.id, agent.id, {}, {}, cell.label, std::nullopt,
                             "no rule " + std::string(drain ? "draining " : "delivering ") +
                                 std::string(to_string(cls)) + " admits '" + agent.id + "'"});
}

void invest(const Invest& effect, const StrategyCell& cell, const Agent& agent, const Population& pop,
            Enactment& out) {
    const auto* rule = pop.rule(effect.commit_rule);
    const Agent* counterparty = nullptr;
    if (rule && rule->subject.matches(agent))
        counterparty = choose_counterparty(pop, agent, *rule, CounterpartyScope::Any);
    if (!counterparty) {
        out.proposals.push_back({agent.id, agent.id, {}, {}, cell.label, std::nullopt,
                                 "investment rule '" + effect.commit_rule + "' admits no counterparty"});
        return;
    }
    out.proposals.push_back({agent.id, agent.id, counterparty->id, rule->id, cell.label, effect, {}});
}

void give_away(const GiveAway& effect, const StrategyCell& cell, const Agent& donor, const Population& pop,
               const Snapshot& snapshot, Enactment& out) {
    const auto cls = effect.cls.value_or(cell.focus);
    const Agent* recipient = nullptr;
    if (effect.recipient == "scarcity") {
        for (const auto& a : pop.agents)
            if (a.id != donor.id && snapshot.state_of(a.id, cls) == SasState::Scarcity) {
                recipient = &a;
                break;
            }
    } else {
        recipient = pop.find(effect.recipient);
    }
    if (!recipient || recipient->id == donor.id) {
        out.annotations.push_back("no recipient for " + std::string(to_string(cls)) + " gift");
        return;
    }
    const EntitlementRule* gift = nullptr;
    for (const auto* rule : rules_by_id(pop)) {
        if (rule->type != EntitlementType::Gift || rule->receive->cls != cls) continue;
        if (effect.kind && rule->receive->kind != *effect.kind) continue;
        if (!rule->subject.matches(*recipient) || !rule->counterparty.matches(donor)) continue;
        gift = rule;
        break;
    }
    for (std::uint64_t i = 0; i < effect.count; ++i) {
        if (gift)
            out.proposals.push_back({donor.id, recipient->id, donor.id, gift->id, cell.label, std::nullopt, {}});
        else
            out.proposals.push_back({donor.id, recipient->id, {}, {}, cell.label, std::nullopt,
                                     "no gift rule lets '" + donor.id + "' give " +
                                         std::string(to_string(cls)) + " to '" + recipient->id + "'"});
    }
}

void destroy(const DestroyResources& effect, const StrategyCell& cell, const Agent& agent, Enactment& out) {
    const auto cls = effect.cls.value_or(cell.focus);
    auto matches = [&](const ResourceItem& item) { return item.cls == cls && (!effect.kind || item.kind == *effect.kind); };
    std::uint64_t amount = 0;
    if (effect.count) {
        amount = *effect.count;
    } else if (auto it = agent.requirements.find(cls); it != agent.requirements.end()) {
        const auto band = it->second.effective_band();
        const auto held = in_class(agent.holdings, cls).cardinality();
        if (band.upper && held > *band.upper) amount = held - *band.upper;
    }
    for (const auto& [item, n] : agent.holdings) {
        if (amount == 0) break;
        if (!matches(item)) continue;
        const auto take = std::min(n, amount);
        out.destructions.push_back({agent.id, item, take});
        amount -= take;
    }
}

void adjust(const AdjustRequirement& effect, const StrategyCell& cell, const Agent& agent, Enactment& out) {
    const auto cls = effect.cls.value_or(cell.focus);
    auto it = agent.requirements.find(cls);
    if (it == agent.requirements.end()) return;
    SufficiencyBand band;
    if (effect.target) {
        band = *effect.target;
    } else {
        const auto current = it->second.effective_band();
        auto shift = [d = effect.delta](std::uint64_t v) -> std::uint64_t {
            const auto shifted = static_cast<std::int64_t>(v) + d;
            return shifted < 0 ? 0 : static_cast<std::uint64_t>(shifted);
        };
        band.lower = shift(current.lower);
        if (current.upper) band.upper = std::max(band.lower, shift(*current.upper));
    }
    out.requirement_changes.push_back({agent.id, cls, band});
}

} // namespace

const std::vector<StrategyCell>& strategy_catalog() {
    static const std::vector<StrategyCell> catalog = build_catalog();
    return catalog;
}

const StrategyCell& catalog_cell(Stance stance, SasState state) {
    const int column = state_column(state);
    if (column < 0) throw Error(ErrorCode::InvalidConfig, "no strategy cell for an undefined state");
    return strategy_catalog()[static_cast<std::size_t>(static_cast<int>(stance) * 3 + column)];
}

std::optional<StrategyCell> select(const Agent& agent, const std::map<ResourceClass, SasState>& class_states,
                                   const StrategyProfile& profile, Rng& rng) {
    (void)agent;
    if (!profile.stance && !profile.stochastic()) return std::nullopt;

    std::optional<std::pair<SasState, ResourceClass>> focus;
    for (auto state : profile.state_salience) {
        if (state == SasState::Undefined) continue;
        if (state == SasState::Sufficiency && !profile.act_on_sufficiency) continue;
        for (auto cls : profile.class_salience) {
            auto it = class_states.find(cls);
            if (it != class_states.end() && it->second == state) {
                focus = {state, cls};
                break;
            }
        }
        if (focus) break;
    }
    if (!focus) return std::nullopt;

    const Stance stance = profile.stochastic() ? draw_stance(profile.stance_weights, rng) : *profile.stance;
    StrategyCell cell = catalog_cell(stance, focus->first);
    cell.focus = focus->second;
    for (const auto& o : profile.overrides)
        if (o.stance == stance && o.state == focus->first) cell.effects = o.effects;
    return cell;
}

Enactment enact(const StrategyCell& cell, const Agent& agent, const Population& pop, const Snapshot& snapshot,
                std::string_view context) {
    Enactment out;
    for (const auto& effect : cell.effects) {
        std::visit(
            [&](const auto& e) {
                using E = std::decay_t<decltype(e)>;
                if constexpr (std::is_same_v<E, AdjustRequirement>) {
                    adjust(e, cell, agent, out);
                } else if constexpr (std::is_same_v<E, DestroyResources>) {
                    destroy(e, cell, agent, out);
                } else if constexpr (std::is_same_v<E, HoardResources>) {
                    out.hoards.push_back(e.cls.value_or(cell.focus));
                } else if constexpr (std::is_same_v<E, ProposeExchange>) {
                    propose_exchange(e, cell, agent, pop, context, out);
                } else if constexpr (std::is_same_v<E, Invest>) {
                    invest(e, cell, agent, pop, out);
                } else if constexpr (std::is_same_v<E, GiveAway>) {
                    give_away(e, cell, agent, pop, snapshot, out);
                } else {
                    out.annotations.push_back(e.note);
                }
            },
            effect);
    }
    return out;
}

} // namespace sas
