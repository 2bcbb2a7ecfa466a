#include "sas/engine.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace sas {

std::string_view to_string(EventKind kind) {
    switch (kind) {
    case EventKind::TickStart: return "TickStart";
    case EventKind::DeliveryDue: return "DeliveryDue";
    case EventKind::OwnershipAsserted: return "OwnershipAsserted";
    case EventKind::StateSnapshot: return "StateSnapshot";
    case EventKind::StrategySelected: return "StrategySelected";
    case EventKind::Annotation: return "Annotation";
    case EventKind::RequirementAdjusted: return "RequirementAdjusted";
    case EventKind::OutcomeCommitted: return "OutcomeCommitted";
    case EventKind::OutcomeFailed: return "OutcomeFailed";
    case EventKind::InvestScheduled: return "InvestScheduled";
    case EventKind::NonConservingEvent: return "NonConservingEvent";
    case EventKind::TickEnd: return "TickEnd";
    }
    return "?";
}

bool StopCondition::met(const Snapshot& snapshot) const {
    for (const auto& a : snapshot.agents) {
        auto it = a.classes.find(cls);
        if (it == a.classes.end() || it->second.individual == SasState::Undefined) continue;
        if (std::find(states.begin(), states.end(), it->second.individual) == states.end()) return false;
    }
    return true;
}

void SimConfig::validate() const {
    if (ticks == 0) throw Error(ErrorCode::InvalidConfig, "ticks must be at least 1");
    for (const auto& s : stop_conditions)
        if (s.states.empty()) throw Error(ErrorCode::InvalidConfig, "stop condition lists no states");
}

namespace {

class TickLog {
public:
    explicit TickLog(std::uint64_t tick) : tick_(tick) {}

    Event& push(EventKind kind, std::string agent_id = {}) {
        Event e;
        e.tick = tick_;
        e.seq = events_.size();
        e.kind = kind;
        e.agent_id = std::move(agent_id);
        events_.push_back(std::move(e));
        return events_.back();
    }

    void outcome(const ExchangeOutcome& o, std::string detail_prefix = {}) {
        const bool committed = !o.transfers.empty() || o.success();
        auto& e = push(committed ? EventKind::OutcomeCommitted : EventKind::OutcomeFailed, o.subject_id);
        e.counterparty_id = o.counterparty_id;
        e.rule_id = o.rule_id;
        e.status = o.status;
        e.reason = o.failure_reason;
        e.rule_violation = o.rule_violation;
        e.transfers = o.transfers;
        e.detail = std::move(detail_prefix);
        if (!o.detail.empty()) e.detail += (e.detail.empty() ? "" : ": ") + o.detail;
    }

    std::vector<Event> take() { return std::move(events_); }

private:
    std::uint64_t tick_;
    std::vector<Event> events_;
};

std::string describe_states(const AgentStatus& status) {
    std::string out;
    for (const auto& [cls, cs] : status.classes) {
        if (cs.individual == SasState::Undefined) continue;
        if (!out.empty()) out += ' ';
        out += std::string(to_string(cls)) + "=" + std::string(to_string(cs.individual)) + "/" +
               std::string(to_string(cs.cross));
    }
    return out;
}

ExchangeOutcome failed(std::string subject, std::string counterparty, const EntitlementRule& rule,
                       FailureReason reason, std::string detail) {
    ExchangeOutcome o;
    o.rule_id = rule.id;
    o.type = rule.type;
    o.subject_id = std::move(subject);
    o.counterparty_id = std::move(counterparty);
    o.status = OutcomeStatus::Failure;
    o.failure_reason = reason;
    o.rule_violation = !rule.legitimate;
    o.detail = std::move(detail);
    return o;
}

// Evaluates and, when anything moves, commits. Errors become failures.
ExchangeOutcome resolve(const EntitlementRule& rule, const std::string& subject_id,
                        const std::string& counterparty_id, Population& pop, const SimConfig& config,
                        const std::set<std::pair<std::string, ResourceClass>>& hoards) {
    const Agent* subject = pop.find(subject_id);
    const Agent* counterparty = pop.find(counterparty_id);
    if (!subject || !counterparty)
        return failed(subject_id, counterparty_id, rule, FailureReason::NoApplicableRule, "unknown party");
    if (rule.receive && rule.type != EntitlementType::Extraction &&
        hoards.count({counterparty_id, rule.receive->cls}))
        return failed(subject_id, counterparty_id, rule, FailureReason::RuleViolation,
                      "'" + counterparty_id + "' withholds " + std::string(to_string(rule.receive->cls)));
    try {
        auto outcome = evaluate(rule, *subject, *counterparty, pop, config.exchange_options());
        apply_in_place(outcome, pop);
        return outcome;
    } catch (const Error& e) {
        const auto reason = e.code() == ErrorCode::NonMatchingParties ? FailureReason::NoApplicableRule
                                                                      : FailureReason::DesignFlaw;
        return failed(subject_id, counterparty_id, rule, reason, e.what());
    }
}

} // namespace

StepResult step(Population pop, const SimConfig& config, Rng rng) {
    const auto tick = pop.tick;
    TickLog log(tick);
    log.push(EventKind::TickStart);
    pop.rule_uses.clear();

    // Matured investments settle before anything else looks at the state.
    std::vector<ScheduledDelivery> due;
    std::vector<ScheduledDelivery> later;
    for (auto& d : pop.pending) (d.due_tick <= tick ? due : later).push_back(std::move(d));
    pop.pending = std::move(later);
    for (const auto& d : due) {
        auto& e = log.push(EventKind::DeliveryDue, d.subject_id);
        e.counterparty_id = d.counterparty_id;
        e.rule_id = d.rule_id;
        e.detail = "promise from '" + d.origin_rule_id + "'";
        const auto* rule = pop.rule(d.rule_id);
        if (!rule) {
            log.outcome(no_applicable_rule(d.subject_id, "delivery rule '" + d.rule_id + "' missing"), "delivery");
            continue;
        }
        log.outcome(resolve(*rule, d.subject_id, d.counterparty_id, pop, config, {}), "delivery");
    }

    std::vector<const EntitlementRule*> ownership;
    for (const auto& r : pop.rules)
        if (r.type == EntitlementType::Ownership) ownership.push_back(&r);
    std::sort(ownership.begin(), ownership.end(), [](const auto* a, const auto* b) { return a->id < b->id; });
    for (const auto* rule : ownership)
        for (const auto& a : pop.agents)
            if (rule->subject.matches(a)) {
                const auto o = evaluate_ownership(*rule, a);
                auto& e = log.push(EventKind::OwnershipAsserted, a.id);
                e.rule_id = rule->id;
                e.status = o.status;
                e.reason = o.failure_reason;
                e.rule_violation = o.rule_violation;
                e.detail = o.detail;
            }

    // Every decision below reads this snapshot and the population as it is now.
    const auto snapshot = snapshot_states(pop, config.mode, config.context);
    for (const auto& status : snapshot.agents) log.push(EventKind::StateSnapshot, status.agent_id).detail = describe_states(status);

    std::vector<Enactment> enactments;
    enactments.reserve(pop.agents.size());
    for (std::size_t i = 0; i < pop.agents.size(); ++i) {
        const auto& agent = pop.agents[i];
        const auto cell = select(agent, snapshot.agents[i].individual_states(), agent.strategy, rng);
        if (!cell) {
            enactments.emplace_back();
            continue;
        }
        log.push(EventKind::StrategySelected, agent.id).detail =
            "cell " + std::to_string(cell->number) + " " + std::string(to_string(cell->stance)) + "/" +
            std::string(to_string(cell->state)) + " " + cell->label + " on " + std::string(to_string(cell->focus));
        enactments.push_back(enact(*cell, agent, pop, snapshot, config.context));
    }

    std::set<std::pair<std::string, ResourceClass>> hoards;
    for (std::size_t i = 0; i < enactments.size(); ++i) {
        const auto& en = enactments[i];
        const auto& agent_id = pop.agents[i].id;
        for (const auto& note : en.annotations) log.push(EventKind::Annotation, agent_id).detail = note;
        for (auto cls : en.hoards) {
            hoards.insert({agent_id, cls});
            log.push(EventKind::Annotation, agent_id).detail = "hoards " + std::string(to_string(cls));
        }
        for (const auto& change : en.requirement_changes) {
            auto* agent = pop.find(change.agent_id);
            agent->requirements[change.cls].band = change.band;
            auto& e = log.push(EventKind::RequirementAdjusted, agent_id);
            e.detail = std::string(to_string(change.cls)) + " band [" + std::to_string(change.band.lower) + ", " +
                       (change.band.upper ? std::to_string(*change.band.upper) : std::string("inf")) + "]";
        }
        for (const auto& d : en.destructions) {
            auto* agent = pop.find(d.agent_id);
            const auto n = std::min(d.count, agent->holdings.count(d.item));
            if (n == 0) continue;
            agent->holdings.remove(d.item, n);
            auto& e = log.push(EventKind::NonConservingEvent, agent_id);
            e.deltas.push_back({agent_id, d.item, -static_cast<std::int64_t>(n)});
            e.detail = "destroyed " + std::to_string(n) + " " + describe(d.item);
        }
    }

    // Proposal order: proposer in population order, then rule id.
    for (auto& en : enactments)
        std::stable_sort(en.proposals.begin(), en.proposals.end(),
                         [](const Proposal& a, const Proposal& b) { return a.rule_id < b.rule_id; });
    for (const auto& en : enactments) {
        for (const auto& p : en.proposals) {
            if (p.rule_id.empty()) {
                log.outcome(no_applicable_rule(p.subject_id, p.detail), p.origin);
                continue;
            }
            const auto& rule = *pop.rule(p.rule_id);
            const auto outcome = resolve(rule, p.subject_id, p.counterparty_id, pop, config, hoards);
            log.outcome(outcome, p.origin);
            if (p.invest && outcome.success()) {
                ScheduledDelivery d{tick + p.invest->maturity, p.subject_id, p.counterparty_id,
                                    p.invest->delivery_rule, p.rule_id};
                auto& e = log.push(EventKind::InvestScheduled, p.subject_id);
                e.counterparty_id = d.counterparty_id;
                e.rule_id = d.rule_id;
                e.detail = "due at tick " + std::to_string(d.due_tick);
                pop.pending.push_back(std::move(d));
            }
        }
    }

    log.push(EventKind::TickEnd);
    pop.tick = tick + 1;
    return {std::move(pop), log.take(), std::move(rng)};
}

const StateRow* SimReport::row(std::uint64_t tick, std::string_view agent_id, ResourceClass cls) const {
    for (const auto& r : rows)
        if (r.tick == tick && r.agent_id == agent_id && r.cls == cls) return &r;
    return nullptr;
}

const SystemRow* SimReport::system_row(std::uint64_t tick, ResourceClass cls) const {
    for (const auto& r : system_rows)
        if (r.tick == tick && r.cls == cls) return &r;
    return nullptr;
}

void append_rows(const Snapshot& snapshot, std::uint64_t tick, std::vector<StateRow>& rows,
                 std::vector<SystemRow>& system_rows) {
    std::vector<StateRow> fresh;
    for (const auto& a : snapshot.agents)
        for (const auto& [cls, cs] : a.classes) {
            if (cs.individual == SasState::Undefined && cs.available == 0) continue;
            fresh.push_back({tick, a.agent_id, cls, cs.required, cs.available, cs.individual, cs.system, cs.cross,
                             entitlement_sign(cs.individual)});
        }
    std::stable_sort(fresh.begin(), fresh.end(), [](const StateRow& x, const StateRow& y) {
        return std::tie(x.agent_id, x.cls) < std::tie(y.agent_id, y.cls);
    });
    rows.insert(rows.end(), fresh.begin(), fresh.end());
    for (const auto& [cls, st] : snapshot.system)
        if (st.state != SasState::Undefined || st.available != 0)
            system_rows.push_back({tick, cls, st.required, st.available, st.state});
}

namespace {

using KindKey = std::pair<ResourceClass, std::string>;

std::map<KindKey, std::int64_t> kind_totals(const Population& pop) {
    std::map<KindKey, std::int64_t> totals;
    for (const auto& [item, n] : total_holdings(pop)) totals[{item.cls, item.kind}] += static_cast<std::int64_t>(n);
    return totals;
}

} // namespace

SimReport run(Population pop, const SimConfig& config, std::string scenario_name) {
    config.validate();
    pop.validate();

    SimReport report;
    report.scenario = std::move(scenario_name);
    report.seed = config.seed;
    report.mode = config.mode;
    report.ticks_requested = config.ticks;

    Rng rng(config.seed);
    for (std::uint64_t t = 0; t < config.ticks; ++t) {
        append_rows(snapshot_states(pop, config.mode, config.context), pop.tick, report.rows, report.system_rows);

        const auto before = kind_totals(pop);
        auto result = step(std::move(pop), config, std::move(rng));
        pop = std::move(result.population);
        rng = std::move(result.rng);
        const auto after = kind_totals(pop);

        std::map<KindKey, std::int64_t> flagged;
        for (const auto& e : result.events) {
            if (e.kind == EventKind::NonConservingEvent)
                for (const auto& d : e.deltas) flagged[{d.item.cls, d.item.kind}] += d.delta;
            if (e.kind == EventKind::OutcomeCommitted || e.kind == EventKind::OutcomeFailed) {
                if (e.status == OutcomeStatus::Success) {
                    ++report.successes;
                } else {
                    ++report.failures;
                    if (e.reason) ++report.failures_by_reason[std::string(to_string(*e.reason))];
                }
            }
        }
        std::set<KindKey> keys;
        for (const auto& [k, v] : before) keys.insert(k);
        for (const auto& [k, v] : after) keys.insert(k);
        for (const auto& [k, v] : flagged) keys.insert(k);
        for (const auto& k : keys) {
            auto get = [&k](const std::map<KindKey, std::int64_t>& m) {
                auto it = m.find(k);
                return it == m.end() ? std::int64_t{0} : it->second;
            };
            const auto observed = get(after) - get(before);
            if (observed != get(flagged))
                report.audit_violations.push_back({result.events.front().tick, k.first, k.second, observed, get(flagged)});
        }
        ++report.audited_ticks;
        report.events.insert(report.events.end(), std::make_move_iterator(result.events.begin()),
                             std::make_move_iterator(result.events.end()));
        ++report.ticks_run;

        if (!config.stop_conditions.empty()) {
            const auto snap = snapshot_states(pop, config.mode, config.context);
            const bool stop = std::all_of(config.stop_conditions.begin(), config.stop_conditions.end(),
                                          [&snap](const StopCondition& s) { return s.met(snap); });
            if (stop && t + 1 < config.ticks) {
                report.stopped_early = true;
                break;
            }
        }
    }
    append_rows(snapshot_states(pop, config.mode, config.context), pop.tick, report.rows, report.system_rows);
    report.final_population = std::move(pop);
    return report;
}

} // namespace sas
