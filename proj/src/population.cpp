#include "sas/population.hpp"

#include <algorithm>
#include <set>

namespace sas {

const Agent* Population::find(std::string_view id) const {
    for (const auto& a : agents)
        if (a.id == id) return &a;
    if (reservoir && reservoir->id == id) return &*reservoir;
    return nullptr;
}

Agent* Population::find(std::string_view id) {
    return const_cast<Agent*>(static_cast<const Population&>(*this).find(id));
}

const EntitlementRule* Population::rule(std::string_view id) const {
    for (const auto& r : rules)
        if (r.id == id) return &r;
    return nullptr;
}

namespace {

void check_matcher(const Population& pop, const PartyMatcher& m, const std::string& where) {
    if (m.id && !pop.find(*m.id))
        throw Error(ErrorCode::DanglingReference, where + " names unknown party '" + *m.id + "'");
    if ((m.reservoir || (m.id && *m.id == kReservoirId)) && !pop.reservoir)
        throw Error(ErrorCode::DanglingReference, where + " targets the reservoir but none is declared");
}

void check_rule_ref(const Population& pop, const std::string& id, const std::string& where) {
    if (!pop.rule(id)) throw Error(ErrorCode::DanglingReference, where + " names unknown rule '" + id + "'");
}

void check_profile(const Population& pop, const Agent& agent) {
    const auto where = "strategy of agent '" + agent.id + "'";
    for (const auto& o : agent.strategy.overrides) {
        for (const auto& effect : o.effects) {
            if (const auto* p = std::get_if<ProposeExchange>(&effect); p && p->rule_id)
                check_rule_ref(pop, *p->rule_id, where);
            if (const auto* inv = std::get_if<Invest>(&effect)) {
                check_rule_ref(pop, inv->commit_rule, where);
                check_rule_ref(pop, inv->delivery_rule, where);
            }
            if (const auto* g = std::get_if<GiveAway>(&effect); g && g->recipient != "scarcity" && !pop.find(g->recipient))
                throw Error(ErrorCode::DanglingReference, where + " gives to unknown agent '" + g->recipient + "'");
        }
    }
}

} // namespace

void Population::validate() const {
    if (agents.empty()) throw Error(ErrorCode::InvalidConfig, "population needs at least one agent");

    std::set<std::string> ids;
    for (const auto& a : agents) {
        if (a.id.empty()) throw Error(ErrorCode::InvalidConfig, "agent id must be non-empty");
        if (a.id == kReservoirId)
            throw Error(ErrorCode::DuplicateId, "agent id '" + a.id + "' is reserved for the reservoir");
        if (!ids.insert(a.id).second) throw Error(ErrorCode::DuplicateId, "duplicate agent id '" + a.id + "'");
        for (const auto& [cls, req] : a.requirements) {
            if (req.band && !req.band->valid())
                throw Error(ErrorCode::InvalidBand, "agent '" + a.id + "' " + std::string(to_string(cls)) + " band");
            for (const auto& [item, n] : req.items)
                if (item.cls != cls)
                    throw Error(ErrorCode::MixedClasses, "agent '" + a.id + "' lists " + describe(item) +
                                                             " under " + std::string(to_string(cls)));
        }
    }
    if (reservoir) {
        if (reservoir->id != kReservoirId) throw Error(ErrorCode::InvalidConfig, "reservoir must use the reserved id");
        if (!reservoir->requirements.empty())
            throw Error(ErrorCode::InvalidConfig, "reservoir cannot declare requirements");
    }
    for (const auto& [cls, band] : system_bands)
        if (!band.valid()) throw Error(ErrorCode::InvalidBand, "system band for " + std::string(to_string(cls)));

    std::set<std::string> rule_ids;
    for (const auto& r : rules) {
        if (!rule_ids.insert(r.id).second) throw Error(ErrorCode::DuplicateId, "duplicate rule id '" + r.id + "'");
        r.validate();
        check_matcher(*this, r.subject, "rule '" + r.id + "' subject");
        check_matcher(*this, r.counterparty, "rule '" + r.id + "' counterparty");
    }
    for (const auto& a : agents) check_profile(*this, a);
    for (const auto& d : pending) {
        check_rule_ref(*this, d.rule_id, "scheduled delivery");
        if (!find(d.subject_id) || !find(d.counterparty_id))
            throw Error(ErrorCode::DanglingReference, "scheduled delivery names an unknown party");
    }
}

ItemBag SystemView::required_in(ResourceClass cls) const {
    auto it = requirements.find(cls);
    return it == requirements.end() ? ItemBag{} : it->second;
}

ItemBag SystemView::available_in(ResourceClass cls) const {
    auto it = resources.find(cls);
    return it == resources.end() ? ItemBag{} : it->second;
}

SystemView aggregate(const Population& pop) {
    SystemView view;
    auto add_holdings = [&view](const Agent& a) {
        for (const auto& [item, n] : a.holdings) view.resources[item.cls].add(item, n);
    };
    for (const auto& a : pop.agents) {
        add_holdings(a);
        for (const auto& [cls, req] : a.requirements) view.requirements[cls] += req.items;
    }
    if (pop.reservoir) add_holdings(*pop.reservoir);
    return view;
}

ItemBag total_holdings(const Population& pop) {
    ItemBag total;
    for (const auto& a : pop.agents) total += a.holdings;
    if (pop.reservoir) total += pop.reservoir->holdings;
    return total;
}

std::map<ResourceClass, SasState> AgentStatus::individual_states() const {
    std::map<ResourceClass, SasState> out;
    for (const auto& [cls, st] : classes) out[cls] = st.individual;
    return out;
}

const AgentStatus* Snapshot::find(std::string_view agent_id) const {
    for (const auto& a : agents)
        if (a.agent_id == agent_id) return &a;
    return nullptr;
}

SasState Snapshot::state_of(std::string_view agent_id, ResourceClass cls) const {
    const auto* a = find(agent_id);
    if (!a) return SasState::Undefined;
    auto it = a->classes.find(cls);
    return it == a->classes.end() ? SasState::Undefined : it->second.individual;
}

std::map<ResourceClass, SystemStatus> classify_system(const Population& pop, Mode mode, std::string_view context) {
    const auto view = aggregate(pop);
    std::map<ResourceClass, SystemStatus> out;
    for (auto cls : kAllClasses) {
        SystemStatus st;
        const auto available = view.available_in(cls);
        st.available = available.cardinality();
        if (view.declares(cls)) {
            const auto m = measure(view.required_in(cls), available, mode, pop.policy, context);
            st.required = m.required;
            st.available = m.available;
            std::optional<SufficiencyBand> band;
            if (auto it = pop.system_bands.find(cls); it != pop.system_bands.end()) band = it->second;
            st.state = classify(m.required, m.available, band);
        }
        out[cls] = st;
    }
    return out;
}

Snapshot snapshot_states(const Population& pop, Mode mode, std::string_view context) {
    Snapshot snap;
    snap.system = classify_system(pop, mode, context);
    snap.agents.reserve(pop.agents.size());
    for (const auto& agent : pop.agents) {
        AgentStatus status;
        status.agent_id = agent.id;
        for (auto cls : kAllClasses) {
            ClassStatus cs;
            cs.system = snap.system[cls].state;
            const auto held = in_class(agent.holdings, cls);
            cs.available = held.cardinality();
            if (auto it = agent.requirements.find(cls); it != agent.requirements.end()) {
                const auto m = measure(it->second.items, held, mode, pop.policy, context);
                cs.required = m.required;
                cs.available = m.available;
                cs.individual = classify(m.required, m.available, it->second.band);
            }
            cs.cross = cross_classify(cs.individual, cs.system);
            status.classes[cls] = cs;
        }
        snap.agents.push_back(std::move(status));
    }
    return snap;
}

} // namespace sas
