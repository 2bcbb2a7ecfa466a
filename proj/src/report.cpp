#include "sas/report.hpp"

#include <sstream>

#include <json.hpp>

namespace sas {

using nlohmann::json;

namespace {

json bag_json(const ItemBag& bag) {
    json arr = json::array();
    for (const auto& [item, n] : bag) {
        json e{{"class", to_string(item.cls)}, {"kind", item.kind}, {"count", n}};
        if (!item.quality_tags.empty()) e["tags"] = item.quality_tags;
        arr.push_back(std::move(e));
    }
    return arr;
}

json event_json(const Event& e) {
    json j{{"tick", e.tick}, {"seq", e.seq}, {"kind", to_string(e.kind)}};
    if (!e.agent_id.empty()) j["agent"] = e.agent_id;
    if (!e.counterparty_id.empty()) j["counterparty"] = e.counterparty_id;
    if (!e.rule_id.empty()) j["rule"] = e.rule_id;
    if (e.status) j["status"] = to_string(*e.status);
    if (e.reason) j["reason"] = to_string(*e.reason);
    if (e.rule_violation) j["rule_violation"] = true;
    for (const auto& t : e.transfers)
        j["transfers"].push_back({{"direction", to_string(t.direction)}, {"item", describe(t.item)}, {"count", t.count}});
    for (const auto& d : e.deltas)
        j["deltas"].push_back({{"holder", d.holder_id}, {"item", describe(d.item)}, {"delta", d.delta}});
    if (!e.detail.empty()) j["detail"] = e.detail;
    return j;
}

} // namespace

std::string report_json(const SimReport& r, bool include_events) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["scenario"] = r.scenario;
    j["seed"] = r.seed;
    j["mode"] = to_string(r.mode);
    j["ticks_requested"] = r.ticks_requested;
    j["ticks_run"] = r.ticks_run;
    j["stopped_early"] = r.stopped_early;
    j["outcomes"] = {{"E+", r.successes}, {"E-", r.failures}, {"failures_by_reason", r.failures_by_reason}};

    json violations = json::array();
    for (const auto& v : r.audit_violations)
        violations.push_back({{"tick", v.tick},
                              {"class", to_string(v.cls)},
                              {"kind", v.kind},
                              {"observed", v.observed},
                              {"flagged", v.flagged}});
    j["conservation"] = {{"ok", r.conservation_ok()}, {"audited_ticks", r.audited_ticks}, {"violations", violations}};

    json states = json::array();
    for (const auto& row : r.rows)
        states.push_back({{"tick", row.tick},
                          {"agent", row.agent_id},
                          {"class", to_string(row.cls)},
                          {"required", row.required},
                          {"available", row.available},
                          {"state", to_string(row.individual)},
                          {"system_state", to_string(row.system)},
                          {"cross_state", to_string(row.cross)},
                          {"entitlement", to_string(row.entitlement)},
                          {"extrapolated", is_extrapolated(row.cross)}});
    j["states"] = std::move(states);

    json system = json::array();
    for (const auto& row : r.system_rows)
        system.push_back({{"tick", row.tick},
                          {"class", to_string(row.cls)},
                          {"required", row.required},
                          {"available", row.available},
                          {"state", to_string(row.state)}});
    j["system"] = std::move(system);

    json holdings = json::object();
    for (const auto& a : r.final_population.agents) holdings[a.id] = bag_json(a.holdings);
    if (r.final_population.reservoir) holdings[r.final_population.reservoir->id] = bag_json(r.final_population.reservoir->holdings);
    j["final_holdings"] = std::move(holdings);

    if (include_events) {
        json events = json::array();
        for (const auto& e : r.events) events.push_back(event_json(e));
        j["events"] = std::move(events);
    }
    return j.dump(2) + "\n";
}

std::string states_csv(const SimReport& r) {
    std::ostringstream out;
    out << "tick,agent,class,required,available,state,system_state,cross_state,entitlement,extrapolated\n";
    for (const auto& row : r.rows)
        out << row.tick << ',' << row.agent_id << ',' << to_string(row.cls) << ',' << row.required << ','
            << row.available << ',' << to_string(row.individual) << ',' << to_string(row.system) << ','
            << to_string(row.cross) << ',' << to_string(row.entitlement) << ','
            << (is_extrapolated(row.cross) ? "true" : "false") << '\n';
    return out.str();
}

} // namespace sas
