#include <doctest.h>

#include "oracles.hpp"
#include "sas/engine.hpp"
#include "sas/fixtures.hpp"
#include "sas/report.hpp"

using namespace sas;

namespace {

const auto G = ResourceClass::Goods;

bool has_event(const std::vector<Event>& events, EventKind kind, std::string_view rule = {}) {
    return std::any_of(events.begin(), events.end(),
                       [&](const Event& e) { return e.kind == kind && (rule.empty() || e.rule_id == rule); });
}

} // namespace

TEST_CASE("richard ends sufficient after one tick") {
    const auto s = make_fixture("richard_iii");
    const auto result = step(s.population, s.sim, Rng(s.sim.seed));
    const auto states = classify_agent(*result.population.find("richard"), s.population.policy, Mode::Raw);
    CHECK(states.at(G) == SasState::Sufficiency);
    CHECK(states.at(ResourceClass::Status) == SasState::Sufficiency);
    CHECK(result.population.tick == 1);
    CHECK(result.events.front().kind == EventKind::TickStart);
    CHECK(result.events.back().kind == EventKind::TickEnd);
    for (std::size_t i = 0; i < result.events.size(); ++i) CHECK(result.events[i].seq == i);
    for (const auto& e : result.events)
        if (e.kind == EventKind::OutcomeCommitted) {
            CHECK_FALSE(e.rule_id.empty());
            CHECK_FALSE(e.agent_id.empty());
            CHECK_FALSE(e.counterparty_id.empty());
        }
}

TEST_CASE("no rules, no movement") {
    auto s = make_fixture("famine");
    s.population.rules.clear();
    for (auto& a : s.population.agents) a.strategy.stance = Stance::Defensive;  // debt: seek trade, none exists
    auto pop = s.population;
    Rng rng(3);
    for (int t = 0; t < 5; ++t) {
        auto r = step(pop, s.sim, rng);
        pop = std::move(r.population);
        rng = r.rng;
    }
    for (std::size_t i = 0; i < pop.agents.size(); ++i) CHECK(pop.agents[i].holdings == s.population.agents[i].holdings);
}

TEST_CASE("same seed, same events") {
    const auto s = make_fixture("famine");
    const auto a = step(s.population, s.sim, Rng(7));
    const auto b = step(s.population, s.sim, Rng(7));
    CHECK(a.population == b.population);
    CHECK(report_json(run(s.population, s.sim)) == report_json(run(s.population, s.sim)));
}

TEST_CASE("famine report") {
    const auto s = make_fixture("famine");
    const auto report = run(s.population, s.sim, "famine");
    CHECK(report.ticks_run == 1);
    const auto* sys = report.system_row(0, G);
    REQUIRE(sys);
    CHECK(sys->state == SasState::Abundance);
    CHECK(sys->required == 10);
    CHECK(sys->available == 16);
    int quasi = 0;
    for (const auto& r : report.rows)
        if (r.cls == G && r.cross == CrossState::QuasiScarcity) ++quasi;
    CHECK(quasi >= 1);
    CHECK(report.conservation_ok());
}

TEST_CASE("ticks = 0 is rejected") {
    auto s = make_fixture("richard_iii");
    s.sim.ticks = 0;
    try {
        run(s.population, s.sim);
        FAIL("expected InvalidConfig");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidConfig);
    }
}

TEST_CASE("protestant promise matures") {
    const auto s = make_fixture("protestant");
    const auto report = run(s.population, s.sim);
    CHECK(has_event(report.events, EventKind::InvestScheduled, "E_pm_return"));
    CHECK(has_event(report.events, EventKind::DeliveryDue, "E_pm_return"));
    const auto due = std::find_if(report.events.begin(), report.events.end(),
                                  [](const Event& e) { return e.kind == EventKind::DeliveryDue; });
    CHECK(due->tick == 5);
    // Deliveries come before any snapshot in their tick.
    const auto snap = std::find_if(report.events.begin(), report.events.end(), [&](const Event& e) {
        return e.tick == 5 && e.kind == EventKind::StateSnapshot;
    });
    CHECK(due < snap);

    auto short_run = s.sim;
    short_run.ticks = 3;
    CHECK_FALSE(has_event(run(s.population, short_run).events, EventKind::DeliveryDue));
}

TEST_CASE("rows are sorted and cover every tick") {
    const auto report = run(make_fixture("protestant").population, make_fixture("protestant").sim);
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const auto& a = report.rows[i - 1];
        const auto& b = report.rows[i];
        CHECK(std::tie(a.tick, a.agent_id, a.cls) < std::tie(b.tick, b.agent_id, b.cls));
    }
    CHECK(report.rows.back().tick == report.ticks_run);
}

TEST_CASE("destruction is flagged and the audit balances") {
    auto s = make_fixture("famine");
    for (auto& a : s.population.agents) a.strategy.stance = Stance::Creative;  // rich feast on their surplus
    const auto report = run(s.population, s.sim);
    CHECK(has_event(report.events, EventKind::NonConservingEvent));
    CHECK(report.conservation_ok());
    std::int64_t flagged = 0;
    for (const auto& e : report.events)
        for (const auto& d : e.deltas) flagged += d.delta;
    const auto before = oracle::total(oracle::system_counts(s.population));
    const auto after = oracle::total(oracle::system_counts(report.final_population));
    CHECK(static_cast<std::int64_t>(after) - static_cast<std::int64_t>(before) == flagged);
}

TEST_CASE("hoarding blocks exchanges that would draw on the hoard") {
    auto s = make_fixture("richard_iii");
    s.population.find("horseman")->strategy.stance = Stance::Adaptive;
    s.population.find("horseman")->requirements[G].items.add(ResourceItem(G, "horse"));
    s.population.find("horseman")->strategy.act_on_sufficiency = true;  // modesty, frugality: hoard
    const auto result = step(s.population, s.sim, Rng(0));
    const auto failed = std::find_if(result.events.begin(), result.events.end(),
                                     [](const Event& e) { return e.kind == EventKind::OutcomeFailed; });
    REQUIRE(failed != result.events.end());
    CHECK(failed->reason == FailureReason::RuleViolation);
    CHECK(result.population.find("horseman")->holdings.count(ResourceItem(G, "horse")) == 1);
}

TEST_CASE("stop conditions end the run early") {
    auto s = make_fixture("richard_iii");
    s.sim.ticks = 10;
    s.sim.stop_conditions = {{G, {SasState::Sufficiency}}};
    const auto report = run(s.population, s.sim);
    CHECK(report.stopped_early);
    CHECK(report.ticks_run == 1);
}

TEST_CASE("capacity exhaustion fails later claimants") {
    auto s = make_fixture("famine", "food-coupons");
    for (auto& r : s.population.rules)
        if (r.id == "food_coupons") r.capacity = 2;
    const auto report = run(s.population, s.sim);
    CHECK(report.failures_by_reason.at("DesignFlaw") == 2);
}
