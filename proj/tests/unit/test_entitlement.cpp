#include <doctest.h>

#include "oracles.hpp"
#include "sas/entitlement.hpp"
#include "sas/fixtures.hpp"

using namespace sas;

namespace {

const auto G = ResourceClass::Goods;
const auto S = ResourceClass::Status;

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::SchemaError;
}

EntitlementRule gift_from_reservoir() {
    EntitlementRule r;
    r.id = "coupon";
    r.type = EntitlementType::Gift;
    r.counterparty.reservoir = true;
    r.receive = ItemSpec{G, "food", 1};
    return r;
}

} // namespace

TEST_CASE("richard trades his kingdom for a horse") {
    auto pop = make_fixture("richard_iii").population;
    const auto& rule = *pop.rule("kingdom_for_horse");
    const auto out = evaluate(rule, *pop.find("richard"), *pop.find("horseman"), pop);
    CHECK(out.success());
    CHECK(out.complete);
    REQUIRE(out.transfers.size() == 2);
    CHECK(out.transfers[0] == Transfer{Direction::ToCounterparty, ResourceItem(S, "kingship"), 1});
    CHECK(out.transfers[1] == Transfer{Direction::ToSubject, ResourceItem(G, "horse"), 1});
    CHECK(evaluate(rule, *pop.find("richard"), *pop.find("horseman"), pop) == out);

    const auto after = apply(out, pop);
    const auto& richard = *after.find("richard");
    CHECK(richard.holdings == ItemBag{{ResourceItem(G, "horse"), 1}});
    CHECK(after.find("horseman")->holdings == ItemBag{{ResourceItem(S, "kingship"), 1}});
    const auto states = classify_agent(richard, after.policy, Mode::Raw);
    CHECK(states.at(G) == SasState::Sufficiency);
    CHECK(states.at(S) == SasState::Sufficiency);
    CHECK(oracle::system_counts(after) == oracle::system_counts(pop));
}

TEST_CASE("protestant invests silk for a promise") {
    const auto pop = make_fixture("protestant").population;
    const auto out = evaluate(*pop.rule("E_pm"), *pop.find("protestant"), *pop.find("merchant"), pop);
    CHECK(out.success());
    const auto after = apply(out, pop);
    const auto& p = *after.find("protestant");
    CHECK(in_class(p.holdings, G) == ItemBag{{ResourceItem(G, "porcelain"), 1}, {ResourceItem(G, "copper"), 1}});
    CHECK(p.holdings.count(ResourceItem(ResourceClass::Service, "promise")) == 1);
}

TEST_CASE("a starving agent outside the wealth gate") {
    const auto pop = make_fixture("famine").population;
    const auto& rule = *pop.rule("market_food");
    CHECK(code_of([&] { evaluate(rule, *pop.find("p1"), *pop.reservoir, pop); }) == ErrorCode::NonMatchingParties);

    // Inside the gate but without cash: nothing moves.
    auto broke = pop;
    broke.find("w1")->holdings = {};
    const auto out = evaluate(rule, *broke.find("w1"), *broke.reservoir, broke);
    CHECK_FALSE(out.success());
    CHECK(out.failure_reason == FailureReason::InsufficientHoldings);
    CHECK(out.transfers.empty());
    CHECK(apply(out, broke) == broke);
}

TEST_CASE("gifts and extractions through the reservoir") {
    auto pop = make_fixture("famine").population;
    const auto coupon = gift_from_reservoir();
    pop.rules.push_back(coupon);
    const auto out = evaluate_with_system(coupon, *pop.find("p1"), pop);
    CHECK(out.success());
    const auto after = apply(out, pop);
    CHECK(after.find("p1")->holdings.count(ResourceItem(G, "food")) == 1);
    CHECK(after.reservoir->holdings.count(ResourceItem(G, "food")) == 5);

    auto empty = pop;
    empty.reservoir->holdings = {};
    const auto none = evaluate_with_system(coupon, *empty.find("p1"), empty);
    CHECK(none.failure_reason == FailureReason::InsufficientHoldings);

    EntitlementRule levy;
    levy.id = "levy";
    levy.type = EntitlementType::Extraction;
    levy.counterparty.reservoir = true;
    levy.give = ItemSpec{G, "food", 2};
    const auto taken = evaluate_with_system(levy, *pop.find("r1"), pop);
    CHECK(taken.success());
    REQUIRE(taken.transfers.size() == 1);
    CHECK(taken.transfers[0].direction == Direction::ToCounterparty);
    const auto levied = apply(taken, pop);
    CHECK(levied.reservoir->holdings.count(ResourceItem(G, "food")) == 8);
    CHECK(oracle::system_counts(levied) == oracle::system_counts(pop));

    Population bare;
    bare.agents = pop.agents;
    CHECK(code_of([&] { evaluate_with_system(coupon, *bare.find("p1"), bare); }) == ErrorCode::NoReservoir);
}

TEST_CASE("party checks") {
    const auto pop = make_fixture("richard_iii").population;
    const auto& rule = *pop.rule("kingdom_for_horse");
    CHECK(code_of([&] { evaluate(rule, *pop.find("richard"), *pop.find("richard"), pop); }) == ErrorCode::SelfExchange);
    CHECK(code_of([&] { evaluate(rule, *pop.find("horseman"), *pop.find("richard"), pop); }) ==
          ErrorCode::NonMatchingParties);
}

TEST_CASE("complete exchange that leaves the need unmet is a design flaw") {
    auto pop = make_fixture("richard_iii").population;
    pop.find("richard")->requirements[G].items.add(ResourceItem(G, "saddle"));
    const auto out = evaluate(*pop.rule("kingdom_for_horse"), *pop.find("richard"), *pop.find("horseman"), pop);
    CHECK_FALSE(out.success());
    CHECK(out.complete);
    CHECK(out.failure_reason == FailureReason::DesignFlaw);
    CHECK(out.transfers.size() == 2);
}

TEST_CASE("illegitimate rules are flagged") {
    auto pop = make_fixture("richard_iii").population;
    auto rule = *pop.rule("kingdom_for_horse");
    rule.legitimate = false;
    const auto ok = evaluate(rule, *pop.find("richard"), *pop.find("horseman"), pop);
    CHECK(ok.success());
    CHECK(ok.rule_violation);
    pop.find("horseman")->holdings = {};
    const auto bad = evaluate(rule, *pop.find("richard"), *pop.find("horseman"), pop);
    CHECK(bad.failure_reason == FailureReason::RuleViolation);
}

TEST_CASE("capacity limits uses per tick") {
    auto pop = make_fixture("famine").population;
    auto coupon = gift_from_reservoir();
    coupon.capacity = 1;
    pop.rules.push_back(coupon);
    const auto first = evaluate_with_system(coupon, *pop.find("p1"), pop);
    apply_in_place(first, pop);
    CHECK(pop.rule_uses.at("coupon") == 1);
    const auto second = evaluate_with_system(coupon, *pop.find("p2"), pop);
    CHECK(second.failure_reason == FailureReason::DesignFlaw);
}

TEST_CASE("partial commit only for unilateral legs") {
    auto pop = make_fixture("famine").population;
    auto coupon = gift_from_reservoir();
    coupon.receive->count = 10;
    ExchangeOptions partial;
    partial.partial_commit = true;
    const auto gift = evaluate_with_system(coupon, *pop.find("p1"), pop, partial);
    CHECK_FALSE(gift.success());
    REQUIRE(gift.transfers.size() == 1);
    CHECK(gift.transfers[0].count == 6);
    CHECK(evaluate_with_system(coupon, *pop.find("p1"), pop).transfers.empty());

    auto trade = *pop.rule("market_food");
    trade.give->count = 5;
    CHECK(evaluate_with_system(trade, *pop.find("m1"), pop, partial).transfers.empty());
}

TEST_CASE("stale outcomes are refused") {
    auto pop = make_fixture("richard_iii").population;
    const auto out = evaluate(*pop.rule("kingdom_for_horse"), *pop.find("richard"), *pop.find("horseman"), pop);
    pop.find("horseman")->holdings.add(ResourceItem(G, "horse"));
    CHECK(code_of([&] { apply(out, pop); }) == ErrorCode::StaleOutcome);
}

TEST_CASE("ownership asserts holdings without moving them") {
    const auto pop = make_fixture("richard_iii").population;
    EntitlementRule crown;
    crown.id = "crown";
    crown.type = EntitlementType::Ownership;
    crown.subject.id = "richard";
    crown.give = ItemSpec{S, "kingship", 1};
    const auto out = evaluate_ownership(crown, *pop.find("richard"));
    CHECK(out.success());
    CHECK(out.transfers.empty());
    CHECK_FALSE(evaluate_ownership(crown, *pop.find("horseman")).success());
}

TEST_CASE("entitlement sign follows the individual state") {
    CHECK(entitlement_sign(SasState::Scarcity) == EntitlementSign::Minus);
    CHECK(entitlement_sign(SasState::Sufficiency) == EntitlementSign::Plus);
    CHECK(entitlement_sign(SasState::Abundance) == EntitlementSign::Plus);
    CHECK(entitlement_sign(SasState::Undefined) == EntitlementSign::Undetermined);
}

TEST_CASE("rule leg validation") {
    EntitlementRule r;
    r.id = "g";
    r.type = EntitlementType::Gift;
    CHECK(code_of([&] { r.validate(); }) == ErrorCode::SchemaError);
    r.receive = ItemSpec{G, "food", 1};
    r.validate();
    r.give = ItemSpec{G, "food", 1};
    CHECK(code_of([&] { r.validate(); }) == ErrorCode::SchemaError);
}
