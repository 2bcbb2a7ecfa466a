#include "sas/fixtures.hpp"

#include <algorithm>

#include "sas/error.hpp"

namespace sas {

namespace {

const auto Goods = ResourceClass::Goods;
const auto Money = ResourceClass::Money;
const auto Service = ResourceClass::Service;
const auto Status = ResourceClass::Status;

ItemBag bag(ResourceClass cls, std::initializer_list<std::pair<const char*, std::uint64_t>> kinds) {
    ItemBag b;
    for (const auto& [kind, n] : kinds) b.add(ResourceItem(cls, kind), n);
    return b;
}

EntitlementRule trade(std::string id, PartyMatcher subject, PartyMatcher counterparty, ItemSpec give,
                      ItemSpec receive) {
    EntitlementRule r;
    r.id = std::move(id);
    r.type = EntitlementType::Trade;
    r.subject = std::move(subject);
    r.counterparty = std::move(counterparty);
    r.give = std::move(give);
    r.receive = std::move(receive);
    return r;
}

PartyMatcher party(std::string id) {
    PartyMatcher m;
    m.id = std::move(id);
    return m;
}

PartyMatcher reservoir_party() {
    PartyMatcher m;
    m.reservoir = true;
    return m;
}

// "A horse! a horse! my kingdom for a horse!"
ScenarioFile richard_iii() {
    ScenarioFile s;
    s.metadata = {"richard_iii", "A king without a horse offers his kingdom for one."};
    Agent richard;
    richard.id = "richard";
    richard.requirements[Goods].items = bag(Goods, {{"horse", 1}});
    richard.requirements[Status] = {};
    richard.holdings = bag(Status, {{"kingship", 1}});
    richard.strategy.stance = Stance::Adaptive;
    Agent horseman;
    horseman.id = "horseman";
    horseman.holdings = bag(Goods, {{"horse", 1}});
    s.population.agents = {richard, horseman};
    s.population.rules = {trade("kingdom_for_horse", party("richard"), {}, {Status, "kingship", 1},
                                {Goods, "horse", 1})};
    s.population.policy.rules = {{Goods, "horse", "donkey", "transport"}, {Goods, "horse", "camel", "transport"}};
    s.sim.ticks = 1;
    return s;
}

// A believer with more goods than needed invests the surplus with a
// merchant for a promised return instead of consuming it.
ScenarioFile protestant(std::string_view variant) {
    const bool scarce_system = variant == "system-scarcity";
    ScenarioFile s;
    s.metadata = {"protestant",
                  scarce_system ? "Silk surplus held privately while the system as a whole lacks silk."
                                : "Silk surplus held privately in a system with silk to spare."};
    Agent believer;
    believer.id = "protestant";
    believer.requirements[Goods].items = bag(Goods, {{"porcelain", 1}, {"copper", 1}});
    believer.holdings = bag(Goods, {{"porcelain", 1}, {"copper", 1}, {"silk", 1}});
    believer.strategy.stance = Stance::Creative;
    believer.strategy.overrides = {{Stance::Creative, SasState::Abundance, {Invest{"E_pm", "E_pm_return", 5}}}};
    Agent merchant;
    merchant.id = "merchant";
    merchant.holdings = bag(Goods, {{"silk", 2}});
    merchant.holdings += bag(Service, {{"promise", 10}});
    if (scarce_system) merchant.requirements[Goods].items = bag(Goods, {{"silk", 4}});
    s.population.agents = {believer, merchant};
    s.population.rules = {
        trade("E_pm", party("protestant"), party("merchant"), {Goods, "silk", 1}, {Service, "promise", 1}),
        trade("E_pm_return", party("protestant"), party("merchant"), {Service, "promise", 1}, {Goods, "silk", 2}),
    };
    s.sim.ticks = 6;
    return s;
}

// Enough food overall, but only those with wealth can buy it.
ScenarioFile famine(std::string_view variant) {
    const bool coupons = variant == "food-coupons";
    ScenarioFile s;
    s.metadata = {"famine", coupons ? "Food coupons let every agent draw a ration from the public store."
                                    : "Food is sold from the public store only to those who can pay."};
    auto person = [](std::string id, std::string wealth, std::uint64_t food, std::uint64_t cash, bool acts) {
        Agent a;
        a.id = std::move(id);
        a.requirements[Goods].items = bag(Goods, {{"food", 1}});
        if (food) a.holdings.add(ResourceItem(Goods, "food"), food);
        if (cash) a.holdings.add(ResourceItem(Money, "cash"), cash);
        a.attributes["wealth"] = std::move(wealth);
        if (acts) a.strategy.stance = Stance::Adaptive;
        return a;
    };
    auto& agents = s.population.agents;
    agents.push_back(person("r1", "rich", 3, 2, true));
    agents.push_back(person("r2", "rich", 3, 2, true));
    for (const char* id : {"m1", "m2", "m3", "m4"}) agents.push_back(person(id, "middle", 1, 1, false));
    agents.push_back(person("w1", "middle", 0, 1, true));
    for (const char* id : {"p1", "p2", "p3"}) agents.push_back(person(id, "poor", 0, 0, true));

    Agent store;
    store.id = std::string(kReservoirId);
    store.holdings = bag(Goods, {{"food", 6}});
    s.population.reservoir = std::move(store);

    PartyMatcher buyers;
    buyers.attributes["wealth"] = {"rich", "middle"};
    s.population.rules = {trade("market_food", buyers, reservoir_party(), {Money, "cash", 1}, {Goods, "food", 1})};
    if (coupons) {
        EntitlementRule gift;
        gift.id = "food_coupons";
        gift.type = EntitlementType::Gift;
        gift.counterparty = reservoir_party();
        gift.receive = ItemSpec{Goods, "food", 1};
        s.population.rules.push_back(std::move(gift));
    }
    s.sim.ticks = 1;
    return s;
}

} // namespace

const std::vector<FixtureInfo>& fixture_catalog() {
    static const std::vector<FixtureInfo> catalog = {
        {"richard_iii", {}, "kingdom-for-horse trade between a king and a horseman"},
        {"protestant", {"system-abundance", "system-scarcity"}, "investment of a silk surplus for a promise"},
        {"famine", {"baseline", "food-coupons"}, "ten agents, sixteen rations, wealth-gated market"},
    };
    return catalog;
}

ScenarioFile make_fixture(std::string_view name, std::string_view variant) {
    const auto& catalog = fixture_catalog();
    auto it = std::find_if(catalog.begin(), catalog.end(), [&](const FixtureInfo& f) { return f.name == name; });
    if (it == catalog.end()) throw Error(ErrorCode::UnknownFixture, "unknown fixture '" + std::string(name) + "'");
    if (!variant.empty() && std::find(it->variants.begin(), it->variants.end(), variant) == it->variants.end())
        throw Error(ErrorCode::UnknownFixture,
                    "fixture '" + std::string(name) + "' has no variant '" + std::string(variant) + "'");
    const auto v = variant.empty() && !it->variants.empty() ? std::string_view(it->variants.front()) : variant;
    ScenarioFile s = name == "richard_iii" ? richard_iii() : name == "protestant" ? protestant(v) : famine(v);
    s.population.validate();
    return s;
}

} // namespace sas
