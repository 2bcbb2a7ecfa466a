#include <doctest.h>

#include "oracles.hpp"
#include "sas/classifier.hpp"
#include "sas/fixtures.hpp"
#include "sas/population.hpp"

using namespace sas;

TEST_CASE("classify on plain cardinalities") {
    CHECK(classify(1, 0) == SasState::Scarcity);
    CHECK(classify(0, 1) == SasState::Abundance);
    CHECK(classify(0, 0) == SasState::Sufficiency);
    CHECK(classify(2, 3) == SasState::Abundance);
}

TEST_CASE("classify with a band ignores the required count") {
    const SufficiencyBand band{2, 4};
    CHECK(classify(9, 1, band) == SasState::Scarcity);
    CHECK(classify(9, 2, band) == SasState::Sufficiency);
    CHECK(classify(9, 4, band) == SasState::Sufficiency);
    CHECK(classify(9, 5, band) == SasState::Abundance);
    CHECK(classify(0, 1000, SufficiencyBand::at_least(3)) == SasState::Sufficiency);
    try {
        classify(0, 0, SufficiencyBand{3, 2});
        FAIL("expected InvalidBand");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidBand);
    }
}

TEST_CASE("exact band equals the plain relation") {
    for (std::uint64_t n = 0; n <= 20; ++n)
        for (std::uint64_t a = 0; a <= 20; ++a) REQUIRE(classify(n, a, SufficiencyBand::exact(n)) == classify(n, a));
}

TEST_CASE("more holdings never move the state toward scarcity") {
    for (std::uint64_t r = 0; r <= 20; ++r)
        for (std::uint64_t a = 0; a < 20; ++a) {
            REQUIRE(rank(classify(r, a + 1)) >= rank(classify(r, a)));
            REQUIRE(rank(classify(r, a + 1, SufficiencyBand{r / 2, r})) >= rank(classify(r, a, SufficiencyBand{r / 2, r})));
        }
}

TEST_CASE("cross_classify examples and propagation") {
    CHECK(cross_classify(SasState::Scarcity, SasState::Abundance) == CrossState::QuasiScarcity);
    CHECK(cross_classify(SasState::Scarcity, SasState::Scarcity) == CrossState::AbsoluteScarcity);
    CHECK(cross_classify(SasState::Abundance, SasState::Scarcity) == CrossState::QuasiAbundance);
    CHECK(cross_classify(SasState::Sufficiency, SasState::Sufficiency) == CrossState::AbsoluteSufficiency);
    CHECK(cross_classify(SasState::Undefined, SasState::Scarcity) == CrossState::Undefined);
    CHECK(cross_classify(SasState::Scarcity, SasState::Undefined) == CrossState::Undefined);
    CHECK(is_extrapolated(CrossState::QuasiSufficiency));
    CHECK_FALSE(is_extrapolated(CrossState::QuasiScarcity));
}

TEST_CASE("cross_classify matches the definition tables") {
    for (std::uint64_t ri = 0; ri <= 4; ++ri)
        for (std::uint64_t ai = 0; ai <= 4; ++ai)
            for (std::uint64_t rs = 0; rs <= 4; ++rs)
                for (std::uint64_t as = 0; as <= 4; ++as)
                    REQUIRE(to_string(cross_classify(classify(ri, ai), classify(rs, as))) ==
                            oracle::cross_from_tables(ri, ai, rs, as));
}

TEST_CASE("classify_agent on the fixtures") {
    const auto richard = make_fixture("richard_iii").population;
    const auto states = classify_agent(*richard.find("richard"), richard.policy, Mode::Raw);
    CHECK(states.at(ResourceClass::Goods) == SasState::Scarcity);
    CHECK(states.at(ResourceClass::Status) == SasState::Abundance);
    for (auto cls : {ResourceClass::Love, ResourceClass::Information, ResourceClass::Money, ResourceClass::Service})
        CHECK(states.at(cls) == SasState::Undefined);

    const auto protestant = make_fixture("protestant").population;
    const auto p = classify_agent(*protestant.find("protestant"), protestant.policy, Mode::Raw);
    CHECK(p.at(ResourceClass::Goods) == SasState::Abundance);
    for (auto cls : kAllClasses)
        if (cls != ResourceClass::Goods) CHECK(p.at(cls) == SasState::Undefined);

    Agent nobody;
    nobody.id = "nobody";
    nobody.holdings.add(ResourceItem(ResourceClass::Money, "cash"), 5);
    for (const auto& [cls, st] : classify_agent(nobody, {}, Mode::Raw)) CHECK(st == SasState::Undefined);
}

TEST_CASE("coverage mode counts only usable holdings") {
    Agent rider;
    rider.id = "rider";
    rider.requirements[ResourceClass::Goods].items.add(ResourceItem(ResourceClass::Goods, "horse"));
    rider.holdings.add(ResourceItem(ResourceClass::Goods, "donkey"));
    rider.holdings.add(ResourceItem(ResourceClass::Goods, "camel"));
    SubstitutionPolicy policy;
    policy.rules = {{ResourceClass::Goods, "horse", "donkey", "transport"}};
    // Raw mode compares 1 with 2.
    CHECK(classify_agent(rider, policy, Mode::Raw).at(ResourceClass::Goods) == SasState::Abundance);
    // Coverage: the donkey covers the horse, the camel is surplus.
    CHECK(classify_agent(rider, policy, Mode::Coverage, "transport").at(ResourceClass::Goods) == SasState::Abundance);
    // Nothing usable outside the transport context.
    CHECK(classify_agent(rider, policy, Mode::Coverage, "wedding").at(ResourceClass::Goods) == SasState::Scarcity);
}

TEST_CASE("state names round-trip") {
    for (auto s : {SasState::Scarcity, SasState::Abundance, SasState::Sufficiency, SasState::Undefined})
        CHECK(parse_sas_state(to_string(s)) == s);
    CHECK(parse_mode("coverage") == Mode::Coverage);
    CHECK_FALSE(parse_mode("fuzzy").has_value());
}
