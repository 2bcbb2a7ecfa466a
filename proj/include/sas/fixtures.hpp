#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sas/scenario.hpp"

namespace sas {

struct FixtureInfo {
    std::string name;
    std::vector<std::string> variants;  // first one is the default
    std::string description;
};

const std::vector<FixtureInfo>& fixture_catalog();

// Empty variant selects the default. Throws UnknownFixture.
ScenarioFile make_fixture(std::string_view name, std::string_view variant = {});

} // namespace sas
