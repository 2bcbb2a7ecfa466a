#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sas/resource.hpp"

namespace sas {

struct Agent;

// The four entitlement relations: what a person owns, what they can trade
// for, what they are given free, and what is taken from them.
enum class EntitlementType : std::uint8_t { Ownership, Trade, Gift, Extraction };

std::string_view to_string(EntitlementType type);
std::optional<EntitlementType> parse_entitlement_type(std::string_view name);

struct ItemSpec {
    ResourceClass cls = ResourceClass::Goods;
    std::string kind;
    std::uint64_t count = 1;

    friend bool operator==(const ItemSpec&, const ItemSpec&) = default;
};

std::string describe(const ItemSpec& spec);

// Predicate over a party. Empty matches every holder, the reservoir included.
struct PartyMatcher {
    std::optional<std::string> id;
    bool reservoir = false;
    // attribute -> accepted values; every listed attribute must be present.
    std::map<std::string, std::vector<std::string>> attributes;

    bool matches(const Agent& party) const;

    friend bool operator==(const PartyMatcher&, const PartyMatcher&) = default;
};

// A rule is always read from the subject's side (the party i of E_ij):
//   Trade      subject hands `give` to the counterparty and obtains `receive`
//   Gift       subject obtains `receive`, gives nothing
//   Extraction subject loses `give`, obtains nothing
//   Ownership  no transfer; asserts that the subject legitimately holds `give`
struct EntitlementRule {
    std::string id;
    EntitlementType type = EntitlementType::Trade;
    PartyMatcher subject;
    PartyMatcher counterparty;
    std::optional<ItemSpec> give;
    std::optional<ItemSpec> receive;
    bool legitimate = true;
    std::optional<std::uint64_t> capacity;  // max uses per tick

    // Throws SchemaError when the legs do not fit the type.
    void validate() const;

    friend bool operator==(const EntitlementRule&, const EntitlementRule&) = default;
};

} // namespace sas
