#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sas/multiset.hpp"

namespace sas {

// The six exchange resource classes, in their circular order
// (love, status, information, money, goods, service).
enum class ResourceClass : std::uint8_t { Love, Status, Information, Money, Goods, Service };

inline constexpr std::array<ResourceClass, 6> kAllClasses = {
    ResourceClass::Love,  ResourceClass::Status, ResourceClass::Information,
    ResourceClass::Money, ResourceClass::Goods,  ResourceClass::Service,
};

// Ordinal position on the two axes of the class circle. Higher means more
// particular (tied to who gives it) or more concrete (tangible).
struct ClassCoordinates {
    int particularity;
    int concreteness;
};

ClassCoordinates coordinates(ResourceClass cls);

std::string_view to_string(ResourceClass cls);
std::optional<ResourceClass> parse_resource_class(std::string_view name);

struct ResourceItem {
    ResourceClass cls = ResourceClass::Goods;
    std::string kind;
    std::set<std::string> quality_tags;

    ResourceItem() = default;
    // Throws InvalidItem when kind is empty.
    ResourceItem(ResourceClass c, std::string k, std::set<std::string> tags = {});

    friend auto operator<=>(const ResourceItem&, const ResourceItem&) = default;
    friend bool operator==(const ResourceItem&, const ResourceItem&) = default;
};

std::string describe(const ResourceItem& item);

using ItemBag = Multiset<ResourceItem>;

// Items of one class only.
ItemBag in_class(const ItemBag& bag, ResourceClass cls);

inline constexpr std::string_view kDefaultContext = "default";

struct SubstitutionRule {
    ResourceClass cls = ResourceClass::Goods;
    std::string from_kind;  // the kind being required
    std::string to_kind;    // the kind that may stand in for it
    std::string context{kDefaultContext};

    friend bool operator==(const SubstitutionRule&, const SubstitutionRule&) = default;
};

// Scenario-supplied exchangeability within a class. Directional and
// context-tagged; every kind implicitly substitutes for itself.
struct SubstitutionPolicy {
    std::vector<SubstitutionRule> rules;

    bool declares(ResourceClass cls, std::string_view from_kind, std::string_view to_kind,
                  std::string_view context) const;

    friend bool operator==(const SubstitutionPolicy&, const SubstitutionPolicy&) = default;
};

bool satisfies(const ResourceItem& item, const ResourceItem& required, const SubstitutionPolicy& policy,
               std::string_view context);

struct Coverage {
    std::uint64_t covered = 0;  // required items matched to an available item
    std::uint64_t surplus = 0;  // available items left unmatched

    friend bool operator==(const Coverage&, const Coverage&) = default;
};

// Maximum matching between required and available units under satisfies().
// Throws MixedClasses when the two bags together span more than one class.
Coverage coverage_count(const ItemBag& available, const ItemBag& required, const SubstitutionPolicy& policy,
                        std::string_view context);

} // namespace sas
