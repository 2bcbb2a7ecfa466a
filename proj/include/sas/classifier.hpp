#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>

#include "sas/resource.hpp"

namespace sas {

struct Agent;

// Sufficiency range for one class. An absent upper bound means unbounded.
struct SufficiencyBand {
    std::uint64_t lower = 0;
    std::optional<std::uint64_t> upper;

    static SufficiencyBand exact(std::uint64_t n) { return {n, n}; }
    static SufficiencyBand at_least(std::uint64_t n) { return {n, std::nullopt}; }

    bool valid() const { return !upper || lower <= *upper; }

    friend bool operator==(const SufficiencyBand&, const SufficiencyBand&) = default;
};

enum class SasState : std::uint8_t { Scarcity, Abundance, Sufficiency, Undefined };

enum class CrossState : std::uint8_t {
    AbsoluteScarcity,
    QuasiScarcity,
    AbsoluteAbundance,
    QuasiAbundance,
    AbsoluteSufficiency,
    QuasiSufficiency,
    Undefined,
};

// Comparison mode: the literal |R| vs |A| or substitution-aware coverage.
enum class Mode : std::uint8_t { Raw, Coverage };

std::string_view to_string(SasState state);
std::string_view to_string(CrossState state);
std::string_view to_string(Mode mode);
std::optional<SasState> parse_sas_state(std::string_view name);
std::optional<Mode> parse_mode(std::string_view name);

// Scarcity < Sufficiency < Abundance; Undefined has no rank.
int rank(SasState state);

// QuasiSufficiency is defined by analogy with the scarcity/abundance cases.
inline bool is_extrapolated(CrossState state) { return state == CrossState::QuasiSufficiency; }

// Without a band: trichotomy on required vs available. With a band, the
// required count is ignored and available is placed against [lower, upper].
// Throws InvalidBand when lower > upper.
SasState classify(std::uint64_t required, std::uint64_t available,
                  const std::optional<SufficiencyBand>& band = std::nullopt);

CrossState cross_classify(SasState individual, SasState system);

// Cardinalities used for one (requirement, holdings) pair in a given mode.
// In coverage mode, unmatched available items count only once every
// requirement is covered.
struct ClassMeasure {
    std::uint64_t required = 0;
    std::uint64_t available = 0;
};

ClassMeasure measure(const ItemBag& required, const ItemBag& available, Mode mode,
                     const SubstitutionPolicy& policy, std::string_view context);

// One state per class; Undefined where the agent declares no requirement.
std::map<ResourceClass, SasState> classify_agent(const Agent& agent, const SubstitutionPolicy& policy, Mode mode,
                                                 std::string_view context = kDefaultContext);

} // namespace sas
