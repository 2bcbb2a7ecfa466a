#include "sas/classifier.hpp"

#include "sas/population.hpp"

namespace sas {

std::string_view to_string(SasState state) {
    switch (state) {
    case SasState::Scarcity: return "scarcity";
    case SasState::Abundance: return "abundance";
    case SasState::Sufficiency: return "sufficiency";
    case SasState::Undefined: return "undefined";
    }
    return "?";
}

std::string_view to_string(CrossState state) {
    switch (state) {
    case CrossState::AbsoluteScarcity: return "absolute-scarcity";
    case CrossState::QuasiScarcity: return "quasi-scarcity";
    case CrossState::AbsoluteAbundance: return "absolute-abundance";
    case CrossState::QuasiAbundance: return "quasi-abundance";
    case CrossState::AbsoluteSufficiency: return "absolute-sufficiency";
    case CrossState::QuasiSufficiency: return "quasi-sufficiency";
    case CrossState::Undefined: return "undefined";
    }
    return "?";
}

std::string_view to_string(Mode mode) { return mode == Mode::Raw ? "raw" : "coverage"; }

std::optional<SasState> parse_sas_state(std::string_view name) {
    for (auto s : {SasState::Scarcity, SasState::Abundance, SasState::Sufficiency, SasState::Undefined})
        if (to_string(s) == name) return s;
    return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view name) {
    if (name == "raw") return Mode::Raw;
    if (name == "coverage") return Mode::Coverage;
    return std::nullopt;
}

int rank(SasState state) {
    switch (state) {
    case SasState::Scarcity: return 0;
    case SasState::Sufficiency: return 1;
    case SasState::Abundance: return 2;
    case SasState::Undefined: break;
    }
    return -1;
}

SasState classify(std::uint64_t required, std::uint64_t available, const std::optional<SufficiencyBand>& band) {
    if (!band) {
        if (required > available) return SasState::Scarcity;
        if (required < available) return SasState::Abundance;
        return SasState::Sufficiency;
    }
    if (!band->valid())
        throw Error(ErrorCode::InvalidBand, "band lower " + std::to_string(band->lower) + " exceeds upper " +
                                                std::to_string(*band->upper));
    if (available < band->lower) return SasState::Scarcity;
    if (band->upper && available > *band->upper) return SasState::Abundance;
    return SasState::Sufficiency;
}

CrossState cross_classify(SasState individual, SasState system) {
    if (individual == SasState::Undefined || system == SasState::Undefined) return CrossState::Undefined;
    switch (individual) {
    case SasState::Scarcity:
        return system == SasState::Scarcity ? CrossState::AbsoluteScarcity : CrossState::QuasiScarcity;
    case SasState::Abundance:
        return system == SasState::Abundance ? CrossState::AbsoluteAbundance : CrossState::QuasiAbundance;
    case SasState::Sufficiency:
        return system == SasState::Sufficiency ? CrossState::AbsoluteSufficiency : CrossState::QuasiSufficiency;
    case SasState::Undefined: break;
    }
    return CrossState::Undefined;
}

ClassMeasure measure(const ItemBag& required, const ItemBag& available, Mode mode,
                     const SubstitutionPolicy& policy, std::string_view context) {
    ClassMeasure m;
    m.required = required.cardinality();
    if (mode == Mode::Raw) {
        m.available = available.cardinality();
        return m;
    }
    const auto cover = coverage_count(available, required, policy, context);
    m.available = cover.covered == m.required ? cover.covered + cover.surplus : cover.covered;
    return m;
}

std::map<ResourceClass, SasState> classify_agent(const Agent& agent, const SubstitutionPolicy& policy, Mode mode,
                                                 std::string_view context) {
    std::map<ResourceClass, SasState> states;
    for (auto cls : kAllClasses) {
        auto it = agent.requirements.find(cls);
        if (it == agent.requirements.end()) {
            states[cls] = SasState::Undefined;
            continue;
        }
        const auto m = measure(it->second.items, in_class(agent.holdings, cls), mode, policy, context);
        states[cls] = classify(m.required, m.available, it->second.band);
    }
    return states;
}

} // namespace sas
