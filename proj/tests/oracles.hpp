#pragma once

// Independent reference implementations used by the tests. None of these
// call into the library's algorithms; they recompute from first principles.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sas/population.hpp"

namespace oracle {

using Counts = std::map<std::string, std::uint64_t>;

inline Counts elementwise_sum(const Counts& a, const Counts& b) {
    Counts out = a;
    for (const auto& [k, n] : b) out[k] += n;
    return out;
}

inline std::uint64_t total(const Counts& c) {
    std::uint64_t n = 0;
    for (const auto& [k, v] : c) n += v;
    return n;
}

// Maximum matching by exhaustive search: each required unit either stays
// unmatched or takes any still-free available unit it accepts.
inline std::uint64_t brute_force_matching(const std::vector<std::string>& available,
                                          const std::vector<std::string>& required,
                                          const std::function<bool(const std::string& have, const std::string& need)>& ok) {
    std::vector<bool> used(available.size(), false);
    std::function<std::uint64_t(std::size_t)> go = [&](std::size_t i) -> std::uint64_t {
        if (i == required.size()) return 0;
        std::uint64_t best = go(i + 1);
        for (std::size_t j = 0; j < available.size(); ++j) {
            if (used[j] || !ok(available[j], required[i])) continue;
            used[j] = true;
            best = std::max(best, 1 + go(i + 1));
            used[j] = false;
        }
        return best;
    };
    return go(0);
}

// The relation table read literally: "scarcity", "abundance", "sufficiency".
inline std::string relation(std::uint64_t required, std::uint64_t available) {
    if (required > available) return "scarcity";
    if (required < available) return "abundance";
    return "sufficiency";
}

// The absolute/quasi tables over cardinalities, with the sufficiency
// analogy (absolute iff the system is exactly sufficient too).
inline std::string cross_from_tables(std::uint64_t ri, std::uint64_t ai, std::uint64_t rs, std::uint64_t as) {
    if (ri > ai) return rs > as ? "absolute-scarcity" : "quasi-scarcity";      // R_s <= A_s otherwise
    if (ri < ai) return rs < as ? "absolute-abundance" : "quasi-abundance";    // R_s >= A_s otherwise
    return rs == as ? "absolute-sufficiency" : "quasi-sufficiency";
}

// Sum over every holder, keyed "class:kind".
inline Counts system_counts(const sas::Population& pop) {
    Counts out;
    auto add = [&out](const sas::Agent& a) {
        for (const auto& [item, n] : a.holdings) out[std::string(sas::to_string(item.cls)) + ":" + item.kind] += n;
    };
    for (const auto& a : pop.agents) add(a);
    if (pop.reservoir) add(*pop.reservoir);
    return out;
}

// ---- generators ----

inline const std::vector<std::string>& kinds() {
    static const std::vector<std::string> k{"a", "b", "c"};
    return k;
}

inline sas::ResourceClass random_class(std::mt19937_64& rng, int classes = 6) {
    return sas::kAllClasses[rng() % static_cast<std::uint64_t>(classes)];
}

inline sas::ItemBag random_bag(std::mt19937_64& rng, int max_entries, std::uint64_t max_count, int classes = 6) {
    sas::ItemBag bag;
    const auto entries = rng() % static_cast<std::uint64_t>(max_entries + 1);
    for (std::uint64_t i = 0; i < entries; ++i)
        bag.add(sas::ResourceItem(random_class(rng, classes), kinds()[rng() % kinds().size()]), rng() % (max_count + 1));
    return bag;
}

// Agents with random holdings and requirements; optional reservoir.
inline sas::Population random_population(std::mt19937_64& rng, int max_agents, int classes = 3) {
    sas::Population pop;
    const auto n = 1 + rng() % static_cast<std::uint64_t>(max_agents);
    for (std::uint64_t i = 0; i < n; ++i) {
        sas::Agent a;
        a.id = "a" + std::to_string(i);
        a.holdings = random_bag(rng, 4, 3, classes);
        for (int c = 0; c < classes; ++c) {
            if (rng() % 2) continue;
            const auto cls = sas::kAllClasses[static_cast<std::size_t>(c)];
            sas::Requirement r;
            r.items = random_bag(rng, 2, 2, 1);
            sas::ItemBag moved;
            for (const auto& [item, k] : r.items) moved.add(sas::ResourceItem(cls, item.kind), k);
            r.items = moved;
            a.requirements[cls] = r;
        }
        pop.agents.push_back(std::move(a));
    }
    if (rng() % 2) {
        sas::Agent res;
        res.id = std::string(sas::kReservoirId);
        res.holdings = random_bag(rng, 4, 5, classes);
        pop.reservoir = std::move(res);
    }
    return pop;
}

} // namespace oracle
