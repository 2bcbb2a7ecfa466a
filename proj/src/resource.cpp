#include "sas/resource.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace sas {

ClassCoordinates coordinates(ResourceClass cls) {
    switch (cls) {
    case ResourceClass::Love: return {3, 1};
    case ResourceClass::Status: return {2, 0};
    case ResourceClass::Information: return {1, 0};
    case ResourceClass::Money: return {0, 1};
    case ResourceClass::Goods: return {1, 2};
    case ResourceClass::Service: return {2, 2};
    }
    return {0, 0};
}

std::string_view to_string(ResourceClass cls) {
    switch (cls) {
    case ResourceClass::Love: return "love";
    case ResourceClass::Status: return "status";
    case ResourceClass::Information: return "information";
    case ResourceClass::Money: return "money";
    case ResourceClass::Goods: return "goods";
    case ResourceClass::Service: return "service";
    }
    return "?";
}

std::optional<ResourceClass> parse_resource_class(std::string_view name) {
    for (auto cls : kAllClasses)
        if (to_string(cls) == name) return cls;
    return std::nullopt;
}

ResourceItem::ResourceItem(ResourceClass c, std::string k, std::set<std::string> tags)
    : cls(c), kind(std::move(k)), quality_tags(std::move(tags)) {
    if (kind.empty()) throw Error(ErrorCode::InvalidItem, "resource item kind must be non-empty");
}

std::string describe(const ResourceItem& item) {
    std::string out(to_string(item.cls));
    out += ':';
    out += item.kind;
    for (const auto& tag : item.quality_tags) {
        out += '+';
        out += tag;
    }
    return out;
}

ItemBag in_class(const ItemBag& bag, ResourceClass cls) {
    return filter(bag, [cls](const ResourceItem& item) { return item.cls == cls; });
}

bool SubstitutionPolicy::declares(ResourceClass cls, std::string_view from_kind, std::string_view to_kind,
                                  std::string_view context) const {
    return std::any_of(rules.begin(), rules.end(), [&](const SubstitutionRule& r) {
        return r.cls == cls && r.from_kind == from_kind && r.to_kind == to_kind && r.context == context;
    });
}

bool satisfies(const ResourceItem& item, const ResourceItem& required, const SubstitutionPolicy& policy,
               std::string_view context) {
    if (item.cls != required.cls) return false;
    if (item.kind == required.kind) return true;
    return policy.declares(item.cls, required.kind, item.kind, context);
}

namespace {

// Capacitated bipartite flow over distinct items; multiplicities become
// source/sink capacities so large counts never expand into unit nodes.
class FlowNetwork {
public:
    explicit FlowNetwork(std::size_t nodes) : adjacency_(nodes) {}

    void add_edge(std::size_t from, std::size_t to, std::uint64_t capacity) {
        adjacency_[from].push_back(edges_.size());
        edges_.push_back({to, capacity});
        adjacency_[to].push_back(edges_.size());
        edges_.push_back({from, 0});
    }

    std::uint64_t max_flow(std::size_t source, std::size_t sink) {
        std::uint64_t total = 0;
        for (;;) {
            std::vector<std::size_t> via(adjacency_.size(), kNone);
            std::queue<std::size_t> frontier;
            frontier.push(source);
            std::vector<bool> seen(adjacency_.size(), false);
            seen[source] = true;
            while (!frontier.empty() && !seen[sink]) {
                const auto node = frontier.front();
                frontier.pop();
                for (auto e : adjacency_[node]) {
                    const auto& edge = edges_[e];
                    if (edge.residual == 0 || seen[edge.to]) continue;
                    seen[edge.to] = true;
                    via[edge.to] = e;
                    frontier.push(edge.to);
                }
            }
            if (!seen[sink]) return total;

            std::uint64_t bottleneck = std::numeric_limits<std::uint64_t>::max();
            for (auto node = sink; node != source; node = edges_[via[node] ^ 1].to)
                bottleneck = std::min(bottleneck, edges_[via[node]].residual);
            for (auto node = sink; node != source; node = edges_[via[node] ^ 1].to) {
                edges_[via[node]].residual -= bottleneck;
                edges_[via[node] ^ 1].residual += bottleneck;
            }
            total += bottleneck;
        }
    }

private:
    static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    struct Edge {
        std::size_t to;
        std::uint64_t residual;
    };

    std::vector<std::vector<std::size_t>> adjacency_;
    std::vector<Edge> edges_;
};

} // namespace

Coverage coverage_count(const ItemBag& available, const ItemBag& required, const SubstitutionPolicy& policy,
                        std::string_view context) {
    std::optional<ResourceClass> cls;
    auto check_class = [&cls](const ItemBag& bag) {
        for (const auto& [item, n] : bag) {
            if (cls && *cls != item.cls)
                throw Error(ErrorCode::MixedClasses, "coverage_count inputs span " + std::string(to_string(*cls)) +
                                                         " and " + std::string(to_string(item.cls)));
            cls = item.cls;
        }
    };
    check_class(available);
    check_class(required);

    std::vector<std::pair<const ResourceItem*, std::uint64_t>> need;
    std::vector<std::pair<const ResourceItem*, std::uint64_t>> have;
    for (const auto& [item, n] : required) need.emplace_back(&item, n);
    for (const auto& [item, n] : available) have.emplace_back(&item, n);

    const std::size_t source = 0;
    const std::size_t sink = 1;
    const std::size_t need_base = 2;
    const std::size_t have_base = need_base + need.size();
    FlowNetwork network(have_base + have.size());
    constexpr auto kUnbounded = std::numeric_limits<std::uint64_t>::max();

    for (std::size_t i = 0; i < need.size(); ++i) network.add_edge(source, need_base + i, need[i].second);
    for (std::size_t j = 0; j < have.size(); ++j) network.add_edge(have_base + j, sink, have[j].second);
    for (std::size_t i = 0; i < need.size(); ++i)
        for (std::size_t j = 0; j < have.size(); ++j)
            if (satisfies(*have[j].first, *need[i].first, policy, context))
                network.add_edge(need_base + i, have_base + j, kUnbounded);

    Coverage result;
    result.covered = network.max_flow(source, sink);
    result.surplus = available.cardinality() - result.covered;
    return result;
}

} // namespace sas
