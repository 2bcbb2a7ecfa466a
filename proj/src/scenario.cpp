#include "sas/scenario.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "sas/error.hpp"

namespace sas {

using nlohmann::json;

namespace {

// A JSON node plus the pointer it was reached by, for error messages.
class Node {
public:
    Node(const json& value, std::string path) : v_(value), path_(std::move(path)) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw Error(ErrorCode::SchemaError, "at " + (path_.empty() ? std::string("/") : path_) + ": " + what);
    }

    const json& value() const { return v_; }
    const std::string& path() const { return path_; }

    bool has(const char* key) const { return v_.contains(key) && !v_.at(key).is_null(); }

    Node at(const char* key) const {
        if (!v_.contains(key)) fail(std::string("missing field '") + key + "'");
        return {v_.at(key), path_ + "/" + key};
    }

    Node at(std::size_t i) const { return {v_.at(i), path_ + "/" + std::to_string(i)}; }

    const Node& object(std::initializer_list<const char*> allowed) const {
        if (!v_.is_object()) fail("expected an object");
        for (const auto& [key, unused] : v_.items()) {
            (void)unused;
            bool known = false;
            for (const char* a : allowed) known = known || key == a;
            if (!known) fail("unknown field '" + key + "'");
        }
        return *this;
    }

    const Node& array() const {
        if (!v_.is_array()) fail("expected an array");
        return *this;
    }

    std::size_t size() const { return v_.size(); }

    std::string str() const {
        if (!v_.is_string()) fail("expected a string");
        return v_.get<std::string>();
    }

    std::uint64_t u64() const {
        if (!v_.is_number_unsigned() && !(v_.is_number_integer() && v_.get<std::int64_t>() >= 0))
            fail("expected a non-negative integer");
        return v_.get<std::uint64_t>();
    }

    std::int64_t i64() const {
        if (!v_.is_number_integer()) fail("expected an integer");
        if (v_.is_number_unsigned() && v_.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
            fail("integer out of range");
        return v_.get<std::int64_t>();
    }

    bool boolean() const {
        if (!v_.is_boolean()) fail("expected true or false");
        return v_.get<bool>();
    }

    template <class Parse>
    auto parsed(Parse parse, const char* what) const {
        const auto text = str();
        auto r = parse(text);
        if (!r) fail("unknown " + std::string(what) + " '" + text + "'");
        return *r;
    }

    std::string str_or(const char* key, std::string fallback) const { return has(key) ? at(key).str() : fallback; }
    std::uint64_t u64_or(const char* key, std::uint64_t fallback) const { return has(key) ? at(key).u64() : fallback; }
    bool bool_or(const char* key, bool fallback) const { return has(key) ? at(key).boolean() : fallback; }

private:
    const json& v_;
    std::string path_;
};

// For maps whose keys are data rather than field names.
const Node& free_object(const Node& n) {
    if (!n.value().is_object()) n.fail("expected an object");
    return n;
}

ResourceClass read_class(const Node& n) { return n.parsed(parse_resource_class, "resource class"); }

std::optional<ResourceClass> read_class_opt(const Node& n, const char* key) {
    if (!n.has(key)) return std::nullopt;
    return read_class(n.at(key));
}

std::set<std::string> read_tags(const Node& n) {
    std::set<std::string> tags;
    if (!n.has("tags")) return tags;
    const auto arr = n.at("tags");
    arr.array();
    for (std::size_t i = 0; i < arr.size(); ++i) tags.insert(arr.at(i).str());
    return tags;
}

ResourceItem make_item(const Node& n, ResourceClass cls, const std::string& kind, std::set<std::string> tags) {
    try {
        return ResourceItem(cls, kind, std::move(tags));
    } catch (const Error& e) {
        n.fail(e.what());
    }
}

// [{class?, kind, count, tags}] -> bag; `fixed` supplies the class when it is implied.
ItemBag read_bag(const Node& arr, std::optional<ResourceClass> fixed) {
    arr.array();
    ItemBag bag;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const auto e = arr.at(i);
        if (fixed) e.object({"kind", "count", "tags"});
        else e.object({"class", "kind", "count", "tags"});
        const auto cls = fixed ? *fixed : read_class(e.at("class"));
        bag.add(make_item(e, cls, e.at("kind").str(), read_tags(e)), e.u64_or("count", 1));
    }
    return bag;
}

SufficiencyBand read_band(const Node& n) {
    n.object({"lower", "upper"});
    SufficiencyBand b;
    b.lower = n.u64_or("lower", 0);
    if (n.has("upper")) b.upper = n.at("upper").u64();
    return b;
}

ItemSpec read_spec(const Node& n) {
    n.object({"class", "kind", "count"});
    ItemSpec s;
    s.cls = read_class(n.at("class"));
    s.kind = n.at("kind").str();
    s.count = n.u64_or("count", 1);
    return s;
}

PartyMatcher read_matcher(const Node& n) {
    n.object({"id", "reservoir", "attributes"});
    PartyMatcher m;
    if (n.has("id")) m.id = n.at("id").str();
    m.reservoir = n.bool_or("reservoir", false);
    if (n.has("attributes")) {
        const auto attrs = n.at("attributes");
        free_object(attrs);
        for (const auto& [key, value] : attrs.value().items()) {
            const Node values(value, attrs.path() + "/" + key);
            values.array();
            auto& accepted = m.attributes[key];
            for (std::size_t i = 0; i < values.size(); ++i) accepted.push_back(values.at(i).str());
        }
    }
    return m;
}

EntitlementRule read_rule(const Node& n) {
    n.object({"id", "type", "subject", "counterparty", "give", "receive", "legitimate", "capacity"});
    EntitlementRule r;
    r.id = n.at("id").str();
    r.type = n.at("type").parsed(parse_entitlement_type, "entitlement type");
    if (n.has("subject")) r.subject = read_matcher(n.at("subject"));
    if (n.has("counterparty")) r.counterparty = read_matcher(n.at("counterparty"));
    if (n.has("give")) r.give = read_spec(n.at("give"));
    if (n.has("receive")) r.receive = read_spec(n.at("receive"));
    r.legitimate = n.bool_or("legitimate", true);
    if (n.has("capacity")) r.capacity = n.at("capacity").u64();
    try {
        r.validate();
    } catch (const Error& e) {
        n.fail(e.what());
    }
    return r;
}

Effect read_effect(const Node& n) {
    if (!n.value().is_object()) n.fail("expected an object");
    const auto type = n.at("type").str();
    if (type == "adjust_requirement") {
        n.object({"type", "class", "delta", "band"});
        AdjustRequirement e;
        e.cls = read_class_opt(n, "class");
        if (n.has("delta")) e.delta = n.at("delta").i64();
        if (n.has("band")) e.target = read_band(n.at("band"));
        return e;
    }
    if (type == "destroy") {
        n.object({"type", "class", "kind", "count"});
        DestroyResources e;
        e.cls = read_class_opt(n, "class");
        if (n.has("kind")) e.kind = n.at("kind").str();
        if (n.has("count")) e.count = n.at("count").u64();
        return e;
    }
    if (type == "hoard") {
        n.object({"type", "class"});
        return HoardResources{read_class_opt(n, "class")};
    }
    if (type == "propose_exchange") {
        n.object({"type", "class", "rule_types", "rule", "counterparty"});
        ProposeExchange e;
        e.cls = read_class_opt(n, "class");
        if (n.has("rule_types")) {
            const auto arr = n.at("rule_types");
            arr.array();
            for (std::size_t i = 0; i < arr.size(); ++i)
                e.rule_types.push_back(arr.at(i).parsed(parse_entitlement_type, "entitlement type"));
        }
        if (n.has("rule")) e.rule_id = n.at("rule").str();
        if (n.has("counterparty")) e.counterparty = n.at("counterparty").parsed(parse_counterparty_scope, "scope");
        return e;
    }
    if (type == "invest") {
        n.object({"type", "commit_rule", "delivery_rule", "maturity"});
        Invest e;
        e.commit_rule = n.at("commit_rule").str();
        e.delivery_rule = n.at("delivery_rule").str();
        e.maturity = n.u64_or("maturity", 1);
        if (e.maturity == 0) n.at("maturity").fail("maturity must be at least 1");
        return e;
    }
    if (type == "give_away") {
        n.object({"type", "class", "kind", "count", "recipient"});
        GiveAway e;
        e.cls = read_class_opt(n, "class");
        if (n.has("kind")) e.kind = n.at("kind").str();
        e.count = n.u64_or("count", 1);
        e.recipient = n.str_or("recipient", "scarcity");
        return e;
    }
    if (type == "annotate") {
        n.object({"type", "note"});
        return Annotate{n.at("note").str()};
    }
    n.at("type").fail("unknown effect type '" + type + "'");
}

std::vector<Effect> read_effects(const Node& arr) {
    arr.array();
    std::vector<Effect> out;
    for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(read_effect(arr.at(i)));
    return out;
}

StrategyProfile read_profile(const Node& n) {
    n.object({"stance", "stance_weights", "act_on_sufficiency", "state_salience", "class_salience", "overrides"});
    StrategyProfile p;
    if (n.has("stance")) p.stance = n.at("stance").parsed(parse_stance, "stance");
    if (n.has("stance_weights")) {
        const auto arr = n.at("stance_weights");
        arr.array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto w = arr.at(i);
            w.object({"stance", "weight"});
            const auto weight = w.u64_or("weight", 1);
            if (weight > UINT32_MAX) w.at("weight").fail("weight too large");
            p.stance_weights.push_back({w.at("stance").parsed(parse_stance, "stance"),
                                        static_cast<std::uint32_t>(weight)});
        }
    }
    p.act_on_sufficiency = n.bool_or("act_on_sufficiency", false);
    if (n.has("state_salience")) {
        const auto arr = n.at("state_salience");
        arr.array();
        p.state_salience.clear();
        for (std::size_t i = 0; i < arr.size(); ++i)
            p.state_salience.push_back(arr.at(i).parsed(parse_sas_state, "state"));
    }
    if (n.has("class_salience")) {
        const auto arr = n.at("class_salience");
        arr.array();
        p.class_salience.clear();
        for (std::size_t i = 0; i < arr.size(); ++i) p.class_salience.push_back(read_class(arr.at(i)));
    }
    if (n.has("overrides")) {
        const auto arr = n.at("overrides");
        arr.array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto o = arr.at(i);
            o.object({"stance", "state", "effects"});
            CellOverride c;
            c.stance = o.at("stance").parsed(parse_stance, "stance");
            c.state = o.at("state").parsed(parse_sas_state, "state");
            if (c.state == SasState::Undefined) o.at("state").fail("overrides need a defined state");
            c.effects = read_effects(o.at("effects"));
            p.overrides.push_back(std::move(c));
        }
    }
    return p;
}

std::map<std::string, std::string> read_attributes(const Node& n) {
    std::map<std::string, std::string> out;
    for (const auto& [key, value] : n.value().items()) out[key] = Node(value, n.path() + "/" + key).str();
    return out;
}

Agent read_agent(const Node& n) {
    n.object({"id", "requirements", "holdings", "attributes", "strategy"});
    Agent a;
    a.id = n.at("id").str();
    if (n.has("requirements")) {
        const auto reqs = free_object(n.at("requirements"));
        for (const auto& [key, value] : reqs.value().items()) {
            const Node r(value, reqs.path() + "/" + key);
            const auto cls = parse_resource_class(key);
            if (!cls) r.fail("unknown resource class '" + key + "'");
            r.object({"items", "band"});
            Requirement req;
            if (r.has("items")) req.items = read_bag(r.at("items"), *cls);
            if (r.has("band")) req.band = read_band(r.at("band"));
            a.requirements[*cls] = std::move(req);
        }
    }
    if (n.has("holdings")) a.holdings = read_bag(n.at("holdings"), std::nullopt);
    if (n.has("attributes")) a.attributes = read_attributes(free_object(n.at("attributes")));
    if (n.has("strategy")) a.strategy = read_profile(n.at("strategy"));
    return a;
}

SimConfig read_sim(const Node& n) {
    n.object({"ticks", "seed", "mode", "partial_commit", "context", "stop"});
    SimConfig c;
    c.ticks = n.u64_or("ticks", 1);
    if (c.ticks == 0) n.at("ticks").fail("ticks must be at least 1");
    c.seed = n.u64_or("seed", 0);
    if (n.has("mode")) c.mode = n.at("mode").parsed(parse_mode, "mode");
    c.partial_commit = n.bool_or("partial_commit", false);
    c.context = n.str_or("context", std::string(kDefaultContext));
    if (n.has("stop")) {
        const auto arr = n.at("stop");
        arr.array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto s = arr.at(i);
            s.object({"class", "states"});
            StopCondition cond;
            cond.cls = read_class(s.at("class"));
            const auto states = s.at("states");
            states.array();
            if (states.size() == 0) states.fail("expected at least one state");
            for (std::size_t j = 0; j < states.size(); ++j)
                cond.states.push_back(states.at(j).parsed(parse_sas_state, "state"));
            c.stop_conditions.push_back(std::move(cond));
        }
    }
    return c;
}

ScenarioFile read_scenario(const Node& root) {
    root.object({"schema_version", "metadata", "agents", "reservoir", "substitution", "rules", "system_bands", "sim",
                 "report"});
    ScenarioFile s;
    s.schema_version = root.at("schema_version").u64();
    if (s.schema_version != kSchemaVersion)
        root.at("schema_version").fail("unsupported schema version " + std::to_string(s.schema_version));
    if (root.has("metadata")) {
        const auto m = root.at("metadata");
        m.object({"name", "description"});
        s.metadata.name = m.str_or("name", "");
        s.metadata.description = m.str_or("description", "");
    }
    auto& pop = s.population;
    const auto agents = root.at("agents");
    agents.array();
    for (std::size_t i = 0; i < agents.size(); ++i) pop.agents.push_back(read_agent(agents.at(i)));
    if (root.has("reservoir")) {
        const auto r = root.at("reservoir");
        r.object({"holdings"});
        Agent reservoir;
        reservoir.id = std::string(kReservoirId);
        if (r.has("holdings")) reservoir.holdings = read_bag(r.at("holdings"), std::nullopt);
        pop.reservoir = std::move(reservoir);
    }
    if (root.has("substitution")) {
        const auto arr = root.at("substitution");
        arr.array();
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const auto e = arr.at(i);
            e.object({"class", "from", "to", "context"});
            pop.policy.rules.push_back({read_class(e.at("class")), e.at("from").str(), e.at("to").str(),
                                        e.str_or("context", std::string(kDefaultContext))});
        }
    }
    if (root.has("rules")) {
        const auto arr = root.at("rules");
        arr.array();
        for (std::size_t i = 0; i < arr.size(); ++i) pop.rules.push_back(read_rule(arr.at(i)));
    }
    if (root.has("system_bands")) {
        const auto bands = free_object(root.at("system_bands"));
        for (const auto& [key, value] : bands.value().items()) {
            const Node b(value, bands.path() + "/" + key);
            const auto cls = parse_resource_class(key);
            if (!cls) b.fail("unknown resource class '" + key + "'");
            pop.system_bands[*cls] = read_band(b);
        }
    }
    if (root.has("sim")) s.sim = read_sim(root.at("sim"));
    if (root.has("report")) {
        const auto r = root.at("report");
        r.object({"include_events"});
        s.report.include_events = r.bool_or("include_events", true);
    }
    return s;
}

// ---- emission ----

json write_band(const SufficiencyBand& b) {
    json j{{"lower", b.lower}};
    if (b.upper) j["upper"] = *b.upper;
    return j;
}

json write_bag(const ItemBag& bag, bool with_class) {
    json arr = json::array();
    for (const auto& [item, n] : bag) {
        json e{{"kind", item.kind}, {"count", n}};
        if (with_class) e["class"] = to_string(item.cls);
        if (!item.quality_tags.empty()) e["tags"] = item.quality_tags;
        arr.push_back(std::move(e));
    }
    return arr;
}

json write_spec(const ItemSpec& s) { return {{"class", to_string(s.cls)}, {"kind", s.kind}, {"count", s.count}}; }

json write_matcher(const PartyMatcher& m) {
    json j = json::object();
    if (m.id) j["id"] = *m.id;
    if (m.reservoir) j["reservoir"] = true;
    if (!m.attributes.empty()) j["attributes"] = m.attributes;
    return j;
}

json write_effect(const Effect& effect) {
    return std::visit(
        [](const auto& e) -> json {
            using E = std::decay_t<decltype(e)>;
            json j;
            auto put_class = [&j](const std::optional<ResourceClass>& cls) {
                if (cls) j["class"] = to_string(*cls);
            };
            if constexpr (std::is_same_v<E, AdjustRequirement>) {
                j["type"] = "adjust_requirement";
                put_class(e.cls);
                if (e.delta != 0) j["delta"] = e.delta;
                if (e.target) j["band"] = write_band(*e.target);
            } else if constexpr (std::is_same_v<E, DestroyResources>) {
                j["type"] = "destroy";
                put_class(e.cls);
                if (e.kind) j["kind"] = *e.kind;
                if (e.count) j["count"] = *e.count;
            } else if constexpr (std::is_same_v<E, HoardResources>) {
                j["type"] = "hoard";
                put_class(e.cls);
            } else if constexpr (std::is_same_v<E, ProposeExchange>) {
                j["type"] = "propose_exchange";
                put_class(e.cls);
                if (!e.rule_types.empty()) {
                    j["rule_types"] = json::array();
                    for (auto t : e.rule_types) j["rule_types"].push_back(to_string(t));
                }
                if (e.rule_id) j["rule"] = *e.rule_id;
                if (e.counterparty != CounterpartyScope::Any) j["counterparty"] = to_string(e.counterparty);
            } else if constexpr (std::is_same_v<E, Invest>) {
                j = {{"type", "invest"},
                     {"commit_rule", e.commit_rule},
                     {"delivery_rule", e.delivery_rule},
                     {"maturity", e.maturity}};
            } else if constexpr (std::is_same_v<E, GiveAway>) {
                j["type"] = "give_away";
                put_class(e.cls);
                if (e.kind) j["kind"] = *e.kind;
                j["count"] = e.count;
                j["recipient"] = e.recipient;
            } else {
                j = {{"type", "annotate"}, {"note", e.note}};
            }
            return j;
        },
        effect);
}

json write_profile(const StrategyProfile& p) {
    const StrategyProfile defaults;
    json j = json::object();
    if (p.stance) j["stance"] = to_string(*p.stance);
    for (const auto& w : p.stance_weights)
        j["stance_weights"].push_back({{"stance", to_string(w.stance)}, {"weight", w.weight}});
    if (p.act_on_sufficiency) j["act_on_sufficiency"] = true;
    if (p.state_salience != defaults.state_salience) {
        j["state_salience"] = json::array();
        for (auto s : p.state_salience) j["state_salience"].push_back(to_string(s));
    }
    if (p.class_salience != defaults.class_salience) {
        j["class_salience"] = json::array();
        for (auto c : p.class_salience) j["class_salience"].push_back(to_string(c));
    }
    for (const auto& o : p.overrides) {
        json effects = json::array();
        for (const auto& e : o.effects) effects.push_back(write_effect(e));
        j["overrides"].push_back(
            {{"stance", to_string(o.stance)}, {"state", to_string(o.state)}, {"effects", std::move(effects)}});
    }
    return j;
}

json write_agent(const Agent& a) {
    json j{{"id", a.id}};
    if (!a.requirements.empty()) {
        json reqs = json::object();
        for (const auto& [cls, r] : a.requirements) {
            json e{{"items", write_bag(r.items, false)}};
            if (r.band) e["band"] = write_band(*r.band);
            reqs[std::string(to_string(cls))] = std::move(e);
        }
        j["requirements"] = std::move(reqs);
    }
    if (!a.holdings.empty()) j["holdings"] = write_bag(a.holdings, true);
    if (!a.attributes.empty()) j["attributes"] = a.attributes;
    const auto profile = write_profile(a.strategy);
    if (!profile.empty()) j["strategy"] = profile;
    return j;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n') ++line;
    return line;
}

} // namespace

ScenarioFile parse_scenario(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SchemaError, "line " + std::to_string(line_of(text, e.byte == 0 ? 0 : e.byte - 1)) +
                                                ": malformed JSON (" + e.what() + ")");
    }
    auto scenario = read_scenario(Node(root, ""));
    scenario.population.validate();
    return scenario;
}

std::string emit_scenario(const ScenarioFile& s) {
    json j;
    j["schema_version"] = s.schema_version;
    j["metadata"] = {{"name", s.metadata.name}, {"description", s.metadata.description}};
    const auto& pop = s.population;
    j["agents"] = json::array();
    for (const auto& a : pop.agents) j["agents"].push_back(write_agent(a));
    if (pop.reservoir) j["reservoir"] = {{"holdings", write_bag(pop.reservoir->holdings, true)}};
    if (!pop.policy.rules.empty()) {
        j["substitution"] = json::array();
        for (const auto& r : pop.policy.rules)
            j["substitution"].push_back(
                {{"class", to_string(r.cls)}, {"from", r.from_kind}, {"to", r.to_kind}, {"context", r.context}});
    }
    j["rules"] = json::array();
    for (const auto& r : pop.rules) {
        json e{{"id", r.id},
               {"type", to_string(r.type)},
               {"subject", write_matcher(r.subject)},
               {"counterparty", write_matcher(r.counterparty)},
               {"legitimate", r.legitimate}};
        if (r.give) e["give"] = write_spec(*r.give);
        if (r.receive) e["receive"] = write_spec(*r.receive);
        if (r.capacity) e["capacity"] = *r.capacity;
        j["rules"].push_back(std::move(e));
    }
    if (!pop.system_bands.empty()) {
        json bands = json::object();
        for (const auto& [cls, b] : pop.system_bands) bands[std::string(to_string(cls))] = write_band(b);
        j["system_bands"] = std::move(bands);
    }
    json sim{{"ticks", s.sim.ticks},
             {"seed", s.sim.seed},
             {"mode", to_string(s.sim.mode)},
             {"partial_commit", s.sim.partial_commit},
             {"context", s.sim.context}};
    for (const auto& c : s.sim.stop_conditions) {
        json states = json::array();
        for (auto st : c.states) states.push_back(to_string(st));
        sim["stop"].push_back({{"class", to_string(c.cls)}, {"states", std::move(states)}});
    }
    j["sim"] = std::move(sim);
    j["report"] = {{"include_events", s.report.include_events}};
    return j.dump(2) + "\n";
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::SchemaError, "cannot read '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

} // namespace sas
