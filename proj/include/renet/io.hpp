#pragma once

// JSON documents for nets, rules and bundles (net + rules + settings).
// Output is canonical: sorted keys, elements sorted by id, priorities as
// covering pairs, two-space indentation and a trailing newline.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "renet/firing.hpp"
#include "renet/match.hpp"
#include "renet/rule.hpp"

namespace renet {

using Json = nlohmann::json;

struct Settings {
    PriorityMode priority_mode = PriorityMode::maximum;
    MatchPolicy match_policy = MatchPolicy::injective;
    bool strict_capacity = false;

    FiringOptions firing() const { return FiringOptions{priority_mode, strict_capacity}; }
    friend bool operator==(const Settings&, const Settings&) = default;
};

struct Bundle {
    DecoratedNet net;
    std::vector<Rule> rules;
    Settings settings;

    const Rule& rule(const std::string& name) const {
        for (const auto& r : rules)
            if (r.name == name) return r;
        throw ResolutionError("no rule named '" + name + "'");
    }
};

enum class DocumentKind { net, rule, bundle };

namespace detail {

[[noreturn]] inline void shape_error(const std::string& path, const std::string& msg) {
    throw ParseError(path + ": " + msg);
}

inline const Json& field(const Json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) shape_error(path, std::string("missing field '") + key + "'");
    return *it;
}

inline void only_keys(const Json& obj, std::initializer_list<const char*> keys, const std::string& path) {
    if (!obj.is_object()) shape_error(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys) known |= it.key() == k;
        if (!known) shape_error(path, "unknown field '" + it.key() + "'");
    }
}

inline std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) shape_error(path, "expected a string");
    return j.get<std::string>();
}

inline Count as_count(const Json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        shape_error(path, "expected a non-negative integer");
    return j.get<Count>();
}

inline Capacity as_capacity(const Json& j, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "omega") return Capacity::omega();
    if (j.is_string()) shape_error(path, "capacity must be a positive integer or \"omega\"");
    return Capacity::of(as_count(j, path));
}

inline LabelValue as_label(const Json& j, const std::string& path) {
    only_keys(j, {"tag", "value"}, path);
    auto tag = parse_label_tag(as_string(field(j, "tag", path), path + ".tag"));
    if (!tag) shape_error(path + ".tag", "expected int, bool or symbol");
    const Json& v = field(j, "value", path);
    switch (*tag) {
    case LabelTag::integer:
        if (!v.is_number_integer()) shape_error(path + ".value", "expected an integer");
        return LabelValue(v.get<std::int64_t>());
    case LabelTag::boolean:
        if (!v.is_boolean()) shape_error(path + ".value", "expected a boolean");
        return LabelValue(v.get<bool>());
    case LabelTag::symbol: return LabelValue::symbol(as_string(v, path + ".value"));
    }
    return {};
}

inline Multiset as_multiset(const Json& j, const DecoratedNet& n, const std::string& path) {
    if (!j.is_object()) shape_error(path, "expected an object of place counts");
    Multiset m;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!n.has_place(it.key())) throw ResolutionError(path + ": unknown place '" + it.key() + "'");
        m.add(it.key(), as_count(it.value(), path + "." + it.key()));
    }
    return m;
}

} // namespace detail

inline DecoratedNet net_from_json(const Json& j, const std::string& path = "net") {
    using namespace detail;
    only_keys(j, {"places", "transitions", "priorities"}, path);
    DecoratedNet n;
    const Json empty = Json::array();
    const Json& places = j.contains("places") ? j.at("places") : empty;
    const Json& transitions = j.contains("transitions") ? j.at("transitions") : empty;
    const Json& priorities = j.contains("priorities") ? j.at("priorities") : empty;
    if (!places.is_array()) shape_error(path + ".places", "expected an array");
    if (!transitions.is_array()) shape_error(path + ".transitions", "expected an array");
    if (!priorities.is_array()) shape_error(path + ".priorities", "expected an array");

    for (std::size_t i = 0; i < places.size(); ++i) {
        const std::string at = path + ".places[" + std::to_string(i) + "]";
        const Json& p = places[i];
        only_keys(p, {"id", "name", "cap", "tokens"}, at);
        PlaceId id = as_string(field(p, "id", at), at + ".id");
        if (n.has_place(id)) throw ValidationError(at + ": duplicate place id '" + id + "'");
        Place pl;
        pl.name = p.contains("name") ? as_string(p.at("name"), at + ".name") : id;
        pl.cap = p.contains("cap") ? as_capacity(p.at("cap"), at + ".cap") : Capacity::omega();
        n.places[id] = pl;
        if (p.contains("tokens")) n.marking.set(id, as_count(p.at("tokens"), at + ".tokens"));
    }
    for (std::size_t i = 0; i < transitions.size(); ++i) {
        const std::string at = path + ".transitions[" + std::to_string(i) + "]";
        const Json& t = transitions[i];
        only_keys(t, {"id", "name", "label", "renew", "pre", "post", "inhibitors"}, at);
        TransitionId id = as_string(field(t, "id", at), at + ".id");
        if (n.has_transition(id)) throw ValidationError(at + ": duplicate transition id '" + id + "'");
        Transition tr;
        tr.name = t.contains("name") ? as_string(t.at("name"), at + ".name") : id;
        if (t.contains("label")) tr.label = as_label(t.at("label"), at + ".label");
        if (t.contains("renew")) {
            auto r = parse_renew(as_string(t.at("renew"), at + ".renew"));
            if (!r) shape_error(at + ".renew", "unknown renew function");
            tr.renew = *r;
        }
        if (t.contains("pre")) tr.pre = as_multiset(t.at("pre"), n, at + ".pre");
        if (t.contains("post")) tr.post = as_multiset(t.at("post"), n, at + ".post");
        if (t.contains("inhibitors")) {
            const Json& inh = t.at("inhibitors");
            if (!inh.is_array()) shape_error(at + ".inhibitors", "expected an array");
            for (const auto& p : inh) {
                PlaceId q = as_string(p, at + ".inhibitors");
                if (!n.has_place(q)) throw ResolutionError(at + ".inhibitors: unknown place '" + q + "'");
                tr.inhibitors.insert(q);
            }
        }
        n.transitions[id] = std::move(tr);
    }
    std::vector<ElementPair> gens;
    for (std::size_t i = 0; i < priorities.size(); ++i) {
        const std::string at = path + ".priorities[" + std::to_string(i) + "]";
        const Json& pr = priorities[i];
        if (!pr.is_array() || pr.size() != 2) shape_error(at, "expected [lesser, greater]");
        TransitionId a = as_string(pr[0], at), b = as_string(pr[1], at);
        for (const auto& t : {a, b})
            if (!n.has_transition(t)) throw ResolutionError(at + ": unknown transition '" + t + "'");
        gens.emplace_back(a, b);
    }
    try {
        Poset order = Poset::closure(n.transition_ids(), gens);
        for (const auto& [a, b] : order.pairs())
            if (a != b) n.priority.emplace(a, b);
    } catch (const PosetError& e) {
        throw ValidationError(path + ".priorities: " + e.what());
    }
    if (auto v = validate_net(n); !v.empty()) throw ValidationError(path + ": " + to_string(v.front()));
    return n;
}

inline Json net_to_json(const DecoratedNet& n) {
    Json places = Json::array();
    for (const auto& [id, p] : n.places) {
        Json cap = p.cap.is_omega() ? Json("omega") : Json(*p.cap.bound);
        places.push_back({{"id", id}, {"name", p.name}, {"cap", cap}, {"tokens", n.marking[id]}});
    }
    Json transitions = Json::array();
    for (const auto& [id, t] : n.transitions) {
        Json label = {{"tag", to_string(t.label.tag())}};
        switch (t.label.tag()) {
        case LabelTag::integer: label["value"] = t.label.as_int(); break;
        case LabelTag::boolean: label["value"] = t.label.as_bool(); break;
        case LabelTag::symbol: label["value"] = t.label.as_symbol(); break;
        }
        auto counts = [](const Multiset& m) {
            Json o = Json::object();
            for (const auto& [p, k] : m) o[p] = k;
            return o;
        };
        Json inh = Json::array();
        for (const auto& p : t.inhibitors) inh.push_back(p);
        transitions.push_back({{"id", id},
                               {"name", t.name},
                               {"label", label},
                               {"renew", to_string(t.renew)},
                               {"pre", counts(t.pre)},
                               {"post", counts(t.post)},
                               {"inhibitors", inh}});
    }
    Json prio = Json::array();
    for (const auto& [a, b] : n.priority_covering_pairs()) prio.push_back({a, b});
    return {{"places", places}, {"transitions", transitions}, {"priorities", prio}};
}

namespace detail {

inline void mapping_from_json(const Json& j, const DecoratedNet& from, const DecoratedNet& to,
                              std::map<PlaceId, PlaceId>& places, std::map<TransitionId, TransitionId>& transitions,
                              const std::string& path) {
    only_keys(j, {"places", "transitions"}, path);
    auto read = [&](const char* key, auto& out, auto has_from, auto has_to) {
        if (!j.contains(key)) return;
        const Json& m = j.at(key);
        if (!m.is_object()) shape_error(path + "." + key, "expected an object of id pairs");
        for (auto it = m.begin(); it != m.end(); ++it) {
            std::string target = as_string(it.value(), path + "." + key + "." + it.key());
            if (!has_from(it.key())) throw ResolutionError(path + "." + key + ": unknown source id '" + it.key() + "'");
            if (!has_to(target)) throw ResolutionError(path + "." + key + ": unknown target id '" + target + "'");
            out[it.key()] = target;
        }
    };
    read("places", places, [&](const std::string& s) { return from.has_place(s); },
         [&](const std::string& s) { return to.has_place(s); });
    read("transitions", transitions, [&](const std::string& s) { return from.has_transition(s); },
         [&](const std::string& s) { return to.has_transition(s); });
}

inline Json mapping_to_json(const NetMorphism& f) {
    Json p = Json::object(), t = Json::object();
    for (const auto& [a, b] : f.places) p[a] = b;
    for (const auto& [a, b] : f.transitions) t[a] = b;
    return {{"places", p}, {"transitions", t}};
}

} // namespace detail

inline Rule rule_from_json(const Json& j, const std::string& path = "rule") {
    using namespace detail;
    only_keys(j, {"name", "L", "K", "R", "l", "r"}, path);
    std::string name = as_string(field(j, "name", path), path + ".name");
    DecoratedNet L = net_from_json(field(j, "L", path), path + ".L");
    DecoratedNet K = net_from_json(field(j, "K", path), path + ".K");
    DecoratedNet R = net_from_json(field(j, "R", path), path + ".R");
    std::map<PlaceId, PlaceId> lp, rp;
    std::map<TransitionId, TransitionId> lt, rt;
    mapping_from_json(field(j, "l", path), K, L, lp, lt, path + ".l");
    mapping_from_json(field(j, "r", path), K, R, rp, rt, path + ".r");
    try {
        return make_rule(name, std::move(L), std::move(K), std::move(R), lp, lt, rp, rt);
    } catch (const InvalidRule& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

inline Json rule_to_json(const Rule& r) {
    return {{"name", r.name},
            {"L", net_to_json(*r.L)},
            {"K", net_to_json(*r.K)},
            {"R", net_to_json(*r.R)},
            {"l", detail::mapping_to_json(r.l)},
            {"r", detail::mapping_to_json(r.r)}};
}

inline Settings settings_from_json(const Json& j, const std::string& path = "settings") {
    using namespace detail;
    only_keys(j, {"priority_mode", "match_policy", "strict_capacity"}, path);
    Settings s;
    if (j.contains("priority_mode")) {
        auto m = parse_priority_mode(as_string(j.at("priority_mode"), path + ".priority_mode"));
        if (!m) shape_error(path + ".priority_mode", "expected maximum or maximal");
        s.priority_mode = *m;
    }
    if (j.contains("match_policy")) {
        auto m = parse_match_policy(as_string(j.at("match_policy"), path + ".match_policy"));
        if (!m) shape_error(path + ".match_policy", "expected injective or all");
        s.match_policy = *m;
    }
    if (j.contains("strict_capacity")) {
        if (!j.at("strict_capacity").is_boolean()) shape_error(path + ".strict_capacity", "expected a boolean");
        s.strict_capacity = j.at("strict_capacity").get<bool>();
    }
    return s;
}

inline Json settings_to_json(const Settings& s) {
    return {{"priority_mode", to_string(s.priority_mode)},
            {"match_policy", to_string(s.match_policy)},
            {"strict_capacity", s.strict_capacity}};
}

inline Bundle bundle_from_json(const Json& j) {
    using namespace detail;
    only_keys(j, {"net", "rules", "settings"}, "bundle");
    Bundle b;
    b.net = net_from_json(field(j, "net", "bundle"), "bundle.net");
    if (j.contains("rules")) {
        const Json& rs = j.at("rules");
        if (!rs.is_array()) shape_error("bundle.rules", "expected an array");
        for (std::size_t i = 0; i < rs.size(); ++i) {
            Rule r = rule_from_json(rs[i], "bundle.rules[" + std::to_string(i) + "]");
            for (const auto& other : b.rules)
                if (other.name == r.name) throw ValidationError("bundle.rules: duplicate rule name '" + r.name + "'");
            b.rules.push_back(std::move(r));
        }
    }
    if (j.contains("settings")) b.settings = settings_from_json(j.at("settings"));
    return b;
}

inline Json bundle_to_json(const Bundle& b) {
    Json rules = Json::array();
    for (const auto& r : b.rules) rules.push_back(rule_to_json(r));
    return {{"net", net_to_json(b.net)}, {"rules", rules}, {"settings", settings_to_json(b.settings)}};
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline DocumentKind document_kind(const Json& j) {
    if (j.is_object() && j.contains("net")) return DocumentKind::bundle;
    if (j.is_object() && j.contains("L")) return DocumentKind::rule;
    return DocumentKind::net;
}

inline DecoratedNet load_net(const std::string& text) { return net_from_json(parse_json(text)); }
inline Rule load_rule(const std::string& text) { return rule_from_json(parse_json(text)); }

/// A bundle document, or a bare net document read as a bundle without rules.
inline Bundle load_bundle(const std::string& text) {
    Json j = parse_json(text);
    switch (document_kind(j)) {
    case DocumentKind::bundle: return bundle_from_json(j);
    case DocumentKind::net: return Bundle{net_from_json(j), {}, {}};
    case DocumentKind::rule: throw ParseError("expected a bundle or net document, got a rule");
    }
    return {};
}

inline std::string save_net(const DecoratedNet& n) { return dump(net_to_json(n)); }
inline std::string save_rule(const Rule& r) { return dump(rule_to_json(r)); }
inline std::string save_bundle(const Bundle& b) { return dump(bundle_to_json(b)); }

} // namespace renet
