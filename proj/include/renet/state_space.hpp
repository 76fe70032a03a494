#pragma once

// Interleaved firing and rule application: successor enumeration, bounded
// breadth-first reachability graphs and seeded random simulation.

#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "renet/canonical.hpp"
#include "renet/firing.hpp"
#include "renet/io.hpp"
#include "renet/transform.hpp"

namespace renet {

struct ReconfigurableNet {
    DecoratedNet net;
    std::vector<Rule> rules;

    static ReconfigurableNet from_bundle(const Bundle& b) {
        ReconfigurableNet rn{b.net, b.rules};
        rn.validate();
        return rn;
    }

    void validate() const {
        require_valid(net);
        std::set<std::string> names;
        for (const auto& r : rules) {
            validate_rule(r);
            if (!names.insert(r.name).second) throw InvalidRule("duplicate rule name '" + r.name + "'");
        }
    }
};

struct FireStep {
    TransitionId transition;
    friend bool operator==(const FireStep&, const FireStep&) = default;
};
struct FireParallelStep {
    TransitionVector vector;
    friend bool operator==(const FireParallelStep&, const FireParallelStep&) = default;
};
struct ApplyStep {
    std::string rule;
    std::size_t match = 0;
    friend bool operator==(const ApplyStep&, const ApplyStep&) = default;
};

using StepLabel = std::variant<FireStep, FireParallelStep, ApplyStep>;

inline std::string to_string(const StepLabel& s) {
    if (auto f = std::get_if<FireStep>(&s)) return "fire(" + f->transition + ")";
    if (auto p = std::get_if<FireParallelStep>(&s)) {
        std::string out = "fire_parallel(";
        bool first = true;
        for (const auto& [t, k] : p->vector) {
            out += (first ? "" : ",") + t + "=" + std::to_string(k);
            first = false;
        }
        return out + ")";
    }
    const auto& a = std::get<ApplyStep>(s);
    return "apply(" + a.rule + "," + std::to_string(a.match) + ")";
}

enum class NodeIdentity { isomorphism, exact };

struct StepOptions {
    FiringOptions firing;
    MatchPolicy match_policy = MatchPolicy::injective;
    /// Also offer concurrent steps with total multiplicity 2.
    bool parallel = false;
};

inline StepOptions step_options(const Settings& s) { return StepOptions{s.firing(), s.match_policy, false}; }

struct Successor {
    StepLabel label;
    DecoratedNet net;
};

namespace detail {

inline const Rule& rule_named(const std::vector<Rule>& rules, const std::string& name) {
    for (const auto& r : rules)
        if (r.name == name) return r;
    throw ResolutionError("no rule named '" + name + "'");
}

inline std::vector<const Rule*> rules_by_name(const std::vector<Rule>& rules) {
    std::vector<const Rule*> out;
    for (const auto& r : rules) out.push_back(&r);
    std::sort(out.begin(), out.end(), [](const Rule* a, const Rule* b) { return a->name < b->name; });
    return out;
}

} // namespace detail

/// Re-executes one step. `application_index` feeds the ids of created elements.
inline DecoratedNet replay(const DecoratedNet& n, const std::vector<Rule>& rules, const StepLabel& label,
                           const StepOptions& opts, std::size_t application_index = 0) {
    if (auto f = std::get_if<FireStep>(&label)) return fire(n, f->transition, opts.firing);
    if (auto p = std::get_if<FireParallelStep>(&label)) return fire_parallel(n, p->vector, opts.firing);
    const auto& a = std::get<ApplyStep>(label);
    const Rule& rule = detail::rule_named(rules, a.rule);
    NetPtr host = share(n);
    auto matches = find_matches(rule, host, opts.match_policy);
    if (a.match >= matches.size())
        throw ResolutionError("rule '" + a.rule + "' has no match with index " + std::to_string(a.match));
    return *apply(rule, matches[a.match], ApplyOptions{application_index, false}).H;
}

/// Enabled firings (by transition id), then optional concurrent steps, then
/// applicable rule applications (rules by name, matches in match order).
inline std::vector<Successor> successors(const DecoratedNet& n, const std::vector<Rule>& rules,
                                         const StepOptions& opts, std::size_t application_index = 0) {
    std::vector<Successor> out;
    const auto en = enabled_set(n, opts.firing);
    for (const auto& t : en) out.push_back({FireStep{t}, fire(n, t, opts.firing)});
    if (opts.parallel) {
        std::vector<TransitionVector> vectors;
        for (std::size_t i = 0; i < en.size(); ++i) {
            vectors.push_back({{en[i], 2}});
            for (std::size_t j = i + 1; j < en.size(); ++j) vectors.push_back({{en[i], 1}, {en[j], 1}});
        }
        std::sort(vectors.begin(), vectors.end());
        for (const auto& v : vectors) {
            try {
                out.push_back({FireParallelStep{v}, fire_parallel(n, v, opts.firing)});
            } catch (const NotEnabledParallel&) {
            }
        }
    }
    NetPtr host = share(n);
    for (const Rule* rule : detail::rules_by_name(rules)) {
        auto matches = find_matches(*rule, host, opts.match_policy);
        for (std::size_t i = 0; i < matches.size(); ++i) {
            if (!check_gluing(*rule, matches[i]).ok()) continue;
            Derivation d = apply(*rule, matches[i], ApplyOptions{application_index, false});
            out.push_back({ApplyStep{rule->name, i}, *d.H});
        }
    }
    return out;
}

inline std::vector<Successor> successors(const ReconfigurableNet& rn, const StepOptions& opts) {
    return successors(rn.net, rn.rules, opts);
}

struct GraphNode {
    std::string key; ///< canonical form (or exact serialisation)
    DecoratedNet net;
    std::size_t depth = 0;
};

struct GraphEdge {
    std::size_t source;
    StepLabel label;
    std::size_t target;
};

struct ReachabilityGraph {
    std::vector<GraphNode> nodes; ///< nodes[0] is the root
    std::vector<GraphEdge> edges;
    bool truncated_depth = false;
    bool truncated_nodes = false;

    std::optional<std::size_t> find(const std::string& key) const {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i].key == key) return i;
        return std::nullopt;
    }
};

struct ExploreOptions {
    std::size_t depth = 3;
    std::size_t max_nodes = 200;
    StepOptions step;
    NodeIdentity identity = NodeIdentity::isomorphism;
};

inline std::string node_key(const DecoratedNet& n, NodeIdentity id) {
    return id == NodeIdentity::isomorphism ? canonical_form(n) : net_to_json(n).dump();
}

/// Breadth-first exploration. Nodes at the depth bound are not expanded; new
/// nodes beyond the budget are dropped together with the edges leading to them.
inline ReachabilityGraph explore(const ReconfigurableNet& rn, const ExploreOptions& opts) {
    ReachabilityGraph g;
    std::map<std::string, std::size_t> index;
    if (opts.max_nodes == 0) {
        g.truncated_nodes = true;
        return g;
    }
    g.nodes.push_back({node_key(rn.net, opts.identity), rn.net, 0});
    index[g.nodes[0].key] = 0;
    for (std::size_t cur = 0; cur < g.nodes.size(); ++cur) {
        const std::size_t depth = g.nodes[cur].depth;
        auto succ = successors(g.nodes[cur].net, rn.rules, opts.step, cur);
        if (depth >= opts.depth) {
            if (!succ.empty()) g.truncated_depth = true;
            continue;
        }
        for (auto& s : succ) {
            std::string key = node_key(s.net, opts.identity);
            auto it = index.find(key);
            std::size_t target;
            if (it != index.end()) {
                target = it->second;
            } else {
                if (g.nodes.size() >= opts.max_nodes) {
                    g.truncated_nodes = true;
                    continue;
                }
                target = g.nodes.size();
                index.emplace(key, target);
                g.nodes.push_back({std::move(key), std::move(s.net), depth + 1});
            }
            g.edges.push_back({cur, std::move(s.label), target});
        }
    }
    return g;
}

struct SimulationTrace {
    std::uint64_t seed = 0;
    std::vector<StepLabel> steps;
    bool halted_early = false;
    DecoratedNet final_net;
};

/// Uniform choice among successors with std::mt19937_64 seeded by `seed`;
/// index = rng() % count, which is portable across standard libraries.
inline SimulationTrace simulate(const ReconfigurableNet& rn, std::size_t steps, std::uint64_t seed,
                                const StepOptions& opts) {
    SimulationTrace tr;
    tr.seed = seed;
    tr.final_net = rn.net;
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < steps; ++i) {
        auto succ = successors(tr.final_net, rn.rules, opts, i);
        if (succ.empty()) {
            tr.halted_early = true;
            break;
        }
        auto& pick = succ[static_cast<std::size_t>(rng() % succ.size())];
        tr.steps.push_back(pick.label);
        tr.final_net = std::move(pick.net);
    }
    return tr;
}

/// 64-bit FNV-1a, used to print short node keys.
inline std::string short_key(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

inline Json net_summary(const DecoratedNet& n) {
    Json marking = Json::object(), labels = Json::object();
    for (const auto& [p, k] : n.marking) marking[p] = k;
    for (const auto& [t, tr] : n.transitions) labels[t] = to_string(tr.label);
    return {{"places", n.places.size()}, {"transitions", n.transitions.size()}, {"marking", marking}, {"labels", labels}};
}

inline Json graph_to_json(const ReachabilityGraph& g) {
    Json nodes = Json::array(), edges = Json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        nodes.push_back({{"id", i}, {"key", short_key(g.nodes[i].key)}, {"depth", g.nodes[i].depth},
                         {"summary", net_summary(g.nodes[i].net)}});
    for (const auto& e : g.edges) edges.push_back({{"source", e.source}, {"label", to_string(e.label)}, {"target", e.target}});
    return {{"root", 0},
            {"nodes", nodes},
            {"edges", edges},
            {"truncated", {{"depth", g.truncated_depth}, {"nodes", g.truncated_nodes}}}};
}

inline std::string graph_to_dot(const ReachabilityGraph& g) {
    std::ostringstream os;
    os << "digraph reachability {\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
        const auto& n = g.nodes[i].net;
        os << "  n" << i << " [label=\"n" << i << "\\n|P|=" << n.places.size() << " |T|=" << n.transitions.size()
           << "\\n" << to_string(n.marking) << "\"" << (i == 0 ? ", peripheries=2" : "") << "];\n";
    }
    for (const auto& e : g.edges)
        os << "  n" << e.source << " -> n" << e.target << " [label=\"" << to_string(e.label) << "\"];\n";
    os << "}\n";
    return os.str();
}

inline Json trace_to_json(const SimulationTrace& t) {
    Json steps = Json::array();
    for (const auto& s : t.steps) steps.push_back(to_string(s));
    return {{"seed", t.seed}, {"steps", steps}, {"halted_early", t.halted_early}, {"final", net_to_json(t.final_net)}};
}

} // namespace renet
