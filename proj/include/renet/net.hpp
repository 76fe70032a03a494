#pragma once

// Decorated place/transition nets: capacities, place and transition names,
// renewable transition labels, inhibitor sets and a priority order on
// transitions. Nets are plain values; operations return new nets.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "renet/error.hpp"
#include "renet/label.hpp"
#include "renet/multiset.hpp"
#include "renet/poset.hpp"

namespace renet {

using PlaceId = std::string;
using TransitionId = std::string;

/// Per-place bound; std::nullopt is omega.
struct Capacity {
    std::optional<Count> bound;

    static Capacity omega() { return {}; }
    static Capacity of(Count n) { return {n}; }
    bool is_omega() const { return !bound.has_value(); }
    bool admits(Count n) const { return !bound || n <= *bound; }

    friend bool operator==(const Capacity&, const Capacity&) = default;
    friend auto operator<=>(const Capacity&, const Capacity&) = default;
};

inline std::string to_string(const Capacity& c) { return c.bound ? std::to_string(*c.bound) : "omega"; }

struct Place {
    std::string name;
    Capacity cap;
    friend bool operator==(const Place&, const Place&) = default;
};

struct Transition {
    std::string name;
    LabelValue label;
    Renew renew = Renew::identity;
    Multiset pre;
    Multiset post;
    std::set<PlaceId> inhibitors;
    friend bool operator==(const Transition&, const Transition&) = default;
};

struct DecoratedNet {
    std::map<PlaceId, Place> places;
    std::map<TransitionId, Transition> transitions;
    Multiset marking;
    /// Strict part of the priority order: (a, b) means a < b. Kept
    /// transitively closed; the reflexive pairs are implicit.
    std::set<std::pair<TransitionId, TransitionId>> priority;

    bool has_place(const PlaceId& p) const { return places.count(p) != 0; }
    bool has_transition(const TransitionId& t) const { return transitions.count(t) != 0; }

    const Place& place(const PlaceId& p) const {
        auto it = places.find(p);
        if (it == places.end()) throw NetError("unknown place '" + p + "'");
        return it->second;
    }

    const Transition& transition(const TransitionId& t) const {
        auto it = transitions.find(t);
        if (it == transitions.end()) throw UnknownTransition("unknown transition '" + t + "'");
        return it->second;
    }

    bool priority_less(const TransitionId& a, const TransitionId& b) const { return priority.count({a, b}) != 0; }
    bool priority_leq(const TransitionId& a, const TransitionId& b) const { return a == b || priority_less(a, b); }

    std::vector<TransitionId> transition_ids() const {
        std::vector<TransitionId> out;
        for (const auto& [id, t] : transitions) out.push_back(id);
        return out;
    }

    std::vector<PlaceId> place_ids() const {
        std::vector<PlaceId> out;
        for (const auto& [id, p] : places) out.push_back(id);
        return out;
    }

    /// (T, <=) as a poset over transition ids.
    Poset priority_poset() const {
        std::vector<ElementPair> gens(priority.begin(), priority.end());
        return Poset::closure(transition_ids(), gens);
    }

    std::vector<std::pair<TransitionId, TransitionId>> priority_covering_pairs() const {
        std::vector<std::pair<TransitionId, TransitionId>> out;
        for (const auto& [a, b] : priority) {
            bool covered = true;
            for (const auto& [id, t] : transitions)
                if (priority_less(a, id) && priority_less(id, b)) {
                    covered = false;
                    break;
                }
            if (covered) out.emplace_back(a, b);
        }
        return out;
    }

    friend bool operator==(const DecoratedNet&, const DecoratedNet&) = default;
};

struct NetViolation {
    std::string path; ///< e.g. "places.p1.tokens" or "transitions.t.pre.q"
    std::string message;
    friend bool operator==(const NetViolation&, const NetViolation&) = default;
};

inline std::string to_string(const NetViolation& v) { return v.path + ": " + v.message; }

/// Every invariant violation of the net, in a fixed order.
inline std::vector<NetViolation> validate_net(const DecoratedNet& n) {
    std::vector<NetViolation> out;
    for (const auto& [id, p] : n.places)
        if (p.cap.bound && *p.cap.bound == 0) out.push_back({"places." + id + ".cap", "capacity must be at least 1"});
    for (const auto& [id, k] : n.marking) {
        if (!n.has_place(id)) {
            out.push_back({"marking." + id, "tokens on unknown place"});
            continue;
        }
        const Capacity& cap = n.places.at(id).cap;
        if (!cap.admits(k))
            out.push_back({"places." + id + ".tokens",
                           "marking " + std::to_string(k) + " exceeds capacity " + to_string(cap)});
    }
    for (const auto& [id, t] : n.transitions) {
        for (const auto& [p, k] : t.pre)
            if (!n.has_place(p)) out.push_back({"transitions." + id + ".pre." + p, "unknown place"});
        for (const auto& [p, k] : t.post)
            if (!n.has_place(p)) out.push_back({"transitions." + id + ".post." + p, "unknown place"});
        for (const auto& p : t.inhibitors)
            if (!n.has_place(p)) out.push_back({"transitions." + id + ".inhibitors." + p, "unknown place"});
    }
    Relation rel;
    rel.carrier = n.transition_ids();
    for (const auto& t : rel.carrier) rel.pairs.emplace_back(t, t);
    for (const auto& pr : n.priority) {
        if (pr.first == pr.second) {
            out.push_back({"priorities." + pr.first + "<" + pr.second, "strict priority pair is reflexive"});
            continue;
        }
        rel.pairs.push_back(pr);
    }
    if (auto v = validate_poset(rel)) out.push_back({"priorities", v->message()});
    return out;
}

inline void require_valid(const DecoratedNet& n) {
    auto v = validate_net(n);
    if (!v.empty()) {
        std::string msg = "invalid net: " + to_string(v.front());
        if (v.size() > 1) msg += " (and " + std::to_string(v.size() - 1) + " more)";
        throw ValidationError(msg);
    }
}

/// Fluent construction; build() closes the priority generators and validates.
class NetBuilder {
public:
    NetBuilder& place(const PlaceId& id, const std::string& name, Count tokens = 0,
                      Capacity cap = Capacity::omega()) {
        if (net_.has_place(id)) throw ValidationError("duplicate place id '" + id + "'");
        net_.places[id] = Place{name, cap};
        net_.marking.set(id, tokens);
        return *this;
    }

    NetBuilder& place(const PlaceId& id, Count tokens = 0) { return place(id, id, tokens); }

    NetBuilder& transition(const TransitionId& id, const std::string& name, Multiset pre, Multiset post,
                           LabelValue label = {}, Renew rnw = Renew::identity, std::set<PlaceId> inhibitors = {}) {
        if (net_.has_transition(id)) throw ValidationError("duplicate transition id '" + id + "'");
        net_.transitions[id] = Transition{name, std::move(label), rnw, std::move(pre), std::move(post),
                                          std::move(inhibitors)};
        return *this;
    }

    NetBuilder& transition(const TransitionId& id, Multiset pre, Multiset post) {
        return transition(id, id, std::move(pre), std::move(post));
    }

    NetBuilder& priority(const TransitionId& lesser, const TransitionId& greater) {
        generators_.emplace_back(lesser, greater);
        return *this;
    }

    DecoratedNet build() const {
        DecoratedNet n = net_;
        for (const auto& [a, b] : generators_)
            if (!n.has_transition(a) || !n.has_transition(b))
                throw ValidationError("priority pair " + a + "<" + b + " names an unknown transition");
        Poset order;
        try {
            order = Poset::closure(n.transition_ids(), generators_);
        } catch (const PosetError& e) {
            throw ValidationError(std::string("priorities: ") + e.what());
        }
        for (const auto& [a, b] : order.pairs())
            if (a != b) n.priority.emplace(a, b);
        require_valid(n);
        return n;
    }

private:
    DecoratedNet net_;
    std::vector<ElementPair> generators_;
};

} // namespace renet
