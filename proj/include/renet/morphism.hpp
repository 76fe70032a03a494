#pragma once

// Net morphisms: a place map and a transition map preserving arcs, capacities,
// names, labels, renewal functions and inhibitor sets, monotone on markings
// and on the priority order.

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "renet/net.hpp"

namespace renet {

using NetPtr = std::shared_ptr<const DecoratedNet>;

inline NetPtr share(DecoratedNet n) { return std::make_shared<const DecoratedNet>(std::move(n)); }

struct NetMorphism {
    NetPtr source;
    NetPtr target;
    std::map<PlaceId, PlaceId> places;
    std::map<TransitionId, TransitionId> transitions;

    const PlaceId& place(const PlaceId& p) const {
        auto it = places.find(p);
        if (it == places.end()) throw InvalidMorphism("place '" + p + "' is not mapped");
        return it->second;
    }

    const TransitionId& transition(const TransitionId& t) const {
        auto it = transitions.find(t);
        if (it == transitions.end()) throw InvalidMorphism("transition '" + t + "' is not mapped");
        return it->second;
    }

    bool injective() const {
        std::set<PlaceId> ps;
        for (const auto& [a, b] : places)
            if (!ps.insert(b).second) return false;
        std::set<TransitionId> ts;
        for (const auto& [a, b] : transitions)
            if (!ts.insert(b).second) return false;
        return true;
    }

    /// Same maps between equal nets.
    friend bool operator==(const NetMorphism& a, const NetMorphism& b) {
        auto same = [](const NetPtr& x, const NetPtr& y) { return x == y || (x && y && *x == *y); };
        return same(a.source, b.source) && same(a.target, b.target) && a.places == b.places &&
               a.transitions == b.transitions;
    }
};

/// Condition groups of a morphism, reported by check_morphism.
enum class MorphismCondition { total, arcs, capacity, place_names, transition_data, marking, inhibitors, priority };

inline const char* to_string(MorphismCondition c) {
    switch (c) {
    case MorphismCondition::total: return "(0) totality";
    case MorphismCondition::arcs: return "(1) pre/post";
    case MorphismCondition::capacity: return "(2) capacity";
    case MorphismCondition::place_names: return "(3) place names";
    case MorphismCondition::transition_data: return "(4) transition names/labels/renewal";
    case MorphismCondition::marking: return "(5) marking";
    case MorphismCondition::inhibitors: return "(inh) inhibitors";
    case MorphismCondition::priority: return "(priority) order";
    }
    return "?";
}

struct MorphismViolation {
    MorphismCondition condition;
    std::string element;
    std::string message;
};

inline std::string to_string(const MorphismViolation& v) {
    return std::string(to_string(v.condition)) + " at " + v.element + ": " + v.message;
}

inline std::vector<MorphismViolation> check_morphism(const NetMorphism& f) {
    std::vector<MorphismViolation> out;
    if (!f.source || !f.target) {
        out.push_back({MorphismCondition::total, "-", "missing source or target net"});
        return out;
    }
    const DecoratedNet& a = *f.source;
    const DecoratedNet& b = *f.target;

    for (const auto& [p, q] : f.places)
        if (!a.has_place(p) || !b.has_place(q))
            out.push_back({MorphismCondition::total, p, "maps outside the nets (" + p + " -> " + q + ")"});
    for (const auto& [t, u] : f.transitions)
        if (!a.has_transition(t) || !b.has_transition(u))
            out.push_back({MorphismCondition::total, t, "maps outside the nets (" + t + " -> " + u + ")"});
    for (const auto& [p, pl] : a.places)
        if (!f.places.count(p)) out.push_back({MorphismCondition::total, p, "place not mapped"});
    for (const auto& [t, tr] : a.transitions)
        if (!f.transitions.count(t)) out.push_back({MorphismCondition::total, t, "transition not mapped"});
    if (!out.empty()) return out;

    auto fp = [&](const PlaceId& p) { return f.places.at(p); };

    for (const auto& [t, tr] : a.transitions) {
        const TransitionId& u = f.transitions.at(t);
        const Transition& image = b.transitions.at(u);
        if (tr.pre.mapped(fp) != image.pre)
            out.push_back({MorphismCondition::arcs, t, "pre " + to_string(tr.pre.mapped(fp)) + " != " + to_string(image.pre)});
        if (tr.post.mapped(fp) != image.post)
            out.push_back(
                {MorphismCondition::arcs, t, "post " + to_string(tr.post.mapped(fp)) + " != " + to_string(image.post)});
        if (tr.name != image.name || tr.label != image.label || tr.renew != image.renew)
            out.push_back({MorphismCondition::transition_data, t, "name/label/renewal differ from " + u});
        std::set<PlaceId> inh;
        for (const auto& p : tr.inhibitors) inh.insert(fp(p));
        if (inh != image.inhibitors) out.push_back({MorphismCondition::inhibitors, t, "inhibitor image differs from " + u});
    }
    for (const auto& [p, pl] : a.places) {
        const PlaceId& q = fp(p);
        const Place& image = b.places.at(q);
        if (pl.cap != image.cap)
            out.push_back({MorphismCondition::capacity, p, to_string(pl.cap) + " != " + to_string(image.cap)});
        if (pl.name != image.name)
            out.push_back({MorphismCondition::place_names, p, "'" + pl.name + "' != '" + image.name + "'"});
        if (a.marking[p] > b.marking[q])
            out.push_back({MorphismCondition::marking, p,
                           std::to_string(a.marking[p]) + " tokens > " + std::to_string(b.marking[q]) + " at " + q});
    }
    for (const auto& [x, y] : a.priority)
        if (!b.priority_leq(f.transitions.at(x), f.transitions.at(y)))
            out.push_back({MorphismCondition::priority, x + "<" + y, "order not preserved"});
    return out;
}

inline bool is_valid_morphism(const NetMorphism& f) { return check_morphism(f).empty(); }

inline void require_morphism(const NetMorphism& f, const std::string& what) {
    auto v = check_morphism(f);
    if (!v.empty()) throw InvalidMorphism(what + ": " + to_string(v.front()));
}

/// The transition component as a monotone map between priority posets.
inline MonotoneMap transition_map(const NetMorphism& f) {
    Poset s = f.source->priority_poset();
    Poset t = f.target->priority_poset();
    std::vector<std::size_t> image(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) image[i] = *t.index_of(f.transitions.at(s.element(i)));
    return MonotoneMap(s, t, std::move(image));
}

/// The place component as a map between discrete posets.
inline MonotoneMap place_map(const NetMorphism& f) {
    Poset s = discrete(f.source->place_ids());
    Poset t = discrete(f.target->place_ids());
    std::vector<std::size_t> image(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) image[i] = *t.index_of(f.places.at(s.element(i)));
    return MonotoneMap(s, t, std::move(image));
}

/// Membership in M: injective, marking-preserving, and the transition map a
/// strict order embedding.
inline bool is_strict(const NetMorphism& f) {
    require_morphism(f, "is_strict");
    if (!f.injective()) return false;
    for (const auto& [p, q] : f.places)
        if (f.source->marking[p] != f.target->marking[q]) return false;
    return is_strict_order_embedding(transition_map(f));
}

inline NetMorphism identity_morphism(const NetPtr& n) {
    NetMorphism id{n, n, {}, {}};
    for (const auto& [p, pl] : n->places) id.places[p] = p;
    for (const auto& [t, tr] : n->transitions) id.transitions[t] = t;
    return id;
}

/// g after f.
inline NetMorphism compose(const NetMorphism& g, const NetMorphism& f) {
    if (f.target != g.source && !(*f.target == *g.source)) throw InvalidMorphism("cannot compose: intermediate nets differ");
    NetMorphism out{f.source, g.target, {}, {}};
    for (const auto& [p, q] : f.places) out.places[p] = g.place(q);
    for (const auto& [t, u] : f.transitions) out.transitions[t] = g.transition(u);
    return out;
}

} // namespace renet
