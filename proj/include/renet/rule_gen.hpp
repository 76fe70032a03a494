#pragma once

// Random rules together with a match into a random host. L is cut out of the
// host, K is a convex part of L and R extends K by fresh places and
// transitions, so both legs are strict by construction.

#include <string>

#include "renet/match.hpp"
#include "renet/net_gen.hpp"

namespace renet {

struct RandomRule {
    Rule rule;
    NetMorphism match; ///< inclusion of L into the host
};

namespace detail {

/// Copy of `n` restricted to the given elements (arcs of kept transitions must
/// stay inside `places`).
inline DecoratedNet restrict_net(const DecoratedNet& n, const std::set<PlaceId>& places,
                                 const std::set<TransitionId>& transitions) {
    DecoratedNet out;
    for (const auto& p : places) {
        out.places[p] = n.places.at(p);
        out.marking.set(p, n.marking[p]);
    }
    for (const auto& t : transitions) out.transitions[t] = n.transitions.at(t);
    for (const auto& [a, b] : n.priority)
        if (transitions.count(a) && transitions.count(b)) out.priority.emplace(a, b);
    return out;
}

inline void add_touched(const Transition& t, std::set<PlaceId>& places) {
    for (const auto& [p, k] : t.pre) places.insert(p);
    for (const auto& [p, k] : t.post) places.insert(p);
    places.insert(t.inhibitors.begin(), t.inhibitors.end());
}

template <class Map>
std::map<typename Map::key_type, typename Map::key_type> inclusion(const Map& m) {
    std::map<typename Map::key_type, typename Map::key_type> out;
    for (const auto& [k, v] : m) out[k] = k;
    return out;
}

} // namespace detail

inline RandomRule random_rule(Rng& rng, const std::string& name, const NetGenOptions& host_opts = {}) {
    const DecoratedNet N = random_net(rng, host_opts);

    std::set<TransitionId> lt;
    for (const auto& [t, tr] : N.transitions)
        if (pick(rng, 2)) lt.insert(t);
    std::set<PlaceId> lp;
    for (const auto& t : lt) detail::add_touched(N.transitions.at(t), lp);
    for (const auto& [p, pl] : N.places)
        if (pick(rng, 3) == 0) lp.insert(p);
    DecoratedNet L = detail::restrict_net(N, lp, lt);
    // fewer tokens than the host half of the time
    for (const auto& p : lp)
        if (pick(rng, 2)) L.marking.set(p, pick(rng, N.marking[p] + 1));

    std::set<TransitionId> kt;
    for (const auto& t : lt)
        if (pick(rng, 3)) kt.insert(t);
    // convex closure inside L's order keeps l in M
    for (const auto& a : std::set<TransitionId>(kt))
        for (const auto& b : std::set<TransitionId>(kt))
            for (const auto& z : lt)
                if (L.priority_less(a, z) && L.priority_less(z, b)) kt.insert(z);
    std::set<PlaceId> kp;
    for (const auto& t : kt) detail::add_touched(L.transitions.at(t), kp);
    for (const auto& p : lp)
        if (pick(rng, 2)) kp.insert(p);
    DecoratedNet K = detail::restrict_net(L, kp, kt);

    DecoratedNet R = K;
    std::vector<PlaceId> rp(kp.begin(), kp.end());
    const std::size_t new_places = pick(rng, 3);
    for (std::size_t i = 0; i < new_places; ++i) {
        PlaceId id = "n" + std::to_string(i);
        R.places[id] = Place{"q" + std::to_string(pick(rng, 3)), Capacity::omega()};
        R.marking.set(id, pick(rng, 3));
        rp.push_back(id);
    }
    const std::size_t new_transitions = pick(rng, 3);
    for (std::size_t i = 0; i < new_transitions; ++i) {
        Multiset pre, post;
        for (const auto& p : rp) {
            if (pick(rng, 3) == 0) pre.add(p, 1 + pick(rng, 2));
            if (pick(rng, 3) == 0) post.add(p, 1 + pick(rng, 2));
        }
        TransitionId id = "u" + std::to_string(i);
        R.transitions[id] = Transition{"t", LabelValue(static_cast<int>(pick(rng, 3))), Renew::inc, pre, post, {}};
        // new transitions may only sit above K's transitions, which keeps K convex in R
        for (const auto& k : kt)
            if (pick(rng, 4) == 0) {
                R.priority.emplace(k, id);
                for (const auto& [a, b] : K.priority)
                    if (b == k) R.priority.emplace(a, id);
            }
    }

    Rule rule = make_rule(name, L, K, R, detail::inclusion(K.places), detail::inclusion(K.transitions),
                          detail::inclusion(K.places), detail::inclusion(K.transitions));
    NetPtr host = share(N);
    NetMorphism m{rule.L, host, detail::inclusion(L.places), detail::inclusion(L.transitions)};
    return {std::move(rule), std::move(m)};
}

} // namespace renet
