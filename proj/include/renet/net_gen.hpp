#pragma once

// Random decorated nets for property tests.

#include <string>

#include "renet/net.hpp"
#include "renet/poset_gen.hpp"

namespace renet {

struct NetGenOptions {
    std::size_t max_places = 6;
    std::size_t max_transitions = 6;
    Count max_weight = 2;
    Count max_tokens = 3;
    /// Capacities omega, no inhibitors, discrete priorities.
    bool conservative = false;
    double priority_density = 0.3;
};

inline DecoratedNet random_net(Rng& rng, const NetGenOptions& o = {}) {
    NetBuilder b;
    const std::size_t np = pick(rng, o.max_places + 1);
    const std::size_t nt = pick(rng, o.max_transitions + 1);
    std::vector<PlaceId> places;
    for (std::size_t i = 0; i < np; ++i) {
        PlaceId id = "p" + std::to_string(i);
        places.push_back(id);
        Count tokens = pick(rng, o.max_tokens + 1);
        Capacity cap = Capacity::omega();
        if (!o.conservative && pick(rng, 2)) cap = Capacity::of(tokens + 1 + pick(rng, 3));
        b.place(id, "q" + std::to_string(pick(rng, 3)), tokens, cap);
    }
    auto random_multiset = [&] {
        Multiset m;
        for (const auto& p : places)
            if (pick(rng, 3) == 0) m.add(p, 1 + pick(rng, o.max_weight));
        return m;
    };
    for (std::size_t i = 0; i < nt; ++i) {
        TransitionId id = "t" + std::to_string(i);
        std::set<PlaceId> inh;
        if (!o.conservative)
            for (const auto& p : places)
                if (pick(rng, 6) == 0) inh.insert(p);
        LabelValue label;
        Renew rnw = Renew::identity;
        switch (pick(rng, 4)) {
        case 0: label = LabelValue(static_cast<int>(pick(rng, 3))); rnw = Renew::inc; break;
        case 1: label = LabelValue(static_cast<int>(pick(rng, 3))); rnw = Renew::dec_saturating; break;
        case 2: label = LabelValue(pick(rng, 2) == 1); rnw = Renew::logical_not; break;
        default: label = LabelValue::symbol("s" + std::to_string(pick(rng, 2))); break;
        }
        b.transition(id, "t", random_multiset(), random_multiset(), label, rnw, inh);
    }
    if (!o.conservative && nt > 0) {
        Poset order = random_poset(rng, nt, o.priority_density, "t");
        for (const auto& [x, y] : order.covering_pairs()) b.priority(x, y);
    }
    return b.build();
}

} // namespace renet
