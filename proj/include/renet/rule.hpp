#pragma once

// Rules as spans L <- K -> R of strict net morphisms.

#include <string>

#include "renet/morphism.hpp"

namespace renet {

struct Rule {
    std::string name;
    NetPtr L, K, R;
    NetMorphism l; ///< K -> L
    NetMorphism r; ///< K -> R
};

/// Throws InvalidRule unless both legs are strict morphisms out of K.
inline void validate_rule(const Rule& rule) {
    auto fail = [&](const std::string& msg) { throw InvalidRule("rule '" + rule.name + "': " + msg); };
    if (!rule.L || !rule.K || !rule.R) fail("missing L, K or R");
    for (const auto& [side, net] : {std::pair{"L", rule.L}, {"K", rule.K}, {"R", rule.R}}) {
        auto v = validate_net(*net);
        if (!v.empty()) fail(std::string(side) + " is not a valid net: " + to_string(v.front()));
    }
    if (rule.l.source != rule.K || rule.l.target != rule.L) fail("l must go from K to L");
    if (rule.r.source != rule.K || rule.r.target != rule.R) fail("r must go from K to R");
    for (const auto& [side, leg] : {std::pair{"l", &rule.l}, {"r", &rule.r}}) {
        auto v = check_morphism(*leg);
        if (!v.empty()) fail(std::string(side) + " is not a morphism: " + to_string(v.front()));
        if (!is_strict(*leg)) fail(std::string(side) + " is not strict");
    }
}

/// Builds and validates a rule from the three nets and the two id maps.
inline Rule make_rule(std::string name, DecoratedNet L, DecoratedNet K, DecoratedNet R,
                      std::map<PlaceId, PlaceId> l_places, std::map<TransitionId, TransitionId> l_transitions,
                      std::map<PlaceId, PlaceId> r_places, std::map<TransitionId, TransitionId> r_transitions) {
    Rule rule;
    rule.name = std::move(name);
    rule.L = share(std::move(L));
    rule.K = share(std::move(K));
    rule.R = share(std::move(R));
    rule.l = NetMorphism{rule.K, rule.L, std::move(l_places), std::move(l_transitions)};
    rule.r = NetMorphism{rule.K, rule.R, std::move(r_places), std::move(r_transitions)};
    validate_rule(rule);
    return rule;
}

/// The same span read backwards.
inline Rule inverse(const Rule& rule, std::string name) {
    Rule inv{std::move(name), rule.R, rule.K, rule.L, rule.r, rule.l};
    return inv;
}

} // namespace renet
