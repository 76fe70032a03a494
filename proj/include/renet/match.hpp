#pragma once

// Match enumeration: all morphisms L -> N, found by backtracking over
// transitions first (names, labels and arc shapes prune hardest), then places.

#include <algorithm>
#include <optional>
#include <string_view>
#include <vector>

#include "renet/rule.hpp"

namespace renet {

enum class MatchPolicy { injective, all };

inline const char* to_string(MatchPolicy p) { return p == MatchPolicy::injective ? "injective" : "all"; }

inline std::optional<MatchPolicy> parse_match_policy(std::string_view s) {
    if (s == "injective") return MatchPolicy::injective;
    if (s == "all") return MatchPolicy::all;
    return std::nullopt;
}

/// Every morphism from `pattern` into `host`, sorted by the images of the
/// pattern's places and then transitions (both in id order).
inline std::vector<NetMorphism> find_morphisms(const NetPtr& pattern, const NetPtr& host,
                                               MatchPolicy policy = MatchPolicy::injective) {
    const DecoratedNet& L = *pattern;
    const DecoratedNet& N = *host;
    const auto lt = L.transition_ids();
    const auto lp = L.place_ids();
    const bool inj = policy == MatchPolicy::injective;

    std::vector<std::vector<TransitionId>> tcand(lt.size());
    for (std::size_t i = 0; i < lt.size(); ++i) {
        const Transition& a = L.transitions.at(lt[i]);
        for (const auto& [u, b] : N.transitions) {
            if (a.name != b.name || a.label != b.label || a.renew != b.renew) continue;
            if (a.pre.total() != b.pre.total() || a.post.total() != b.post.total()) continue;
            if (b.inhibitors.size() > a.inhibitors.size() || (inj && b.inhibitors.size() != a.inhibitors.size()))
                continue;
            tcand[i].push_back(u);
        }
        if (tcand[i].empty()) return {};
    }
    std::vector<std::vector<PlaceId>> pcand(lp.size());
    for (std::size_t i = 0; i < lp.size(); ++i) {
        const Place& a = L.places.at(lp[i]);
        for (const auto& [q, b] : N.places)
            if (a.name == b.name && a.cap == b.cap && L.marking[lp[i]] <= N.marking[q]) pcand[i].push_back(q);
        if (pcand[i].empty()) return {};
    }

    NetMorphism cur{pattern, host, {}, {}};
    std::set<PlaceId> used_p;
    std::set<TransitionId> used_t;
    std::vector<NetMorphism> out;

    // Arc membership of an already mapped place against mapped transitions.
    auto place_consistent = [&](const PlaceId& p, const PlaceId& q) {
        for (const auto& [t, u] : cur.transitions) {
            const Transition& a = L.transitions.at(t);
            const Transition& b = N.transitions.at(u);
            if (a.pre.contains(p) && b.pre[q] < a.pre[p]) return false;
            if (a.post.contains(p) && b.post[q] < a.post[p]) return false;
            if (a.inhibitors.count(p) && !b.inhibitors.count(q)) return false;
        }
        return true;
    };
    auto transition_consistent = [&](const TransitionId& t, const TransitionId& u) {
        for (const auto& [s, v] : cur.transitions) {
            if (L.priority_less(s, t) && !N.priority_leq(v, u)) return false;
            if (L.priority_less(t, s) && !N.priority_leq(u, v)) return false;
        }
        return true;
    };

    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos < lt.size()) {
            const TransitionId& t = lt[pos];
            for (const auto& u : tcand[pos]) {
                if (inj && used_t.count(u)) continue;
                if (!transition_consistent(t, u)) continue;
                cur.transitions[t] = u;
                used_t.insert(u);
                self(self, pos + 1);
                used_t.erase(u);
                cur.transitions.erase(t);
            }
            return;
        }
        const std::size_t ip = pos - lt.size();
        if (ip == lp.size()) {
            if (check_morphism(cur).empty()) out.push_back(cur);
            return;
        }
        const PlaceId& p = lp[ip];
        for (const auto& q : pcand[ip]) {
            if (inj && used_p.count(q)) continue;
            if (!place_consistent(p, q)) continue;
            cur.places[p] = q;
            used_p.insert(q);
            self(self, pos + 1);
            used_p.erase(q);
            cur.places.erase(p);
        }
    };
    rec(rec, 0);

    auto key = [&](const NetMorphism& m) {
        std::vector<std::string> k;
        for (const auto& p : lp) k.push_back(m.places.at(p));
        for (const auto& t : lt) k.push_back(m.transitions.at(t));
        return k;
    };
    std::sort(out.begin(), out.end(), [&](const NetMorphism& a, const NetMorphism& b) { return key(a) < key(b); });
    return out;
}

inline std::vector<NetMorphism> find_matches(const Rule& rule, const NetPtr& host,
                                             MatchPolicy policy = MatchPolicy::injective) {
    return find_morphisms(rule.L, host, policy);
}

} // namespace renet
