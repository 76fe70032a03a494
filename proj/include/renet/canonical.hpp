#pragma once

// Canonical forms of decorated nets. Colour refinement over places and
// transitions (arcs, inhibitors, priorities and all decorations), then
// individualisation of the first tied class, branching over its members; the
// least serialisation over all leaves is the canonical form. Exponential in
// the worst case, which is acceptable for the net sizes handled here.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "renet/match.hpp"

namespace renet {

namespace detail {

struct NetIndex {
    std::vector<PlaceId> places;
    std::vector<TransitionId> transitions;
    std::vector<std::string> base; // invariant colour seed per element
    // adjacency: element -> (relation tag, weight, neighbour)
    std::vector<std::vector<std::tuple<char, Count, std::size_t>>> adj;

    explicit NetIndex(const DecoratedNet& n) {
        places = n.place_ids();
        transitions = n.transition_ids();
        const std::size_t np = places.size();
        std::map<PlaceId, std::size_t> pi;
        for (std::size_t i = 0; i < np; ++i) pi[places[i]] = i;
        std::map<TransitionId, std::size_t> ti;
        for (std::size_t j = 0; j < transitions.size(); ++j) ti[transitions[j]] = np + j;
        adj.resize(np + transitions.size());
        for (const auto& p : places) {
            const Place& pl = n.places.at(p);
            base.push_back("P|" + pl.name + "|" + to_string(pl.cap) + "|" + std::to_string(n.marking[p]));
        }
        for (const auto& t : transitions) {
            const Transition& tr = n.transitions.at(t);
            base.push_back("T|" + tr.name + "|" + to_label_key(tr.label) + "|" + to_string(tr.renew));
            const std::size_t j = ti[t];
            for (const auto& [p, k] : tr.pre) {
                adj[j].emplace_back('i', k, pi[p]);
                adj[pi[p]].emplace_back('I', k, j);
            }
            for (const auto& [p, k] : tr.post) {
                adj[j].emplace_back('o', k, pi[p]);
                adj[pi[p]].emplace_back('O', k, j);
            }
            for (const auto& p : tr.inhibitors) {
                adj[j].emplace_back('h', 1, pi[p]);
                adj[pi[p]].emplace_back('H', 1, j);
            }
        }
        for (const auto& [a, b] : n.priority) {
            adj[ti[a]].emplace_back('<', 1, ti[b]);
            adj[ti[b]].emplace_back('>', 1, ti[a]);
        }
    }

    static std::string to_label_key(const LabelValue& v) { return std::string(to_string(v.tag())) + ":" + to_string(v); }

    std::size_t size() const { return base.size(); }
};

inline std::size_t distinct(const std::vector<std::size_t>& c) {
    return std::set<std::size_t>(c.begin(), c.end()).size();
}

inline std::vector<std::size_t> rank_signatures(const std::vector<std::string>& sigs) {
    std::vector<std::string> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> out(sigs.size());
    for (std::size_t i = 0; i < sigs.size(); ++i)
        out[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), sigs[i]) - sorted.begin());
    return out;
}

inline std::vector<std::size_t> compress(const std::vector<std::size_t>& c) {
    std::vector<std::size_t> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<std::size_t> out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        out[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), c[i]) - sorted.begin());
    return out;
}

inline std::vector<std::size_t> refine(const NetIndex& ix, std::vector<std::size_t> colour) {
    for (;;) {
        std::vector<std::string> sigs(ix.size());
        for (std::size_t i = 0; i < ix.size(); ++i) {
            std::vector<std::string> parts;
            for (const auto& [tag, w, j] : ix.adj[i])
                parts.push_back(std::string(1, tag) + std::to_string(w) + "." + std::to_string(colour[j]));
            std::sort(parts.begin(), parts.end());
            std::string s = std::to_string(colour[i]) + "[";
            for (const auto& p : parts) s += p + ",";
            sigs[i] = s + "]";
        }
        auto next = rank_signatures(sigs);
        if (distinct(next) == distinct(colour)) return next;
        colour = std::move(next);
    }
}

inline std::string serialise(const DecoratedNet& n, const NetIndex& ix, const std::vector<std::size_t>& colour) {
    const std::size_t np = ix.places.size();
    std::vector<std::size_t> order(ix.size());
    for (std::size_t i = 0; i < ix.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return colour[a] < colour[b]; });
    std::map<std::string, std::size_t> pnum, tnum;
    for (std::size_t i : order) {
        if (i < np)
            pnum.emplace(ix.places[i], pnum.size());
        else
            tnum.emplace(ix.transitions[i - np], tnum.size());
    }
    std::vector<std::string> prow(pnum.size()), trow(tnum.size());
    for (const auto& [p, k] : pnum) {
        const Place& pl = n.places.at(p);
        prow[k] = pl.name + "|" + to_string(pl.cap) + "|" + std::to_string(n.marking[p]);
    }
    auto arcs = [&](const Multiset& m) {
        std::vector<std::pair<std::size_t, Count>> v;
        for (const auto& [p, c] : m) v.emplace_back(pnum.at(p), c);
        std::sort(v.begin(), v.end());
        std::string s;
        for (const auto& [i, c] : v) s += std::to_string(i) + "*" + std::to_string(c) + " ";
        return s;
    };
    for (const auto& [t, k] : tnum) {
        const Transition& tr = n.transitions.at(t);
        std::vector<std::size_t> inh;
        for (const auto& p : tr.inhibitors) inh.push_back(pnum.at(p));
        std::sort(inh.begin(), inh.end());
        std::string h;
        for (std::size_t i : inh) h += std::to_string(i) + " ";
        trow[k] = tr.name + "|" + NetIndex::to_label_key(tr.label) + "|" + to_string(tr.renew) + "|" + arcs(tr.pre) +
                  "|" + arcs(tr.post) + "|" + h;
    }
    std::vector<std::pair<std::size_t, std::size_t>> prio;
    for (const auto& [a, b] : n.priority) prio.emplace_back(tnum.at(a), tnum.at(b));
    std::sort(prio.begin(), prio.end());
    std::string out = "P" + std::to_string(prow.size()) + "\n";
    for (const auto& r : prow) out += r + "\n";
    out += "T" + std::to_string(trow.size()) + "\n";
    for (const auto& r : trow) out += r + "\n";
    out += "<";
    for (const auto& [a, b] : prio) out += " " + std::to_string(a) + "," + std::to_string(b);
    return out + "\n";
}

} // namespace detail

/// A string equal for two nets exactly when they are isomorphic (element ids
/// are ignored; names and all other decorations count).
inline std::string canonical_form(const DecoratedNet& n) {
    detail::NetIndex ix(n);
    auto start = detail::refine(ix, detail::rank_signatures(ix.base));
    std::optional<std::string> best;
    auto search = [&](auto&& self, const std::vector<std::size_t>& colour) -> void {
        // first tied class, by colour
        std::map<std::size_t, std::vector<std::size_t>> classes;
        for (std::size_t i = 0; i < colour.size(); ++i) classes[colour[i]].push_back(i);
        const std::vector<std::size_t>* tied = nullptr;
        for (const auto& [c, members] : classes)
            if (members.size() > 1) {
                tied = &members;
                break;
            }
        if (!tied) {
            std::string s = detail::serialise(n, ix, colour);
            if (!best || s < *best) best = std::move(s);
            return;
        }
        for (std::size_t v : *tied) {
            // individualise v: strictly below its old class, order otherwise kept
            std::vector<std::size_t> c(colour.size());
            for (std::size_t i = 0; i < colour.size(); ++i) c[i] = 2 * colour[i] + (i == v ? 0 : 1);
            self(self, detail::refine(ix, detail::compress(c)));
        }
    };
    search(search, start);
    return *best;
}

inline bool net_isomorphic(const DecoratedNet& a, const DecoratedNet& b) {
    if (a.places.size() != b.places.size() || a.transitions.size() != b.transitions.size()) return false;
    return canonical_form(a) == canonical_form(b);
}

/// An explicit isomorphism by backtracking: a bijective morphism whose
/// inverse is also a morphism.
inline std::optional<NetMorphism> find_isomorphism(const NetPtr& a, const NetPtr& b) {
    if (a->places.size() != b->places.size() || a->transitions.size() != b->transitions.size()) return std::nullopt;
    for (auto& f : find_morphisms(a, b, MatchPolicy::injective)) {
        NetMorphism inv{b, a, {}, {}};
        for (const auto& [x, y] : f.places) inv.places[y] = x;
        for (const auto& [x, y] : f.transitions) inv.transitions[y] = x;
        if (check_morphism(inv).empty()) return f;
    }
    return std::nullopt;
}

} // namespace renet
