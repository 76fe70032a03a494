#pragma once

// Double-pushout transformation of decorated nets: gluing check, pushout
// complement, net pushouts along strict morphisms, and rule application.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "renet/match.hpp"
#include "renet/poset_construct.hpp"
#include "renet/poset_oracle.hpp"

namespace renet {

enum class GluingKind { identification, dangling, token, priority };

inline const char* to_string(GluingKind k) {
    switch (k) {
    case GluingKind::identification: return "identification";
    case GluingKind::dangling: return "dangling";
    case GluingKind::token: return "token";
    case GluingKind::priority: return "priority";
    }
    return "?";
}

struct GluingViolation {
    GluingKind kind;
    std::string element; ///< host element the violation is about
    std::string detail;
};

struct GluingReport {
    std::vector<GluingViolation> violations;

    bool ok() const { return violations.empty(); }
    bool has(GluingKind k) const {
        return std::any_of(violations.begin(), violations.end(), [k](const auto& v) { return v.kind == k; });
    }
    std::string summary() const {
        std::string out;
        for (const auto& v : violations) {
            if (!out.empty()) out += "; ";
            out += std::string(to_string(v.kind)) + " at " + v.element + ": " + v.detail;
        }
        return out;
    }
};

namespace detail {

template <class Map>
std::set<typename Map::mapped_type> image_of(const Map& m) {
    std::set<typename Map::mapped_type> out;
    for (const auto& [a, b] : m) out.insert(b);
    return out;
}

struct Deleted {
    std::set<PlaceId> places;           // in L
    std::set<TransitionId> transitions; // in L
};

inline Deleted deleted_part(const Rule& rule) {
    Deleted d;
    auto kp = image_of(rule.l.places);
    auto kt = image_of(rule.l.transitions);
    for (const auto& [p, pl] : rule.L->places)
        if (!kp.count(p)) d.places.insert(p);
    for (const auto& [t, tr] : rule.L->transitions)
        if (!kt.count(t)) d.transitions.insert(t);
    return d;
}

} // namespace detail

/// Applicability of `rule` at match m: L -> N. The report is empty exactly
/// when the pushout complement exists.
inline GluingReport check_gluing(const Rule& rule, const NetMorphism& m) {
    require_morphism(m, "match");
    if (m.source != rule.L && !(*m.source == *rule.L)) throw InvalidMorphism("match does not start at the rule's L");
    GluingReport rep;
    const DecoratedNet& L = *rule.L;
    const DecoratedNet& N = *m.target;
    const auto del = detail::deleted_part(rule);

    // identification
    for (const auto& x : del.places)
        for (const auto& [y, pl] : L.places)
            if (x != y && m.places.at(x) == m.places.at(y))
                rep.violations.push_back({GluingKind::identification, m.places.at(x),
                                          "deleted place " + x + " identified with " + y});
    for (const auto& x : del.transitions)
        for (const auto& [y, tr] : L.transitions)
            if (x != y && m.transitions.at(x) == m.transitions.at(y))
                rep.violations.push_back({GluingKind::identification, m.transitions.at(x),
                                          "deleted transition " + x + " identified with " + y});

    // dangling: arcs (pre, post, inhibitor) at a deleted place from unmatched transitions
    auto matched_t = detail::image_of(m.transitions);
    for (const auto& x : del.places) {
        const PlaceId& q = m.places.at(x);
        for (const auto& [u, tr] : N.transitions) {
            if (matched_t.count(u)) continue;
            if (tr.pre.contains(q) || tr.post.contains(q) || tr.inhibitors.count(q))
                rep.violations.push_back({GluingKind::dangling, q, "transition " + u + " keeps an arc to the deleted place"});
        }
    }

    // token exactness on deleted places
    for (const auto& x : del.places) {
        const PlaceId& q = m.places.at(x);
        if (N.marking[q] != L.marking[x])
            rep.violations.push_back({GluingKind::token, q,
                                      std::to_string(N.marking[q]) + " tokens, rule deletes " +
                                          std::to_string(L.marking[x])});
    }

    // priority: the host order must be generated by the preserved part and the
    // image of L's order, otherwise no pushout complement exists
    std::set<TransitionId> deleted_t;
    for (const auto& x : del.transitions) deleted_t.insert(m.transitions.at(x));
    const auto ids = N.transition_ids();
    std::map<TransitionId, std::size_t> idx;
    for (std::size_t i = 0; i < ids.size(); ++i) idx[ids[i]] = i;
    const std::size_t n = ids.size();
    detail::Matrix gen(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) gen[i * n + i] = 1;
    for (const auto& [a, b] : N.priority)
        if (!deleted_t.count(a) && !deleted_t.count(b)) gen[idx[a] * n + idx[b]] = 1;
    for (const auto& [a, b] : L.priority) gen[idx[m.transitions.at(a)] * n + idx[m.transitions.at(b)]] = 1;
    detail::transitive_close(n, gen);
    for (const auto& [a, b] : N.priority)
        if (!gen[idx[a] * n + idx[b]])
            rep.violations.push_back({GluingKind::priority, a + "<" + b,
                                      "priority pair is not generated by the context and the matched rule"});
    return rep;
}

/// Net pushout of X <-a- K -b-> Y along a strict morphism a. Y keeps its ids;
/// elements of X outside a(K) get ids from `fresh` (made unique against Y).
struct NetPushout {
    NetPtr apex;
    NetMorphism from_x; ///< X -> apex
    NetMorphism from_y; ///< Y -> apex
};

template <class Fresh>
NetPushout net_pushout(const NetMorphism& a, const NetMorphism& b, Fresh&& fresh) {
    if (a.source != b.source && !(*a.source == *b.source)) throw InvalidMorphism("pushout legs have different sources");
    if (!a.injective()) throw InvalidMorphism("net pushout needs an injective leg");
    const DecoratedNet& X = *a.target;
    const DecoratedNet& Y = *b.target;

    DecoratedNet H;
    H.places = Y.places;
    H.transitions = Y.transitions;
    H.marking = Y.marking;

    std::map<PlaceId, PlaceId> kp_of_xp;
    for (const auto& [k, x] : a.places) kp_of_xp[x] = k;
    std::map<TransitionId, TransitionId> kt_of_xt;
    for (const auto& [k, x] : a.transitions) kt_of_xt[x] = k;

    auto unique = [&](std::string id, bool place) {
        auto taken = [&](const std::string& s) { return place ? H.has_place(s) : H.has_transition(s); };
        while (taken(id)) id += "'";
        return id;
    };

    NetMorphism fx{a.target, nullptr, {}, {}};
    for (const auto& [x, pl] : X.places) {
        auto it = kp_of_xp.find(x);
        if (it != kp_of_xp.end()) {
            const PlaceId& y = b.places.at(it->second);
            fx.places[x] = y;
            H.marking.set(y, std::max(H.marking[y], X.marking[x]));
        } else {
            PlaceId id = unique(fresh(x), true);
            H.places[id] = pl;
            H.marking.set(id, X.marking[x]);
            fx.places[x] = id;
        }
    }
    auto to_h = [&](const PlaceId& x) { return fx.places.at(x); };
    for (const auto& [x, tr] : X.transitions) {
        auto it = kt_of_xt.find(x);
        if (it != kt_of_xt.end()) {
            fx.transitions[x] = b.transitions.at(it->second);
            continue;
        }
        TransitionId id = unique(fresh(x), false);
        Transition t = tr;
        t.pre = tr.pre.mapped(to_h);
        t.post = tr.post.mapped(to_h);
        t.inhibitors.clear();
        for (const auto& p : tr.inhibitors) t.inhibitors.insert(to_h(p));
        H.transitions[id] = std::move(t);
        fx.transitions[x] = id;
    }

    // Priority order from the poset pushout of the transition components.
    MonotoneMap at = transition_map(a);
    MonotoneMap bt = transition_map(b);
    PushoutResult po = pushout(at, bt);
    const std::size_t k = po.apex.size();
    if (k != H.transitions.size())
        throw ComplementNotPushout("transition pushout collapsed elements; the leg is not in M");
    std::vector<TransitionId> id_of(k);
    for (std::size_t i = 0; i < at.target().size(); ++i)
        id_of[po.g_prime(i)] = fx.transitions.at(at.target().element(i));
    for (std::size_t j = 0; j < bt.target().size(); ++j) id_of[po.f_prime(j)] = bt.target().element(j);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (i != j && po.apex.leq(i, j)) H.priority.emplace(id_of[i], id_of[j]);

    NetPushout out;
    out.apex = share(std::move(H));
    fx.target = out.apex;
    out.from_x = std::move(fx);
    out.from_y = NetMorphism{b.target, out.apex, {}, {}};
    for (const auto& [y, pl] : Y.places) out.from_y.places[y] = y;
    for (const auto& [y, tr] : Y.transitions) out.from_y.transitions[y] = y;
    return out;
}

/// Commuting square K -a-> X -x-> Z, K -b-> Y -y-> Z.
struct NetSquare {
    NetMorphism a, b, x, y;
};

struct SquareCheck {
    bool morphisms = false;    ///< all four legs are valid morphisms
    bool commutes = false;
    bool structural = false;   ///< comparison from the constructed pushout is an isomorphism
    bool places_oracle = true; ///< universal property of the place component (sets)
    bool transitions_oracle = true;
    bool oracles_run = false;
    std::string failure;

    bool ok() const { return morphisms && commutes && structural && places_oracle && transitions_oracle; }
};

/// Checks that a square of nets is a pushout. Structurally, the comparison
/// map from the constructed pushout must be an isomorphism; with
/// `run_oracles`, both components are also decided by the universal-property
/// oracle (test posets up to size 2 suffice because the 2-chain cogenerates).
inline SquareCheck verify_net_pushout(const NetSquare& sq, bool run_oracles) {
    SquareCheck c;
    for (const auto* f : {&sq.a, &sq.b, &sq.x, &sq.y}) {
        auto v = check_morphism(*f);
        if (!v.empty()) {
            c.failure = "leg is not a morphism: " + to_string(v.front());
            return c;
        }
    }
    c.morphisms = true;
    c.commutes = true;
    for (const auto& [k, p] : sq.a.places)
        c.commutes &= sq.x.places.at(p) == sq.y.places.at(sq.b.places.at(k));
    for (const auto& [k, t] : sq.a.transitions)
        c.commutes &= sq.x.transitions.at(t) == sq.y.transitions.at(sq.b.transitions.at(k));
    if (!c.commutes) {
        c.failure = "square does not commute";
        return c;
    }

    try {
        NetPushout po = net_pushout(sq.a, sq.b, [](const std::string& id) { return "#" + id; });
        // comparison u: apex -> Z
        std::map<PlaceId, PlaceId> up;
        std::map<TransitionId, TransitionId> ut;
        for (const auto& [x, h] : po.from_x.places) up[h] = sq.x.places.at(x);
        for (const auto& [y, h] : po.from_y.places) up[h] = sq.y.places.at(y);
        for (const auto& [x, h] : po.from_x.transitions) ut[h] = sq.x.transitions.at(x);
        for (const auto& [y, h] : po.from_y.transitions) ut[h] = sq.y.transitions.at(y);
        const DecoratedNet& P = *po.apex;
        const DecoratedNet& Z = *sq.x.target;
        DecoratedNet renamed;
        bool bijective = detail::image_of(up).size() == up.size() && up.size() == Z.places.size() &&
                         detail::image_of(ut).size() == ut.size() && ut.size() == Z.transitions.size();
        if (bijective) {
            auto rp = [&](const PlaceId& p) { return up.at(p); };
            for (const auto& [p, pl] : P.places) renamed.places[rp(p)] = pl;
            for (const auto& [p, n] : P.marking) renamed.marking.set(rp(p), n);
            for (const auto& [t, tr] : P.transitions) {
                Transition nt = tr;
                nt.pre = tr.pre.mapped(rp);
                nt.post = tr.post.mapped(rp);
                nt.inhibitors.clear();
                for (const auto& p : tr.inhibitors) nt.inhibitors.insert(rp(p));
                renamed.transitions[ut.at(t)] = std::move(nt);
            }
            for (const auto& [s, t] : P.priority) renamed.priority.emplace(ut.at(s), ut.at(t));
        }
        c.structural = bijective && renamed == Z;
        if (!c.structural) c.failure = bijective ? "comparison map is not an isomorphism of nets"
                                                 : "comparison map is not bijective";
    } catch (const Error& e) {
        c.failure = std::string("pushout construction failed: ") + e.what();
        return c;
    }

    if (run_oracles) {
        c.oracles_run = true;
        const OracleOptions opts{2};
        c.places_oracle =
            verify_pushout({place_map(sq.a), place_map(sq.b), place_map(sq.x), place_map(sq.y)}, opts).holds;
        c.transitions_oracle =
            verify_pushout({transition_map(sq.a), transition_map(sq.b), transition_map(sq.x), transition_map(sq.y)},
                           opts)
                .holds;
        if (!c.places_oracle) c.failure = "place component fails the pushout oracle";
        if (!c.transitions_oracle) c.failure = "transition component fails the pushout oracle";
    }
    return c;
}

struct Complement {
    NetPtr D;
    NetMorphism k; ///< K -> D
    NetMorphism d; ///< D -> N
    SquareCheck square;
};

/// D = N without the image of L minus l(K); checks the gluing condition first
/// and the resulting square afterwards.
inline Complement pushout_complement(const Rule& rule, const NetMorphism& m, bool run_oracles = false) {
    GluingReport rep = check_gluing(rule, m);
    if (!rep.ok()) throw GluingViolated("rule '" + rule.name + "' not applicable: " + rep.summary());
    const DecoratedNet& N = *m.target;
    const auto del = detail::deleted_part(rule);
    std::set<PlaceId> gone_p;
    std::set<TransitionId> gone_t;
    for (const auto& x : del.places) gone_p.insert(m.places.at(x));
    for (const auto& x : del.transitions) gone_t.insert(m.transitions.at(x));

    DecoratedNet D;
    for (const auto& [p, pl] : N.places)
        if (!gone_p.count(p)) {
            D.places[p] = pl;
            D.marking.set(p, N.marking[p]);
        }
    for (const auto& [t, tr] : N.transitions)
        if (!gone_t.count(t)) D.transitions[t] = tr;
    for (const auto& [a, b] : N.priority)
        if (!gone_t.count(a) && !gone_t.count(b)) D.priority.emplace(a, b);
    if (auto v = validate_net(D); !v.empty())
        throw ComplementNotPushout("context net is invalid: " + to_string(v.front()));

    Complement c;
    c.D = share(std::move(D));
    c.k = NetMorphism{rule.K, c.D, {}, {}};
    for (const auto& [kp, lp] : rule.l.places) c.k.places[kp] = m.places.at(lp);
    for (const auto& [kt, lt] : rule.l.transitions) c.k.transitions[kt] = m.transitions.at(lt);
    c.d = NetMorphism{c.D, m.target, {}, {}};
    for (const auto& [p, pl] : c.D->places) c.d.places[p] = p;
    for (const auto& [t, tr] : c.D->transitions) c.d.transitions[t] = t;

    c.square = verify_net_pushout({rule.l, c.k, m, c.d}, run_oracles);
    if (!c.square.ok()) throw ComplementNotPushout("rule '" + rule.name + "': square (1) " + c.square.failure);
    return c;
}

struct ApplyOptions {
    std::size_t application_index = 0;
    bool verify_pushouts = false;
};

/// Both squares of a direct transformation N => H.
struct Derivation {
    NetMorphism match;   ///< L -> N
    Complement context;  ///< K -> D -> N
    NetPtr H;
    NetMorphism comatch; ///< R -> H
    NetMorphism h;       ///< D -> H
    SquareCheck left, right;
};

/// Fresh ids for elements created by a rule: "<rule>@<index>.<id in R>".
inline std::string fresh_id(const std::string& rule, std::size_t index, const std::string& id) {
    return rule + "@" + std::to_string(index) + "." + id;
}

inline Derivation apply(const Rule& rule, const NetMorphism& m, const ApplyOptions& opts = {}) {
    Derivation out;
    out.match = m;
    out.context = pushout_complement(rule, m, opts.verify_pushouts);
    NetPushout po = net_pushout(rule.r, out.context.k, [&](const std::string& id) {
        return fresh_id(rule.name, opts.application_index, id);
    });
    if (auto v = validate_net(*po.apex); !v.empty())
        throw ComplementNotPushout("result net is invalid: " + to_string(v.front()));
    out.H = po.apex;
    out.comatch = std::move(po.from_x);
    out.h = std::move(po.from_y);
    out.left = out.context.square;
    out.right = verify_net_pushout({rule.r, out.context.k, out.comatch, out.h}, opts.verify_pushouts);
    if (!out.right.ok()) throw ComplementNotPushout("square (2): " + out.right.failure);
    return out;
}

} // namespace renet
