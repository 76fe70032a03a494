#pragma once

// Token game: enabledness under tokens, capacities, inhibitors and priorities;
// single and parallel firing with label renewal.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "renet/net.hpp"

namespace renet {

/// How the priority condition quantifies over the otherwise-enabled set E.
/// maximum: every t' in E is below t. maximal: nothing in E is strictly above t.
enum class PriorityMode { maximum, maximal };

inline const char* to_string(PriorityMode m) { return m == PriorityMode::maximum ? "maximum" : "maximal"; }

inline std::optional<PriorityMode> parse_priority_mode(std::string_view s) {
    if (s == "maximum") return PriorityMode::maximum;
    if (s == "maximal") return PriorityMode::maximal;
    return std::nullopt;
}

struct FiringOptions {
    PriorityMode mode = PriorityMode::maximum;
    /// Check M + post(t) <= cap instead of the follower marking.
    bool strict_capacity = false;
};

enum class Condition { token, capacity, inhibitor, priority };

inline const char* to_string(Condition c) {
    switch (c) {
    case Condition::token: return "token";
    case Condition::capacity: return "capacity";
    case Condition::inhibitor: return "inhibitor";
    case Condition::priority: return "priority";
    }
    return "?";
}

struct Enablement {
    std::optional<Condition> failed; ///< first failing condition, empty when enabled
    std::string detail;

    bool enabled() const { return !failed; }
    explicit operator bool() const { return enabled(); }
};

namespace detail {

// Conditions (a)-(c) for a multiset of transition occurrences.
inline Enablement local_conditions(const DecoratedNet& n, const Multiset& pre, const Multiset& post,
                                   const std::set<PlaceId>& inhibitors, bool strict_capacity) {
    for (const auto& [p, k] : pre)
        if (n.marking[p] < k)
            return {Condition::token, "place " + p + " holds " + std::to_string(n.marking[p]) + ", needs " +
                                          std::to_string(k)};
    for (const auto& [p, k] : post) {
        const Count after = strict_capacity ? n.marking[p] + k : n.marking[p] - pre[p] + k;
        const Capacity& cap = n.place(p).cap;
        if (!cap.admits(after))
            return {Condition::capacity,
                    "place " + p + " would hold " + std::to_string(after) + " > capacity " + to_string(cap)};
    }
    for (const auto& p : inhibitors)
        if (n.marking[p] != 0)
            return {Condition::inhibitor, "inhibitor place " + p + " holds " + std::to_string(n.marking[p])};
    return {};
}

inline bool locally_enabled(const DecoratedNet& n, const Transition& t, bool strict_capacity) {
    return local_conditions(n, t.pre, t.post, t.inhibitors, strict_capacity).enabled();
}

inline Enablement priority_condition(const DecoratedNet& n, const TransitionId& t,
                                     const std::vector<TransitionId>& locally, PriorityMode mode) {
    for (const auto& u : locally) {
        if (u == t) continue;
        if (mode == PriorityMode::maximum && !n.priority_less(u, t))
            return {Condition::priority, "enabled transition " + u + " is not below " + t};
        if (mode == PriorityMode::maximal && n.priority_less(t, u))
            return {Condition::priority, "enabled transition " + u + " has higher priority than " + t};
    }
    return {};
}

inline std::vector<TransitionId> locally_enabled_set(const DecoratedNet& n, bool strict_capacity) {
    std::vector<TransitionId> out;
    for (const auto& [id, t] : n.transitions)
        if (locally_enabled(n, t, strict_capacity)) out.push_back(id);
    return out;
}

} // namespace detail

/// Enabledness of t with the first failing condition named.
inline Enablement check_enabled(const DecoratedNet& n, const TransitionId& t, const FiringOptions& opts = {}) {
    const Transition& tr = n.transition(t);
    Enablement local = detail::local_conditions(n, tr.pre, tr.post, tr.inhibitors, opts.strict_capacity);
    if (!local) return local;
    return detail::priority_condition(n, t, detail::locally_enabled_set(n, opts.strict_capacity), opts.mode);
}

inline bool enabled(const DecoratedNet& n, const TransitionId& t, const FiringOptions& opts = {}) {
    return check_enabled(n, t, opts).enabled();
}

inline std::vector<TransitionId> enabled_set(const DecoratedNet& n, const FiringOptions& opts = {}) {
    const auto locally = detail::locally_enabled_set(n, opts.strict_capacity);
    std::vector<TransitionId> out;
    for (const auto& t : locally)
        if (detail::priority_condition(n, t, locally, opts.mode)) out.push_back(t);
    return out;
}

inline DecoratedNet fire(const DecoratedNet& n, const TransitionId& t, const FiringOptions& opts = {}) {
    Enablement e = check_enabled(n, t, opts);
    if (!e) throw NotEnabled("transition " + t + " not enabled (" + to_string(*e.failed) + "): " + e.detail);
    const Transition& tr = n.transition(t);
    DecoratedNet out = n;
    out.marking = n.marking - tr.pre + tr.post;
    out.transitions[t].label = renew(tr.renew, tr.label);
    return out;
}

/// Multiplicities k_t >= 1 per transition.
using TransitionVector = std::map<TransitionId, Count>;

/// Fires every transition of v concurrently with its multiplicity. Tokens and
/// capacity are checked for the summed pre/post; inhibitor and priority
/// conditions are checked per transition against the current marking.
inline DecoratedNet fire_parallel(const DecoratedNet& n, const TransitionVector& v, const FiringOptions& opts = {}) {
    if (v.empty()) throw NotEnabledParallel("transition vector is empty");
    Multiset pre, post;
    for (const auto& [t, k] : v) {
        const Transition& tr = n.transition(t);
        if (k == 0) throw NotEnabledParallel("multiplicity of " + t + " must be positive");
        pre = pre + tr.pre.scaled(k);
        post = post + tr.post.scaled(k);
    }
    Enablement sum = detail::local_conditions(n, pre, post, {}, opts.strict_capacity);
    if (!sum)
        throw NotEnabledParallel(std::string("vector not enabled (") + to_string(*sum.failed) + "): " + sum.detail);
    const auto locally = detail::locally_enabled_set(n, opts.strict_capacity);
    for (const auto& [t, k] : v) {
        const Transition& tr = n.transition(t);
        Enablement inh = detail::local_conditions(n, {}, {}, tr.inhibitors, false);
        if (!inh)
            throw NotEnabledParallel("transition " + t + " not enabled (inhibitor): " + inh.detail);
        Enablement prio = detail::priority_condition(n, t, locally, opts.mode);
        if (!prio) throw NotEnabledParallel("transition " + t + " not enabled (priority): " + prio.detail);
    }
    DecoratedNet out = n;
    out.marking = n.marking - pre + post;
    for (const auto& [t, k] : v) {
        Transition& tr = out.transitions[t];
        tr.label = renew_times(tr.renew, tr.label, k);
    }
    return out;
}

} // namespace renet
