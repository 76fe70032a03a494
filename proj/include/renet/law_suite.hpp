#pragma once

// Randomised and exhaustive checks of the poset constructions against the
// universal-property oracles. Used by `renet check` and the acceptance run.

#include <cstdint>
#include <string>
#include <vector>

#include "renet/poset_construct.hpp"
#include "renet/poset_gen.hpp"
#include "renet/poset_oracle.hpp"

namespace renet {

struct LawReport {
    std::string law;
    std::size_t checked = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
    void fail(std::string msg) {
        if (failures.size() < 20) failures.push_back(std::move(msg));
        else if (failures.size() == 20) failures.push_back("...");
    }
};

struct LawOptions {
    std::size_t max_size = 4;
    std::size_t samples = 200;
    std::uint64_t seed = 1;
    /// Spans and cospans are also enumerated exhaustively up to this size.
    std::size_t exhaustive_size = 2;
};

namespace detail {

inline Poset sized_poset(Rng& rng, std::size_t max_size, std::size_t min_size, const std::string& prefix) {
    const std::size_t n = min_size + pick(rng, max_size - min_size + 1);
    return random_poset(rng, n, 0.2 + 0.1 * static_cast<double>(pick(rng, 5)), prefix);
}

inline void check_span(LawReport& r, const MonotoneMap& f, const MonotoneMap& g, const std::string& tag) {
    ++r.checked;
    try {
        auto po = pushout(f, g);
        auto rep = verify_pushout({f, g, po.g_prime, po.f_prime});
        if (!rep.holds) return r.fail(tag + ": pushout rejected by oracle: " + rep.failure);
        if (is_strict_order_embedding(f)) {
            if (!is_strict_order_embedding(po.f_prime)) r.fail(tag + ": M not stable under pushout");
            if (po.apex.elements() != set_pushout_carrier(f, g)) r.fail(tag + ": carrier differs from set pushout");
        }
    } catch (const Error& e) {
        r.fail(tag + ": " + e.what());
    }
}

inline void check_cospan(LawReport& r, const MonotoneMap& g, const MonotoneMap& f, const std::string& tag) {
    ++r.checked;
    try {
        auto pb = pullback(g, f);
        auto rep = verify_pullback({g, f, pb.f_prime, pb.g_prime});
        if (!rep.holds) return r.fail(tag + ": pullback rejected by oracle: " + rep.failure);
        if (is_strict_order_embedding(f) && !is_strict_order_embedding(pb.f_prime))
            r.fail(tag + ": M not stable under pullback");
    } catch (const Error& e) {
        r.fail(tag + ": " + e.what());
    }
}

} // namespace detail

/// Pushouts and pullbacks: exhaustive small cases plus `samples` random spans
/// and `samples` random cospans with posets of size <= max_size. Half of the
/// spans have a left leg in M.
inline std::vector<LawReport> check_poset_laws(const LawOptions& o) {
    LawReport spans{"pushout", 0, {}}, cospans{"pullback", 0, {}};
    const std::size_t ex = std::min(o.exhaustive_size, o.max_size);
    for_each_span_up_to_iso(ex, [&](const Span& s) { detail::check_span(spans, s.left, s.right, "exhaustive span"); });
    for_each_cospan_up_to_iso(ex, [&](const Cospan& c) {
        detail::check_cospan(cospans, c.left, c.right, "exhaustive cospan");
    });
    Rng rng(o.seed);
    for (std::size_t i = 0; i < o.samples; ++i) {
        const std::string tag = "sample " + std::to_string(i);
        Poset p0 = detail::sized_poset(rng, o.max_size, 0, "a");
        MonotoneMap f = MonotoneMap::identity(p0);
        if (i % 2 == 0 && p0.size() < o.max_size) {
            f = random_strict_embedding(rng, p0, pick(rng, o.max_size - p0.size() + 1), "b");
        } else {
            f = *random_monotone_map(rng, p0, detail::sized_poset(rng, o.max_size, 1, "b"));
        }
        auto g = *random_monotone_map(rng, p0, detail::sized_poset(rng, o.max_size, 1, "c"));
        detail::check_span(spans, f, g, tag);

        Poset q0 = detail::sized_poset(rng, o.max_size, 1, "z");
        MonotoneMap cf = MonotoneMap::identity(q0);
        if (i % 2 == 0) {
            Poset q2 = detail::sized_poset(rng, std::max<std::size_t>(1, o.max_size / 2), 1, "b");
            cf = random_strict_embedding(rng, q2, pick(rng, o.max_size - std::min(o.max_size, q2.size()) + 1), "z");
        } else {
            cf = *random_monotone_map(rng, detail::sized_poset(rng, o.max_size, 0, "b"), q0);
        }
        auto cg = *random_monotone_map(rng, detail::sized_poset(rng, o.max_size, 0, "a"), cf.target());
        detail::check_cospan(cospans, cg, cf, tag);
    }
    return {spans, cospans};
}

/// Hom-set bijection of the free/forgetful pair for every set of size
/// <= max_size against every poset of size <= max_size (up to iso).
inline LawReport check_adjunction_laws(const LawOptions& o) {
    LawReport r{"adjunction", 0, {}};
    for (std::size_t s = 0; s <= o.max_size; ++s) {
        std::vector<Element> set;
        for (std::size_t i = 0; i < s; ++i) set.push_back("s" + std::to_string(i));
        for (std::size_t k = 0; k <= o.max_size; ++k)
            for (const Poset& p : posets_up_to_iso(k)) {
                ++r.checked;
                auto a = check_adjunction(set, p);
                if (!a.holds)
                    r.fail("|S|=" + std::to_string(s) + ", P=" + to_string(p) + ": " + std::to_string(a.monotone_maps) +
                           " monotone maps vs " + std::to_string(a.set_maps) + " functions");
            }
    }
    return r;
}

/// Van Kampen cubes. Bottoms are random pushouts along M; tops are pulled
/// back along d: D' -> D, so back and front faces are pullbacks and the top
/// must come out as a pushout. Each cube is also checked with one extra top
/// element, where neither side may hold.
///
/// Two families: d a random convex inclusion (all vertical maps in M), and d
/// an arbitrary monotone map. The second family has counterexamples: with
/// D = {b < [a=c1] < c0} and d sending d2 < d1 to b and c0, the pulled-back
/// top lacks d2 < d1, so it is not a pushout although both fronts are
/// pullbacks. Its report lists such cubes as failures.
inline std::vector<LawReport> check_vk_laws(const LawOptions& o) {
    LawReport in_m{"van-kampen (vertical maps in M)", 0, {}};
    LawReport any{"van-kampen (arbitrary vertical map)", 0, {}};
    Rng rng(o.seed);
    const std::size_t base = std::max<std::size_t>(1, o.max_size / 2);
    for (std::size_t i = 0; i < 2 * o.samples; ++i) {
        LawReport& r = i % 2 == 0 ? in_m : any;
        const std::string tag = "cube " + std::to_string(i / 2);
        try {
            Poset a = detail::sized_poset(rng, base, 1, "a");
            auto m = random_strict_embedding(rng, a, pick(rng, base + 1), "b");
            auto f = *random_monotone_map(rng, a, detail::sized_poset(rng, base, 1, "c"));
            auto po = pushout(m, f);
            auto d = i % 2 == 0 ? random_convex_inclusion(rng, po.apex)
                                : *random_monotone_map(rng, detail::sized_poset(rng, o.max_size, 1, "d"), po.apex);
            Cube cube = pullback_cube(m, f, po.g_prime, po.f_prime, d);
            ++r.checked;
            auto v = check_vk_square(cube);
            if (!v.fronts_are_pullbacks) r.fail(tag + ": fronts of a pulled-back cube are not pullbacks");
            else if (!v.top_is_pushout)
                r.fail(tag + ": fronts are pullbacks but the top is not a pushout; D=" + to_string(po.apex) +
                       ", D'=" + to_string(d.source()));
            ++r.checked;
            auto w = check_vk_square(enlarge_top(cube, pick(rng, po.apex.size())));
            if (w.top_is_pushout || w.fronts_are_pullbacks)
                r.fail(tag + " (enlarged top): expected neither a pushout top nor pullback fronts");
        } catch (const Error& e) {
            r.fail(tag + ": " + e.what());
        }
    }
    return {in_m, any};
}

} // namespace renet
