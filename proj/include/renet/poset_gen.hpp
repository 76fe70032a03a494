#pragma once

// Instance generators for law checking: random posets and maps, exhaustive
// span/cospan families up to isomorphism, and van Kampen cubes.
//
// Randomness comes from std::mt19937_64; choices use `rng() % n` so results
// do not depend on the standard library's distribution implementations.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "renet/poset.hpp"
#include "renet/poset_construct.hpp"
#include "renet/poset_oracle.hpp"

namespace renet {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

/// Random poset on labels prefix0..prefix{n-1}: a random linear order with
/// each forward pair kept with probability `density`, then closed.
inline Poset random_poset(Rng& rng, std::size_t n, double density = 0.35, const std::string& prefix = "e") {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[pick(rng, i)]);
    std::vector<Element> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = prefix + std::to_string(i);
    const auto threshold = static_cast<std::uint64_t>(density * 1000.0);
    std::vector<ElementPair> gens;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (rng() % 1000 < threshold) gens.emplace_back(labels[order[i]], labels[order[j]]);
    return Poset::closure(labels, gens);
}

/// Random monotone map; std::nullopt only when none exists (empty target).
/// Elements are assigned along a linear extension, each to a random element
/// above the images of everything already assigned below it.
inline std::optional<MonotoneMap> random_monotone_map(Rng& rng, const Poset& source, const Poset& target) {
    const std::size_t n = source.size();
    if (n == 0) return MonotoneMap(source, target, {});
    if (target.empty()) return std::nullopt;
    std::vector<std::size_t> ext(n);
    std::iota(ext.begin(), ext.end(), 0);
    std::stable_sort(ext.begin(), ext.end(), [&](std::size_t a, std::size_t b) {
        std::size_t da = 0, db = 0;
        for (std::size_t k = 0; k < n; ++k) {
            da += source.less(k, a);
            db += source.less(k, b);
        }
        return da < db;
    });
    for (int attempt = 0; attempt < 16; ++attempt) {
        std::vector<std::size_t> image(n, 0);
        std::vector<std::uint8_t> done(n, 0);
        bool stuck = false;
        for (std::size_t x : ext) {
            std::vector<std::size_t> options;
            for (std::size_t v = 0; v < target.size(); ++v) {
                bool ok = true;
                for (std::size_t y = 0; y < n && ok; ++y)
                    if (done[y] && source.leq(y, x) && !target.leq(image[y], v)) ok = false;
                if (ok) options.push_back(v);
            }
            if (options.empty()) {
                stuck = true;
                break;
            }
            image[x] = options[pick(rng, options.size())];
            done[x] = 1;
        }
        if (!stuck && is_monotone(source, target, image)) return MonotoneMap(source, target, std::move(image));
    }
    return MonotoneMap(source, target, std::vector<std::size_t>(n, pick(rng, target.size())));
}

/// Random member of M out of `source`: an inclusion into a poset with
/// `extra` new elements. Falls back to isolated new elements after repeated
/// rejection, which is always a strict order embedding.
inline MonotoneMap random_strict_embedding(Rng& rng, const Poset& source, std::size_t extra,
                                           const std::string& prefix = "n") {
    std::vector<Element> carrier = source.elements();
    std::vector<Element> fresh;
    for (std::size_t i = 0; i < extra; ++i) fresh.push_back(prefix + std::to_string(i));
    carrier.insert(carrier.end(), fresh.begin(), fresh.end());
    auto inclusion = [&](const Poset& target) {
        std::vector<std::size_t> image(source.size());
        for (std::size_t i = 0; i < source.size(); ++i) image[i] = *target.index_of(source.element(i));
        return MonotoneMap(source, target, std::move(image));
    };
    for (int attempt = 0; attempt < 32; ++attempt) {
        std::vector<ElementPair> gens = source.covering_pairs();
        for (const auto& e : fresh)
            for (const auto& other : carrier) {
                if (other == e) continue;
                if (rng() % 4 == 0) gens.emplace_back(e, other);
            }
        try {
            Poset target = Poset::closure(carrier, gens);
            auto inc = inclusion(target);
            if (is_strict_order_embedding(inc)) return inc;
        } catch (const AntisymmetryViolation&) {
        }
    }
    std::vector<ElementPair> gens = source.covering_pairs();
    return inclusion(Poset::closure(carrier, gens));
}

/// Random member of M into `target`: the inclusion of a convex subset with
/// the induced order. Each element is kept with probability 2/3 before the
/// convex closure is taken.
inline MonotoneMap random_convex_inclusion(Rng& rng, const Poset& target) {
    const std::size_t n = target.size();
    std::vector<std::uint8_t> keep(n);
    for (auto& k : keep) k = rng() % 3 != 0;
    for (std::size_t z = 0; z < n; ++z)
        for (std::size_t x = 0; x < n && !keep[z]; ++x)
            for (std::size_t y = 0; y < n; ++y)
                if (keep[x] && keep[y] && target.leq(x, z) && target.leq(z, y)) {
                    keep[z] = 1;
                    break;
                }
    std::vector<Element> carrier;
    std::vector<std::size_t> image;
    for (std::size_t i = 0; i < n; ++i)
        if (keep[i]) carrier.push_back(target.element(i));
    std::vector<ElementPair> gens;
    for (const auto& [a, b] : target.pairs())
        if (keep[*target.index_of(a)] && keep[*target.index_of(b)]) gens.emplace_back(a, b);
    Poset source = Poset::closure(carrier, gens);
    for (std::size_t i = 0; i < source.size(); ++i) image.push_back(*target.index_of(source.element(i)));
    return MonotoneMap(source, target, std::move(image));
}

namespace detail {

inline std::vector<std::vector<std::size_t>> automorphisms(const Poset& p) {
    const std::size_t n = p.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<std::size_t>> out;
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j)
                if (p.leq(i, j) != p.leq(perm[i], perm[j])) ok = false;
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// True when (left, right) is the lexicographically least member of its orbit
// under relabelling the shared end by s0 and the two outer ends by s1, s2.
// `shared_is_source` selects span (maps out of the shared end) or cospan.
inline bool is_orbit_minimum(const std::vector<std::size_t>& left, const std::vector<std::size_t>& right,
                             const std::vector<std::vector<std::size_t>>& aut_shared,
                             const std::vector<std::vector<std::size_t>>& aut_left,
                             const std::vector<std::vector<std::size_t>>& aut_right, bool shared_is_source) {
    const auto key = std::make_pair(left, right);
    for (const auto& s0 : aut_shared)
        for (const auto& s1 : aut_left)
            for (const auto& s2 : aut_right) {
                std::vector<std::size_t> l(left.size()), r(right.size());
                if (shared_is_source) {
                    for (std::size_t x = 0; x < left.size(); ++x) l[s0[x]] = s1[left[x]];
                    for (std::size_t x = 0; x < right.size(); ++x) r[s0[x]] = s2[right[x]];
                } else {
                    for (std::size_t x = 0; x < left.size(); ++x) l[s1[x]] = s0[left[x]];
                    for (std::size_t x = 0; x < right.size(); ++x) r[s2[x]] = s0[right[x]];
                }
                if (std::make_pair(l, r) < key) return false;
            }
    return true;
}

} // namespace detail

/// Calls `visit` once per isomorphism class of spans P1 <- P0 -> P2 with all
/// three posets of size <= max_size.
inline void for_each_span_up_to_iso(std::size_t max_size, const std::function<void(const Span&)>& visit) {
    std::vector<const Poset*> all;
    for (std::size_t k = 0; k <= max_size; ++k)
        for (const Poset& p : posets_up_to_iso(k)) all.push_back(&p);
    std::vector<std::vector<std::vector<std::size_t>>> auts;
    for (const Poset* p : all) auts.push_back(detail::automorphisms(*p));

    for (std::size_t i0 = 0; i0 < all.size(); ++i0)
        for (std::size_t i1 = 0; i1 < all.size(); ++i1) {
            auto fs = all_monotone_maps(*all[i0], *all[i1]);
            if (fs.empty()) continue;
            for (std::size_t i2 = 0; i2 < all.size(); ++i2) {
                auto gs = all_monotone_maps(*all[i0], *all[i2]);
                for (const auto& f : fs)
                    for (const auto& g : gs)
                        if (detail::is_orbit_minimum(f, g, auts[i0], auts[i1], auts[i2], true))
                            visit(Span{MonotoneMap(*all[i0], *all[i1], f), MonotoneMap(*all[i0], *all[i2], g)});
            }
        }
}

/// Calls `visit` once per isomorphism class of cospans P1 -> P0 <- P2 with all
/// three posets of size <= max_size.
inline void for_each_cospan_up_to_iso(std::size_t max_size, const std::function<void(const Cospan&)>& visit) {
    std::vector<const Poset*> all;
    for (std::size_t k = 0; k <= max_size; ++k)
        for (const Poset& p : posets_up_to_iso(k)) all.push_back(&p);
    std::vector<std::vector<std::vector<std::size_t>>> auts;
    for (const Poset* p : all) auts.push_back(detail::automorphisms(*p));

    for (std::size_t i0 = 0; i0 < all.size(); ++i0)
        for (std::size_t i1 = 0; i1 < all.size(); ++i1) {
            auto gs = all_monotone_maps(*all[i1], *all[i0]);
            for (std::size_t i2 = 0; i2 < all.size(); ++i2) {
                auto fs = all_monotone_maps(*all[i2], *all[i0]);
                for (const auto& g : gs)
                    for (const auto& f : fs)
                        if (detail::is_orbit_minimum(g, f, auts[i0], auts[i1], auts[i2], false))
                            visit(Cospan{MonotoneMap(*all[i1], *all[i0], g), MonotoneMap(*all[i2], *all[i0], f)});
            }
        }
}

/// Cube whose top is obtained by pulling the bottom pushout (m, f; g, n) back
/// along d: D' -> D. Back and front faces are pullbacks by construction.
inline Cube pullback_cube(const MonotoneMap& m, const MonotoneMap& f, const MonotoneMap& g,
                          const MonotoneMap& n, const MonotoneMap& d) {
    PullbackResult bp = pullback(g, d); // B' with b: B'->B, g': B'->D'
    PullbackResult cp = pullback(n, d); // C' with c: C'->C, n': C'->D'
    PullbackResult ap = pullback(m, bp.f_prime); // A' with a: A'->A, m': A'->B'

    const Poset& a_top = ap.apex;
    std::vector<std::size_t> f_top(a_top.size());
    for (std::size_t x = 0; x < a_top.size(); ++x) {
        const std::size_t in_c = f(ap.f_prime(x));
        const std::size_t in_dp = bp.g_prime(ap.g_prime(x));
        std::optional<std::size_t> idx;
        for (std::size_t y = 0; y < cp.apex.size() && !idx; ++y)
            if (cp.f_prime(y) == in_c && cp.g_prime(y) == in_dp) idx = y;
        if (!idx) throw InvalidCube("induced map A'->C' does not exist");
        f_top[x] = *idx;
    }
    return Cube{m,
                f,
                g,
                n,
                ap.g_prime,
                MonotoneMap(a_top, cp.apex, std::move(f_top)),
                bp.g_prime,
                cp.g_prime,
                ap.f_prime,
                bp.f_prime,
                cp.f_prime,
                d};
}

/// Same cube with one extra isolated element added to D', sent by d to
/// `target_of_extra`. The top stops being a pushout.
inline Cube enlarge_top(const Cube& cube, std::size_t target_of_extra) {
    const Poset& dp = cube.d.source();
    std::vector<Element> carrier = dp.elements();
    Element extra = "extra";
    while (dp.contains(extra)) extra += "'";
    carrier.push_back(extra);
    Poset bigger = Poset::closure(carrier, dp.covering_pairs());
    auto lift = [&](const MonotoneMap& into_dp) {
        std::vector<std::size_t> image(into_dp.source().size());
        for (std::size_t i = 0; i < image.size(); ++i) image[i] = *bigger.index_of(dp.element(into_dp(i)));
        return MonotoneMap(into_dp.source(), bigger, std::move(image));
    };
    std::vector<std::size_t> d_img(bigger.size());
    for (std::size_t i = 0; i < bigger.size(); ++i) {
        auto old = dp.index_of(bigger.element(i));
        d_img[i] = old ? cube.d(*old) : target_of_extra;
    }
    Cube out = cube;
    out.g_top = lift(cube.g_top);
    out.n_top = lift(cube.n_top);
    out.d = MonotoneMap(bigger, cube.d.target(), std::move(d_img));
    return out;
}

} // namespace renet
