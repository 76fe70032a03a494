#pragma once

// Universal-property oracles for finite posets.
//
// These checks never call the constructions in poset_construct.hpp. They
// quantify over every target (or source) poset up to a size bound and over
// every commuting cocone (cone) into it, counting mediating maps directly.
//
// Bound: test posets range over all posets of size <= min(|apex|+1, limit),
// up to isomorphism. With limit >= 2 the checks are still complete, because
// the two-element chain cogenerates Posets (pushouts) and the one-point poset
// together with the two-element chain is a dense generator (pullbacks). The
// bound_too_small flag records when |apex|+1 exceeded the configured limit.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "renet/poset.hpp"

namespace renet {

struct OracleOptions {
    std::size_t max_target_size = 3;
};

struct OracleReport {
    bool holds = true;
    bool bound_too_small = false;
    std::size_t test_posets = 0;
    std::size_t cocones = 0;
    std::string failure;

    explicit operator bool() const { return holds; }
};

/// f: P0 -> P1, g: P0 -> P2, g_prime: P1 -> P3, f_prime: P2 -> P3.
struct PushoutSquare {
    MonotoneMap f;
    MonotoneMap g;
    MonotoneMap g_prime;
    MonotoneMap f_prime;
};

/// g: P1 -> P0, f: P2 -> P0, f_prime: P3 -> P1, g_prime: P3 -> P2.
struct PullbackSquare {
    MonotoneMap g;
    MonotoneMap f;
    MonotoneMap f_prime;
    MonotoneMap g_prime;
};

namespace detail {

inline std::vector<std::uint8_t> permuted_matrix(const Matrix& m, std::size_t n,
                                                 const std::vector<std::size_t>& perm) {
    std::vector<std::uint8_t> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[perm[i] * n + perm[j]] = m[i * n + j];
    return out;
}

inline std::vector<Poset> posets_of_size_up_to_iso(std::size_t n) {
    // Every poset has a labelling that is a linear extension, so relations
    // contained in the upper triangle cover all isomorphism classes.
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
    std::vector<std::size_t> perm(n);
    std::map<std::vector<std::uint8_t>, Matrix> seen;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
        Matrix m(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (mask >> s & 1) m[slots[s].first * n + slots[s].second] = 1;
        Matrix closed = m;
        transitive_close(n, closed);
        if (closed != m) continue;
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<std::uint8_t> best = m;
        do {
            auto candidate = permuted_matrix(m, n, perm);
            if (candidate < best) best = std::move(candidate);
        } while (std::next_permutation(perm.begin(), perm.end()));
        seen.emplace(std::move(best), m);
    }
    std::vector<Element> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
    std::vector<Poset> out;
    for (auto& [key, m] : seen) out.push_back(Poset::from_matrix(labels, m));
    return out;
}

} // namespace detail

/// All posets with exactly n elements, one per isomorphism class. Cached.
inline const std::vector<Poset>& posets_up_to_iso(std::size_t n) {
    static std::map<std::size_t, std::vector<Poset>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, detail::posets_of_size_up_to_iso(n)).first;
    return it->second;
}

/// Every order-preserving map between two posets, lexicographic by image.
inline std::vector<std::vector<std::size_t>> all_monotone_maps(const Poset& source, const Poset& target) {
    std::vector<std::vector<std::size_t>> out;
    const std::size_t n = source.size();
    if (n == 0) return {{}};
    if (target.empty()) return out;
    std::vector<std::size_t> image(n, 0);
    auto consistent = [&](std::size_t upto) {
        for (std::size_t i = 0; i < upto; ++i)
            if ((source.leq(i, upto) && !target.leq(image[i], image[upto])) ||
                (source.leq(upto, i) && !target.leq(image[upto], image[i])))
                return false;
        return true;
    };
    std::size_t pos = 0;
    image[0] = 0;
    for (;;) {
        if (image[pos] < target.size() && consistent(pos)) {
            if (pos + 1 == n) {
                out.push_back(image);
                ++image[pos];
            } else {
                image[++pos] = 0;
            }
            continue;
        }
        if (image[pos] < target.size()) {
            ++image[pos];
            continue;
        }
        if (pos == 0) break;
        ++image[--pos];
    }
    return out;
}

namespace detail {

// Number of monotone h: apex -> target with h(prescribed_i) = value_i,
// capped at `cap`. Prescriptions come as (apex index, target index).
inline std::size_t count_extensions(const Poset& apex, const Poset& target,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& prescribed,
                                    std::size_t cap) {
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    const std::size_t n = apex.size();
    std::vector<std::size_t> forced(n, unset);
    for (auto [a, v] : prescribed) {
        if (forced[a] != unset && forced[a] != v) return 0;
        forced[a] = v;
    }
    std::vector<std::size_t> h(n, unset);
    std::size_t count = 0;
    auto ok_at = [&](std::size_t pos) {
        for (std::size_t i = 0; i < pos; ++i)
            if ((apex.leq(i, pos) && !target.leq(h[i], h[pos])) ||
                (apex.leq(pos, i) && !target.leq(h[pos], h[i])))
                return false;
        return true;
    };
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (count >= cap) return;
        if (pos == n) {
            ++count;
            return;
        }
        if (forced[pos] != unset) {
            h[pos] = forced[pos];
            if (ok_at(pos)) self(self, pos + 1);
            return;
        }
        for (std::size_t v = 0; v < target.size() && count < cap; ++v) {
            h[pos] = v;
            if (ok_at(pos)) self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return count;
}

inline bool commutes(const MonotoneMap& a1, const MonotoneMap& a2, const MonotoneMap& b1,
                     const MonotoneMap& b2) {
    // a2 . a1 == b2 . b1 as functions on indices, same endpoints
    if (!(a1.source() == b1.source()) || !(a2.target() == b2.target())) return false;
    if (!(a1.target() == a2.source()) || !(b1.target() == b2.source())) return false;
    for (std::size_t x = 0; x < a1.source().size(); ++x)
        if (a2(a1(x)) != b2(b1(x))) return false;
    return true;
}

} // namespace detail

/// Decides whether the square is a pushout of its span by enumerating every
/// commuting cocone into every test poset and requiring exactly one mediating
/// monotone map.
inline OracleReport verify_pushout(const PushoutSquare& sq, const OracleOptions& opts = {}) {
    OracleReport report;
    if (!detail::commutes(sq.f, sq.g_prime, sq.g, sq.f_prime)) {
        report.holds = false;
        report.failure = "square does not commute";
        return report;
    }
    const Poset& p0 = sq.f.source();
    const Poset& p1 = sq.f.target();
    const Poset& p2 = sq.g.target();
    const Poset& p3 = sq.g_prime.target();
    const std::size_t n1 = p1.size();
    const std::size_t n2 = p2.size();

    // Elements of P2 whose cocone value is tied to elements of P1.
    std::vector<std::vector<std::size_t>> tied(n2);
    for (std::size_t z = 0; z < p0.size(); ++z) tied[sq.g(z)].push_back(sq.f(z));

    const std::size_t wanted = p3.size() + 1;
    const std::size_t bound = std::min(wanted, opts.max_target_size);
    report.bound_too_small = wanted > opts.max_target_size;

    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    for (std::size_t k = 0; k <= bound && report.holds; ++k) {
        for (const Poset& p4 : posets_up_to_iso(k)) {
            ++report.test_posets;
            // Cocone values: indices 0..n1-1 for g'', n1..n1+n2-1 for f''.
            std::vector<std::size_t> val(n1 + n2, unset);
            auto ok_at = [&](std::size_t pos) {
                if (pos < n1) {
                    for (std::size_t i = 0; i < pos; ++i)
                        if ((p1.leq(i, pos) && !p4.leq(val[i], val[pos])) ||
                            (p1.leq(pos, i) && !p4.leq(val[pos], val[i])))
                            return false;
                    return true;
                }
                const std::size_t y = pos - n1;
                for (std::size_t x : tied[y])
                    if (val[x] != val[pos]) return false;
                for (std::size_t j = 0; j < y; ++j)
                    if ((p2.leq(j, y) && !p4.leq(val[n1 + j], val[pos])) ||
                        (p2.leq(y, j) && !p4.leq(val[pos], val[n1 + j])))
                        return false;
                return true;
            };
            auto leaf = [&]() {
                ++report.cocones;
                std::vector<std::pair<std::size_t, std::size_t>> prescribed;
                for (std::size_t i = 0; i < n1; ++i) prescribed.emplace_back(sq.g_prime(i), val[i]);
                for (std::size_t j = 0; j < n2; ++j) prescribed.emplace_back(sq.f_prime(j), val[n1 + j]);
                std::size_t c = detail::count_extensions(p3, p4, prescribed, 2);
                if (c != 1) {
                    report.holds = false;
                    report.failure = (c == 0 ? "no mediating map" : "mediating map not unique") +
                                     std::string(" for a cocone into ") + to_string(p4);
                }
            };
            auto rec = [&](auto&& self, std::size_t pos) -> void {
                if (!report.holds) return;
                if (pos == n1 + n2) {
                    leaf();
                    return;
                }
                if (pos >= n1 && !tied[pos - n1].empty()) {
                    val[pos] = val[tied[pos - n1].front()];
                    if (ok_at(pos)) self(self, pos + 1);
                    return;
                }
                for (std::size_t v = 0; v < p4.size() && report.holds; ++v) {
                    val[pos] = v;
                    if (ok_at(pos)) self(self, pos + 1);
                }
            };
            rec(rec, 0);
            if (!report.holds) break;
        }
    }
    return report;
}

/// Decides whether the square is a pullback of its cospan by enumerating every
/// commuting cone from every test poset and requiring exactly one mediating
/// monotone map.
inline OracleReport verify_pullback(const PullbackSquare& sq, const OracleOptions& opts = {}) {
    OracleReport report;
    if (!detail::commutes(sq.f_prime, sq.g, sq.g_prime, sq.f)) {
        report.holds = false;
        report.failure = "square does not commute";
        return report;
    }
    const Poset& p1 = sq.g.source();
    const Poset& p2 = sq.f.source();
    const Poset& p3 = sq.f_prime.source();

    std::vector<std::pair<std::size_t, std::size_t>> compatible;
    for (std::size_t i = 0; i < p1.size(); ++i)
        for (std::size_t j = 0; j < p2.size(); ++j)
            if (sq.g(i) == sq.f(j)) compatible.emplace_back(i, j);

    const std::size_t wanted = p3.size() + 1;
    const std::size_t bound = std::min(wanted, opts.max_target_size);
    report.bound_too_small = wanted > opts.max_target_size;

    for (std::size_t k = 0; k <= bound && report.holds; ++k) {
        for (const Poset& p4 : posets_up_to_iso(k)) {
            ++report.test_posets;
            std::vector<std::size_t> choice(k);
            auto ok_at = [&](std::size_t pos) {
                const auto [a, b] = compatible[choice[pos]];
                for (std::size_t i = 0; i < pos; ++i) {
                    const auto [ai, bi] = compatible[choice[i]];
                    if (p4.leq(i, pos) && !(p1.leq(ai, a) && p2.leq(bi, b))) return false;
                    if (p4.leq(pos, i) && !(p1.leq(a, ai) && p2.leq(b, bi))) return false;
                }
                return true;
            };
            auto leaf = [&]() {
                ++report.cocones;
                // Mediating h: P4 -> P3 with f'h = a and g'h = b, counted by search.
                std::vector<std::vector<std::size_t>> candidates(k);
                for (std::size_t v = 0; v < k; ++v) {
                    const auto [a, b] = compatible[choice[v]];
                    for (std::size_t c = 0; c < p3.size(); ++c)
                        if (sq.f_prime(c) == a && sq.g_prime(c) == b) candidates[v].push_back(c);
                }
                std::vector<std::size_t> h(k);
                std::size_t count = 0;
                auto rec = [&](auto&& self, std::size_t pos) -> void {
                    if (count >= 2) return;
                    if (pos == k) {
                        ++count;
                        return;
                    }
                    for (std::size_t c : candidates[pos]) {
                        h[pos] = c;
                        bool ok = true;
                        for (std::size_t i = 0; i < pos && ok; ++i)
                            if ((p4.leq(i, pos) && !p3.leq(h[i], c)) || (p4.leq(pos, i) && !p3.leq(c, h[i])))
                                ok = false;
                        if (ok) self(self, pos + 1);
                    }
                };
                rec(rec, 0);
                if (count != 1) {
                    report.holds = false;
                    report.failure = (count == 0 ? "no mediating map" : "mediating map not unique") +
                                     std::string(" for a cone from ") + to_string(p4);
                }
            };
            auto rec = [&](auto&& self, std::size_t pos) -> void {
                if (!report.holds) return;
                if (pos == k) {
                    leaf();
                    return;
                }
                for (std::size_t c = 0; c < compatible.size() && report.holds; ++c) {
                    choice[pos] = c;
                    if (ok_at(pos)) self(self, pos + 1);
                }
            };
            rec(rec, 0);
            if (!report.holds) break;
        }
    }
    return report;
}

/// Pushout of the underlying functions, computed with its own union-find.
/// Tokens use the same "{1:x,2:y}" format as the poset construction.
inline std::vector<Element> set_pushout_carrier(const MonotoneMap& f, const MonotoneMap& g) {
    const std::size_t n1 = f.target().size();
    const std::size_t n2 = g.target().size();
    std::vector<std::size_t> parent(n1 + n2);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x];
        return x;
    };
    for (std::size_t z = 0; z < f.source().size(); ++z) {
        std::size_t a = find(f(z));
        std::size_t b = find(n1 + g(z));
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::size_t, std::vector<std::string>> classes;
    for (std::size_t i = 0; i < n1; ++i) classes[find(i)].push_back("1:" + f.target().element(i));
    for (std::size_t j = 0; j < n2; ++j) classes[find(n1 + j)].push_back("2:" + g.target().element(j));
    std::vector<Element> out;
    for (auto& [root, members] : classes) {
        std::sort(members.begin(), members.end());
        std::string tok = "{";
        for (std::size_t i = 0; i < members.size(); ++i) tok += (i ? "," : "") + members[i];
        out.push_back(tok + "}");
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct AdjunctionReport {
    std::size_t monotone_maps = 0; ///< |Posets(F s, p)|
    std::size_t set_maps = 0;      ///< |Sets(s, V p)|
    bool holds = false;
};

/// Compares the two hom-sets of the free/forgetful adjunction. The bijection
/// sends a monotone map to its underlying function; it is checked by
/// enumerating every function s -> V(p) and confirming each is monotone from
/// the discrete order, and by comparing the counts.
inline AdjunctionReport check_adjunction(const std::vector<Element>& set, const Poset& p) {
    AdjunctionReport r;
    const Poset free_obj = discrete(set);
    r.monotone_maps = all_monotone_maps(free_obj, p).size();

    const std::size_t n = free_obj.size();
    bool every_function_monotone = true;
    std::vector<std::size_t> fn(n, 0);
    if (n == 0) {
        r.set_maps = 1;
    } else if (!p.empty()) {
        for (;;) {
            ++r.set_maps;
            if (!is_monotone(free_obj, p, fn)) every_function_monotone = false;
            std::size_t pos = 0;
            while (pos < n && ++fn[pos] == p.size()) fn[pos++] = 0;
            if (pos == n) break;
        }
    }
    r.holds = every_function_monotone && r.monotone_maps == r.set_maps;
    return r;
}

/// Commutative cube over a bottom square A -m-> B, A -f-> C, B -g-> D, C -n-> D,
/// a top square over A', B', C', D' with primed maps, and verticals a, b, c, d.
struct Cube {
    MonotoneMap m, f, g, n;
    MonotoneMap m_top, f_top, g_top, n_top;
    MonotoneMap a, b, c, d;
};

struct VkReport {
    bool top_is_pushout = false;
    bool fronts_are_pullbacks = false;

    bool holds() const { return top_is_pushout == fronts_are_pullbacks; }
};

/// Van Kampen check for one cube. The bottom must be a pushout with m in M
/// and both back faces must be pullbacks; then the top is a pushout exactly
/// when both front faces are pullbacks. Throws InvalidCube when the
/// preconditions fail.
inline VkReport check_vk_square(const Cube& cube, const OracleOptions& opts = {}) {
    using detail::commutes;
    if (!commutes(cube.m, cube.g, cube.f, cube.n)) throw InvalidCube("bottom face does not commute");
    if (!commutes(cube.m_top, cube.g_top, cube.f_top, cube.n_top)) throw InvalidCube("top face does not commute");
    if (!commutes(cube.m_top, cube.b, cube.a, cube.m)) throw InvalidCube("back face A'B'AB does not commute");
    if (!commutes(cube.f_top, cube.c, cube.a, cube.f)) throw InvalidCube("back face A'C'AC does not commute");
    if (!commutes(cube.n_top, cube.d, cube.c, cube.n)) throw InvalidCube("front face C'D'CD does not commute");
    if (!commutes(cube.g_top, cube.d, cube.b, cube.g)) throw InvalidCube("front face B'D'BD does not commute");
    if (!is_strict_order_embedding(cube.m)) throw InvalidCube("bottom map m is not in M");
    if (!verify_pushout({cube.m, cube.f, cube.g, cube.n}, opts)) throw InvalidCube("bottom face is not a pushout");
    if (!verify_pullback({cube.m, cube.b, cube.a, cube.m_top}, opts))
        throw InvalidCube("back face A'B'AB is not a pullback");
    if (!verify_pullback({cube.f, cube.c, cube.a, cube.f_top}, opts))
        throw InvalidCube("back face A'C'AC is not a pullback");

    VkReport r;
    r.top_is_pushout = verify_pushout({cube.m_top, cube.f_top, cube.g_top, cube.n_top}, opts).holds;
    r.fronts_are_pullbacks = verify_pullback({cube.n, cube.d, cube.c, cube.n_top}, opts).holds &&
                             verify_pullback({cube.g, cube.d, cube.b, cube.g_top}, opts).holds;
    return r;
}

} // namespace renet
