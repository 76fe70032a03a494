#pragma once

// Pushouts and pullbacks of finite posets.
//
// The pushout follows the quotient construction: glue the carriers as sets,
// collect the images of both orders (R3), merge classes related in both
// directions, and close the image relation transitively. A single merge round
// can leave a longer cycle behind (three classes u <= v <= w <= u with no pair
// related both ways in R3). PushoutMode::literal reports that as an
// AntisymmetryViolation; PushoutMode::saturate repeats the merge on the closed
// relation until it is antisymmetric, which yields the actual pushout.

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <tuple>
#include <vector>

#include "renet/poset.hpp"

namespace renet {

namespace detail {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

inline std::string class_token(std::vector<std::string> members) {
    std::sort(members.begin(), members.end());
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) out += (i ? "," : "") + members[i];
    return out + "}";
}

// Groups indices 0..n-1 by union-find root and orders the groups by their
// token. Returns the group index of every element plus the sorted tokens.
inline std::pair<std::vector<std::size_t>, std::vector<std::string>>
group_by_token(UnionFind& uf, const std::vector<std::vector<std::string>>& members_of) {
    const std::size_t n = members_of.size();
    std::map<std::size_t, std::vector<std::string>> by_root;
    for (std::size_t i = 0; i < n; ++i) {
        auto& bucket = by_root[uf.find(i)];
        bucket.insert(bucket.end(), members_of[i].begin(), members_of[i].end());
    }
    std::map<std::string, std::size_t> root_of_token;
    std::map<std::size_t, std::string> token_of_root;
    for (auto& [root, members] : by_root) {
        std::string tok = class_token(members);
        root_of_token[tok] = root;
        token_of_root[root] = tok;
    }
    std::vector<std::string> tokens;
    std::map<std::string, std::size_t> rank;
    for (const auto& [tok, root] : root_of_token) {
        rank[tok] = tokens.size();
        tokens.push_back(tok);
    }
    std::vector<std::size_t> group(n);
    for (std::size_t i = 0; i < n; ++i) group[i] = rank[token_of_root[uf.find(i)]];
    return {std::move(group), std::move(tokens)};
}

} // namespace detail

enum class PushoutMode { literal, saturate };

/// Intermediate data of the quotient construction, kept for inspection.
struct PushoutTrace {
    std::vector<Element> set_carrier;         ///< tokens of the set-level pushout
    std::vector<ElementPair> r3;              ///< image relation over set_carrier
    std::vector<ElementPair> symmetric_pairs; ///< distinct x,y with (x,y),(y,x) in r3
    std::size_t rounds = 0;                   ///< merge rounds until antisymmetric
};

struct PushoutResult {
    Poset apex;
    MonotoneMap g_prime; ///< P1 -> P3
    MonotoneMap f_prime; ///< P2 -> P3
    PushoutTrace trace;
};

/// Pushout of P1 <-f- P0 -g-> P2. Carrier tokens list the tagged members of
/// each class, "1:x" for elements of P1 and "2:y" for elements of P2.
inline PushoutResult pushout(const MonotoneMap& f, const MonotoneMap& g,
                             PushoutMode mode = PushoutMode::saturate) {
    if (!(f.source() == g.source())) throw MapError("pushout: span legs have different sources");
    const Poset& p0 = f.source();
    const Poset& p1 = f.target();
    const Poset& p2 = g.target();
    const std::size_t n1 = p1.size();
    const std::size_t n2 = p2.size();

    // (a) set-level pushout of the underlying maps
    std::vector<std::vector<std::string>> tagged(n1 + n2);
    for (std::size_t i = 0; i < n1; ++i) tagged[i] = {"1:" + p1.element(i)};
    for (std::size_t j = 0; j < n2; ++j) tagged[n1 + j] = {"2:" + p2.element(j)};
    detail::UnionFind glue(n1 + n2);
    for (std::size_t x = 0; x < p0.size(); ++x) glue.unite(f(x), n1 + g(x));
    auto [set_class, set_tokens] = detail::group_by_token(glue, tagged);
    const std::size_t m = set_tokens.size();

    std::vector<std::vector<std::string>> set_members(m);
    for (std::size_t i = 0; i < n1 + n2; ++i)
        set_members[set_class[i]].insert(set_members[set_class[i]].end(), tagged[i].begin(),
                                         tagged[i].end());

    // (b) R3: images of both orders on the set-level pushout
    detail::Matrix r3(m * m, 0);
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n1; ++j)
            if (p1.leq(i, j)) r3[set_class[i] * m + set_class[j]] = 1;
    for (std::size_t i = 0; i < n2; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            if (p2.leq(i, j)) r3[set_class[n1 + i] * m + set_class[n1 + j]] = 1;

    PushoutTrace trace;
    trace.set_carrier = set_tokens;
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b) {
            if (!r3[a * m + b]) continue;
            trace.r3.emplace_back(set_tokens[a], set_tokens[b]);
            if (a != b && r3[b * m + a]) trace.symmetric_pairs.emplace_back(set_tokens[a], set_tokens[b]);
        }

    // (c)-(e) quotient by the equivalence closure of symmetric pairs, then
    // close the image relation; repeat while the closure has a cycle.
    detail::UnionFind merge(m);
    for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b)
            if (r3[a * m + b] && r3[b * m + a]) merge.unite(a, b);

    std::vector<std::size_t> cls;
    std::vector<std::string> tokens;
    detail::Matrix order;
    for (;;) {
        ++trace.rounds;
        std::tie(cls, tokens) = detail::group_by_token(merge, set_members);
        const std::size_t k = tokens.size();
        order.assign(k * k, 0);
        for (std::size_t c = 0; c < k; ++c) order[c * k + c] = 1;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b)
                if (r3[a * m + b]) order[cls[a] * k + cls[b]] = 1;
        detail::transitive_close(k, order);
        auto witness = detail::antisymmetry_witness(k, order);
        if (!witness) break;
        if (mode == PushoutMode::literal)
            throw AntisymmetryViolation("pushout order has a cycle through " + tokens[witness->first] +
                                        " and " + tokens[witness->second]);
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = a + 1; b < m; ++b)
                if (order[cls[a] * k + cls[b]] && order[cls[b] * k + cls[a]]) merge.unite(a, b);
    }

    Poset apex = Poset::from_matrix(tokens, order);
    std::vector<std::size_t> g_img(n1), f_img(n2);
    for (std::size_t i = 0; i < n1; ++i) g_img[i] = cls[set_class[i]];
    for (std::size_t j = 0; j < n2; ++j) f_img[j] = cls[set_class[n1 + j]];
    MonotoneMap g_prime(p1, apex, std::move(g_img));
    MonotoneMap f_prime(p2, apex, std::move(f_img));
    return PushoutResult{std::move(apex), std::move(g_prime), std::move(f_prime), std::move(trace)};
}

struct PullbackResult {
    Poset apex;
    MonotoneMap f_prime; ///< P3 -> P1
    MonotoneMap g_prime; ///< P3 -> P2
};

/// Pullback of P1 -g-> P0 <-f- P2: the pairs agreeing in P0, ordered
/// componentwise. Carrier tokens are "(x1,x2)".
inline PullbackResult pullback(const MonotoneMap& g, const MonotoneMap& f) {
    if (!(g.target() == f.target())) throw MapError("pullback: cospan legs have different targets");
    const Poset& p1 = g.source();
    const Poset& p2 = f.source();

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < p1.size(); ++i)
        for (std::size_t j = 0; j < p2.size(); ++j)
            if (g(i) == f(j)) pairs.emplace_back(i, j);

    std::vector<std::pair<std::string, std::size_t>> keyed;
    for (std::size_t k = 0; k < pairs.size(); ++k)
        keyed.emplace_back("(" + p1.element(pairs[k].first) + "," + p2.element(pairs[k].second) + ")", k);
    std::sort(keyed.begin(), keyed.end());
    if (std::adjacent_find(keyed.begin(), keyed.end(),
                           [](const auto& x, const auto& y) { return x.first == y.first; }) != keyed.end())
        throw PosetError("pullback: ambiguous pair token (element names contain ',')");

    const std::size_t n = keyed.size();
    std::vector<Element> carrier(n);
    std::vector<std::size_t> first(n), second(n);
    for (std::size_t r = 0; r < n; ++r) {
        carrier[r] = keyed[r].first;
        first[r] = pairs[keyed[r].second].first;
        second[r] = pairs[keyed[r].second].second;
    }
    detail::Matrix order(n * n, 0);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            order[a * n + b] = p1.leq(first[a], first[b]) && p2.leq(second[a], second[b]);

    Poset apex = Poset::from_matrix(std::move(carrier), std::move(order));
    MonotoneMap f_prime(apex, p1, std::move(first));
    MonotoneMap g_prime(apex, p2, std::move(second));
    return PullbackResult{std::move(apex), std::move(f_prime), std::move(g_prime)};
}

} // namespace renet
