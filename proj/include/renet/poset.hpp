#pragma once

// Finite partially ordered sets and monotone maps.
//
// A Poset keeps its carrier sorted and stores the full reflexive-transitive
// order as a dense n*n matrix, so every law check is a direct lookup.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "renet/error.hpp"

namespace renet {

using Element = std::string;
using ElementPair = std::pair<Element, Element>;

/// Unchecked carrier plus relation, the input form accepted by validate_poset.
struct Relation {
    std::vector<Element> carrier;
    std::vector<ElementPair> pairs;
};

enum class PosetLaw { carrier, reflexivity, antisymmetry, transitivity };

inline const char* to_string(PosetLaw law) {
    switch (law) {
    case PosetLaw::carrier: return "carrier";
    case PosetLaw::reflexivity: return "reflexivity";
    case PosetLaw::antisymmetry: return "antisymmetry";
    case PosetLaw::transitivity: return "transitivity";
    }
    return "?";
}

struct PosetViolation {
    PosetLaw law;
    ElementPair pair;

    std::string message() const {
        return std::string(to_string(law)) + " violated at (" + pair.first + "," + pair.second + ")";
    }
};

namespace detail {

using Matrix = std::vector<std::uint8_t>;

inline void transitive_close(std::size_t n, Matrix& m) {
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            if (!m[i * n + k]) continue;
            for (std::size_t j = 0; j < n; ++j)
                if (m[k * n + j]) m[i * n + j] = 1;
        }
}

inline std::optional<std::pair<std::size_t, std::size_t>> antisymmetry_witness(std::size_t n,
                                                                               const Matrix& m) {
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m[i * n + j] && m[j * n + i]) return std::pair{i, j};
    return std::nullopt;
}

} // namespace detail

/// First violated law in the order carrier, reflexivity, antisymmetry,
/// transitivity; std::nullopt when the relation is a closed partial order.
inline std::optional<PosetViolation> validate_poset(const Relation& rel) {
    std::vector<Element> carrier = rel.carrier;
    std::sort(carrier.begin(), carrier.end());
    if (auto dup = std::adjacent_find(carrier.begin(), carrier.end()); dup != carrier.end())
        return PosetViolation{PosetLaw::carrier, {*dup, *dup}};

    const std::size_t n = carrier.size();
    auto index = [&](const Element& e) -> std::optional<std::size_t> {
        auto it = std::lower_bound(carrier.begin(), carrier.end(), e);
        if (it == carrier.end() || *it != e) return std::nullopt;
        return static_cast<std::size_t>(it - carrier.begin());
    };

    detail::Matrix m(n * n, 0);
    std::vector<ElementPair> sorted_pairs = rel.pairs;
    std::sort(sorted_pairs.begin(), sorted_pairs.end());
    for (const auto& [a, b] : sorted_pairs) {
        auto i = index(a);
        auto j = index(b);
        if (!i || !j) return PosetViolation{PosetLaw::carrier, {a, b}};
        m[*i * n + *j] = 1;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (!m[i * n + i]) return PosetViolation{PosetLaw::reflexivity, {carrier[i], carrier[i]}};
    if (auto w = detail::antisymmetry_witness(n, m))
        return PosetViolation{PosetLaw::antisymmetry, {carrier[w->first], carrier[w->second]}};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!m[i * n + j]) continue;
            for (std::size_t k = 0; k < n; ++k)
                if (m[j * n + k] && !m[i * n + k])
                    return PosetViolation{PosetLaw::transitivity, {carrier[i], carrier[k]}};
        }
    return std::nullopt;
}

class Poset {
public:
    Poset() = default;

    /// Builds a poset from an already closed relation; throws PosetError otherwise.
    static Poset from_relation(const Relation& rel) {
        if (auto v = validate_poset(rel)) throw PosetError("invalid poset: " + v->message());
        Poset p;
        p.elements_ = rel.carrier;
        std::sort(p.elements_.begin(), p.elements_.end());
        const std::size_t n = p.elements_.size();
        p.leq_.assign(n * n, 0);
        for (const auto& [a, b] : rel.pairs) p.leq_[*p.index_of(a) * n + *p.index_of(b)] = 1;
        return p;
    }

    /// Reflexive-transitive closure of a generating relation. Throws
    /// AntisymmetryViolation if the closure contains a cycle.
    static Poset closure(std::vector<Element> carrier, const std::vector<ElementPair>& generators) {
        std::sort(carrier.begin(), carrier.end());
        if (auto dup = std::adjacent_find(carrier.begin(), carrier.end()); dup != carrier.end())
            throw PosetError("duplicate element " + *dup);
        Poset p;
        p.elements_ = std::move(carrier);
        const std::size_t n = p.elements_.size();
        p.leq_.assign(n * n, 0);
        for (std::size_t i = 0; i < n; ++i) p.leq_[i * n + i] = 1;
        for (const auto& [a, b] : generators) {
            auto i = p.index_of(a);
            auto j = p.index_of(b);
            if (!i || !j) throw PosetError("pair (" + a + "," + b + ") outside carrier");
            p.leq_[*i * n + *j] = 1;
        }
        detail::transitive_close(n, p.leq_);
        if (auto w = detail::antisymmetry_witness(n, p.leq_))
            throw AntisymmetryViolation("order cycle between " + p.elements_[w->first] + " and " +
                                        p.elements_[w->second]);
        return p;
    }

    /// Index-level constructor used by constructions that already hold a
    /// closed matrix over a sorted, duplicate-free carrier.
    static Poset from_matrix(std::vector<Element> sorted_carrier, detail::Matrix leq) {
        Poset p;
        p.elements_ = std::move(sorted_carrier);
        p.leq_ = std::move(leq);
        return p;
    }

    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }
    const std::vector<Element>& elements() const { return elements_; }
    const Element& element(std::size_t i) const { return elements_[i]; }

    std::optional<std::size_t> index_of(const Element& e) const {
        auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
        if (it == elements_.end() || *it != e) return std::nullopt;
        return static_cast<std::size_t>(it - elements_.begin());
    }
    bool contains(const Element& e) const { return index_of(e).has_value(); }

    bool leq(std::size_t i, std::size_t j) const { return leq_[i * size() + j] != 0; }
    bool less(std::size_t i, std::size_t j) const { return i != j && leq(i, j); }
    bool leq(const Element& a, const Element& b) const {
        auto i = index_of(a);
        auto j = index_of(b);
        if (!i || !j) throw PosetError("element not in carrier");
        return leq(*i, *j);
    }

    const detail::Matrix& matrix() const { return leq_; }

    /// Full order as sorted pairs, reflexive ones included.
    std::vector<ElementPair> pairs() const {
        std::vector<ElementPair> out;
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                if (leq(i, j)) out.emplace_back(elements_[i], elements_[j]);
        return out;
    }

    /// Hasse diagram: x < y with nothing strictly between.
    std::vector<ElementPair> covering_pairs() const {
        std::vector<ElementPair> out;
        const std::size_t n = size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (!less(i, j)) continue;
                bool covered = true;
                for (std::size_t k = 0; k < n && covered; ++k)
                    if (less(i, k) && less(k, j)) covered = false;
                if (covered) out.emplace_back(elements_[i], elements_[j]);
            }
        return out;
    }

    Relation relation() const { return Relation{elements_, pairs()}; }

    friend bool operator==(const Poset&, const Poset&) = default;

private:
    std::vector<Element> elements_;
    detail::Matrix leq_;
};

/// Sorted element list followed by the covering pairs, e.g. "{a,b,c | a<b, b<c}".
inline std::string to_string(const Poset& p) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p.element(i);
    os << " |";
    bool first = true;
    for (const auto& [a, b] : p.covering_pairs()) {
        os << (first ? " " : ", ") << a << '<' << b;
        first = false;
    }
    os << '}';
    return os.str();
}

inline Poset initial_poset() { return Poset{}; }

/// Free functor on objects: the set with the identity relation.
inline Poset discrete(std::vector<Element> carrier) { return Poset::closure(std::move(carrier), {}); }

inline Poset discrete(const std::set<Element>& carrier) {
    return discrete(std::vector<Element>(carrier.begin(), carrier.end()));
}

/// Forgetful functor on objects.
inline std::set<Element> underlying(const Poset& p) {
    return {p.elements().begin(), p.elements().end()};
}

/// Chain e_0 < e_1 < ... over the given labels in list order.
inline Poset chain(const std::vector<Element>& labels) {
    std::vector<ElementPair> gens;
    for (std::size_t i = 1; i < labels.size(); ++i) gens.emplace_back(labels[i - 1], labels[i]);
    return Poset::closure(labels, gens);
}

inline bool is_monotone(const Poset& source, const Poset& target, std::span<const std::size_t> image) {
    if (image.size() != source.size()) return false;
    for (std::size_t v : image)
        if (v >= target.size()) return false;
    for (std::size_t i = 0; i < source.size(); ++i)
        for (std::size_t j = 0; j < source.size(); ++j)
            if (source.leq(i, j) && !target.leq(image[i], image[j])) return false;
    return true;
}

class MonotoneMap {
public:
    MonotoneMap() = default;

    MonotoneMap(Poset source, Poset target, std::vector<std::size_t> image)
        : source_(std::move(source)), target_(std::move(target)), image_(std::move(image)) {
        if (image_.size() != source_.size()) throw MapError("map is not total on its source");
        for (std::size_t v : image_)
            if (v >= target_.size()) throw MapError("map leaves its target");
        if (!is_monotone(source_, target_, image_)) throw MapError("map is not order-preserving");
    }

    static MonotoneMap from_assignment(Poset source, Poset target,
                                       const std::map<Element, Element>& assignment) {
        std::vector<std::size_t> image(source.size());
        for (std::size_t i = 0; i < source.size(); ++i) {
            auto it = assignment.find(source.element(i));
            if (it == assignment.end()) throw MapError("no image for " + source.element(i));
            auto j = target.index_of(it->second);
            if (!j) throw MapError("image " + it->second + " not in target");
            image[i] = *j;
        }
        return MonotoneMap(std::move(source), std::move(target), std::move(image));
    }

    static MonotoneMap identity(const Poset& p) {
        std::vector<std::size_t> image(p.size());
        for (std::size_t i = 0; i < p.size(); ++i) image[i] = i;
        return MonotoneMap(p, p, std::move(image));
    }

    const Poset& source() const { return source_; }
    const Poset& target() const { return target_; }
    const std::vector<std::size_t>& image() const { return image_; }

    std::size_t operator()(std::size_t i) const { return image_[i]; }
    const Element& operator()(const Element& e) const {
        auto i = source_.index_of(e);
        if (!i) throw MapError("element " + e + " not in source");
        return target_.element(image_[*i]);
    }

    bool injective() const {
        std::vector<std::size_t> v = image_;
        std::sort(v.begin(), v.end());
        return std::adjacent_find(v.begin(), v.end()) == v.end();
    }

    bool surjective() const {
        std::vector<std::uint8_t> hit(target_.size(), 0);
        for (std::size_t v : image_) hit[v] = 1;
        return std::all_of(hit.begin(), hit.end(), [](auto h) { return h != 0; });
    }

    friend bool operator==(const MonotoneMap&, const MonotoneMap&) = default;

private:
    Poset source_;
    Poset target_;
    std::vector<std::size_t> image_;
};

/// g after f. The intermediate posets must coincide.
inline MonotoneMap compose(const MonotoneMap& g, const MonotoneMap& f) {
    if (!(f.target() == g.source())) throw MapError("cannot compose: intermediate posets differ");
    std::vector<std::size_t> image(f.source().size());
    for (std::size_t i = 0; i < image.size(); ++i) image[i] = g(f(i));
    return MonotoneMap(f.source(), g.target(), std::move(image));
}

/// x <= y iff f(x) <= f(y). Implies injectivity by antisymmetry.
inline bool is_order_embedding(const MonotoneMap& f) {
    const Poset& s = f.source();
    const Poset& t = f.target();
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (s.leq(i, j) != t.leq(f(i), f(j))) return false;
    return true;
}

/// Membership in the class M: an order embedding whose image is closed
/// under intervals, i.e. f(x) <= z' <= f(y) forces z' into the image.
inline bool is_strict_order_embedding(const MonotoneMap& f) {
    if (!is_order_embedding(f)) return false;
    const Poset& s = f.source();
    const Poset& t = f.target();
    std::vector<std::uint8_t> in_image(t.size(), 0);
    for (std::size_t v : f.image()) in_image[v] = 1;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (!s.leq(i, j)) continue;
            for (std::size_t z = 0; z < t.size(); ++z)
                if (!in_image[z] && t.leq(f(i), z) && t.leq(z, f(j))) return false;
        }
    return true;
}

/// Two maps out of a common source: P1 <-f- P0 -g-> P2.
struct Span {
    MonotoneMap left;
    MonotoneMap right;
};

/// Two maps into a common target: P1 -g-> P0 <-f- P2.
struct Cospan {
    MonotoneMap left;
    MonotoneMap right;
};

} // namespace renet
