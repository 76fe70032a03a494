#pragma once

// Finite multisets over string keys (places), i.e. elements of the free
// commutative monoid. Zero counts are never stored.

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include "renet/error.hpp"

namespace renet {

using Count = std::uint64_t;

class Multiset {
public:
    Multiset() = default;
    Multiset(std::initializer_list<std::pair<const std::string, Count>> init) {
        for (const auto& [k, n] : init) add(k, n);
    }

    Count operator[](const std::string& key) const {
        auto it = counts_.find(key);
        return it == counts_.end() ? 0 : it->second;
    }

    void add(const std::string& key, Count n = 1) {
        if (n) counts_[key] += n;
    }

    void set(const std::string& key, Count n) {
        if (n)
            counts_[key] = n;
        else
            counts_.erase(key);
    }

    bool empty() const { return counts_.empty(); }
    std::size_t support_size() const { return counts_.size(); }
    Count total() const {
        Count t = 0;
        for (const auto& [k, n] : counts_) t += n;
        return t;
    }
    bool contains(const std::string& key) const { return counts_.count(key) != 0; }

    auto begin() const { return counts_.begin(); }
    auto end() const { return counts_.end(); }

    /// Pointwise order.
    bool leq(const Multiset& other) const {
        for (const auto& [k, n] : counts_)
            if (n > other[k]) return false;
        return true;
    }

    Multiset operator+(const Multiset& other) const {
        Multiset out = *this;
        for (const auto& [k, n] : other.counts_) out.add(k, n);
        return out;
    }

    /// Difference; only defined when `other` is below *this.
    Multiset operator-(const Multiset& other) const {
        if (!other.leq(*this)) throw NetError("multiset difference undefined: subtrahend is not below");
        Multiset out = *this;
        for (const auto& [k, n] : other.counts_) out.set(k, out[k] - n);
        return out;
    }

    Multiset scaled(Count factor) const {
        Multiset out;
        for (const auto& [k, n] : counts_) out.add(k, n * factor);
        return out;
    }

    /// Image under a key map (the monoid extension of a function on keys).
    template <class F>
    Multiset mapped(F&& f) const {
        Multiset out;
        for (const auto& [k, n] : counts_) out.add(f(k), n);
        return out;
    }

    friend bool operator==(const Multiset&, const Multiset&) = default;

private:
    std::map<std::string, Count> counts_;
};

inline std::string to_string(const Multiset& m) {
    if (m.empty()) return "0";
    std::string out;
    for (const auto& [k, n] : m) {
        if (!out.empty()) out += " + ";
        if (n != 1) out += std::to_string(n) + "*";
        out += k;
    }
    return out;
}

} // namespace renet
