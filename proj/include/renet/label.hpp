#pragma once

// Transition labels and the closed registry of label renewal functions.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "renet/error.hpp"

namespace renet {

enum class LabelTag { integer, boolean, symbol };

struct Symbol {
    std::string text;
    friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

class LabelValue {
public:
    LabelValue() : value_(std::int64_t{0}) {}
    LabelValue(std::int64_t v) : value_(v) {}
    LabelValue(int v) : value_(std::int64_t{v}) {}
    LabelValue(bool v) : value_(v) {}
    LabelValue(Symbol s) : value_(std::move(s)) {}
    LabelValue(const char*) = delete; // would silently become a bool

    static LabelValue symbol(std::string s) { return LabelValue(Symbol{std::move(s)}); }

    LabelTag tag() const { return static_cast<LabelTag>(value_.index()); }
    std::int64_t as_int() const { return std::get<std::int64_t>(value_); }
    bool as_bool() const { return std::get<bool>(value_); }
    const std::string& as_symbol() const { return std::get<Symbol>(value_).text; }

    friend bool operator==(const LabelValue&, const LabelValue&) = default;
    friend auto operator<=>(const LabelValue&, const LabelValue&) = default;

private:
    std::variant<std::int64_t, bool, Symbol> value_;
};

inline const char* to_string(LabelTag t) {
    switch (t) {
    case LabelTag::integer: return "int";
    case LabelTag::boolean: return "bool";
    case LabelTag::symbol: return "symbol";
    }
    return "?";
}

inline std::optional<LabelTag> parse_label_tag(std::string_view s) {
    if (s == "int") return LabelTag::integer;
    if (s == "bool") return LabelTag::boolean;
    if (s == "symbol") return LabelTag::symbol;
    return std::nullopt;
}

inline std::string to_string(const LabelValue& v) {
    switch (v.tag()) {
    case LabelTag::integer: return std::to_string(v.as_int());
    case LabelTag::boolean: return v.as_bool() ? "true" : "false";
    case LabelTag::symbol: return v.as_symbol();
    }
    return "?";
}

enum class Renew { identity, inc, dec_saturating, logical_not };

inline const char* to_string(Renew r) {
    switch (r) {
    case Renew::identity: return "identity";
    case Renew::inc: return "inc";
    case Renew::dec_saturating: return "dec_saturating";
    case Renew::logical_not: return "not";
    }
    return "?";
}

inline std::optional<Renew> parse_renew(std::string_view s) {
    if (s == "identity") return Renew::identity;
    if (s == "inc") return Renew::inc;
    if (s == "dec_saturating") return Renew::dec_saturating;
    if (s == "not") return Renew::logical_not;
    return std::nullopt;
}

/// Every renewal keeps the tag; functions act as the identity on tags they
/// do not address.
inline LabelValue renew(Renew r, const LabelValue& v) {
    switch (r) {
    case Renew::identity: return v;
    case Renew::inc: return v.tag() == LabelTag::integer ? LabelValue(v.as_int() + 1) : v;
    case Renew::dec_saturating:
        return v.tag() == LabelTag::integer ? LabelValue(v.as_int() > 0 ? v.as_int() - 1 : std::int64_t{0}) : v;
    case Renew::logical_not: return v.tag() == LabelTag::boolean ? LabelValue(!v.as_bool()) : v;
    }
    return v;
}

inline LabelValue renew_times(Renew r, LabelValue v, std::uint64_t k) {
    if (r == Renew::identity || k == 0) return v;
    if (r == Renew::logical_not) return k % 2 ? renew(r, v) : v;
    if (v.tag() != LabelTag::integer) return v;
    if (r == Renew::inc) return LabelValue(v.as_int() + static_cast<std::int64_t>(k));
    auto n = static_cast<std::uint64_t>(v.as_int() > 0 ? v.as_int() : 0);
    return LabelValue(static_cast<std::int64_t>(n > k ? n - k : 0));
}

} // namespace renet
