#pragma once

#include <cstddef>
#include <string>

namespace mtc {

/// A homological dimension: an exact integer, a lower bound reached at the cap, or certified infinity.
struct DimValue {
    enum class Kind { finite, at_least, infinite };

    Kind kind = Kind::finite;
    std::size_t value = 0;

    static DimValue exactly(std::size_t n) { return {Kind::finite, n}; }
    static DimValue at_least(std::size_t cap) { return {Kind::at_least, cap}; }
    static DimValue infinite() { return {Kind::infinite, 0}; }

    bool is_finite() const { return kind == Kind::finite; }
    bool is_infinite() const { return kind == Kind::infinite; }
    bool certified() const { return kind != Kind::at_least; }

    /// True when the value is known to be at least n.
    bool known_at_least(std::size_t n) const { return kind == Kind::infinite || value >= n; }

    bool operator==(const DimValue& o) const { return kind == o.kind && (kind == Kind::infinite || value == o.value); }

    std::string str() const
    {
        switch (kind) {
        case Kind::finite: return std::to_string(value);
        case Kind::at_least: return ">= " + std::to_string(value);
        case Kind::infinite: return "infinite";
        }
        return {};
    }
};

/// A yes/no answer with a certification flag and, where relevant, the degree that decided it.
struct Verdict {
    bool value = false;
    bool certified = true;
    std::size_t witness = 0;
};

} // namespace mtc
