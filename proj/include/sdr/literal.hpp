#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <vector>

namespace sdr {

using PropId = std::uint32_t;

struct Literal {
  PropId prop = 0;
  bool negated = false;

  constexpr Literal() = default;
  constexpr Literal(PropId p, bool neg) : prop(p), negated(neg) {}

  static constexpr Literal pos(PropId p) { return {p, false}; }
  static constexpr Literal neg(PropId p) { return {p, true}; }

  constexpr Literal operator~() const { return {prop, !negated}; }
  // Truth value this literal requires of its proposition.
  constexpr bool value() const { return !negated; }

  friend constexpr auto operator<=>(const Literal&, const Literal&) = default;
};

using LiteralSet = std::vector<Literal>;
using Clause = std::vector<Literal>;

// True if the set contains both l and ~l.
bool has_complementary_pair(const LiteralSet& lits);

// Sorted, deduplicated copy.
LiteralSet normalized(LiteralSet lits);

}  // namespace sdr

template <>
struct std::hash<sdr::Literal> {
  std::size_t operator()(const sdr::Literal& l) const noexcept {
    return (static_cast<std::size_t>(l.prop) << 1) | (l.negated ? 1U : 0U);
  }
};
