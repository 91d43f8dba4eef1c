#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sdr/literal.hpp"

namespace sdr {

// Fixed-width truth assignment. Set bits are true propositions.
class State {
 public:
  State() = default;
  explicit State(std::size_t width) : width_(width), words_((width + 63) / 64, 0) {}

  std::size_t width() const { return width_; }

  bool test(PropId p) const { return (words_[p >> 6] >> (p & 63)) & 1U; }
  void set(PropId p, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (p & 63);
    if (value) {
      words_[p >> 6] |= mask;
    } else {
      words_[p >> 6] &= ~mask;
    }
  }

  bool holds(Literal l) const { return test(l.prop) != l.negated; }
  bool holds_all(std::span<const Literal> lits) const {
    for (const Literal& l : lits) {
      if (!holds(l)) return false;
    }
    return true;
  }
  void assign(Literal l) { set(l.prop, l.value()); }

  std::size_t count() const;
  std::size_t hash() const;
  // Bit string, proposition 0 first.
  std::string to_bits() const;

  friend bool operator==(const State&, const State&) = default;
  friend bool operator<(const State& a, const State& b) {
    return a.width_ != b.width_ ? a.width_ < b.width_ : a.words_ < b.words_;
  }

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept { return s.hash(); }
};

}  // namespace sdr
