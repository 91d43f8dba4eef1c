#include "sdr/literal.hpp"

#include <algorithm>

#include "sdr/state.hpp"

namespace sdr {

bool has_complementary_pair(const LiteralSet& lits) {
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (lits[i].prop == lits[j].prop && lits[i].negated != lits[j].negated) return true;
    }
  }
  return false;
}

LiteralSet normalized(LiteralSet lits) {
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  return lits;
}

std::size_t State::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

std::size_t State::hash() const {
  // FNV-1a over the words.
  std::size_t h = 1469598103934665603ULL ^ width_;
  for (auto w : words_) {
    h ^= w;
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return h;
}

std::string State::to_bits() const {
  std::string out(width_, '0');
  for (std::size_t i = 0; i < width_; ++i) {
    if (test(static_cast<PropId>(i))) out[i] = '1';
  }
  return out;
}

}  // namespace sdr
