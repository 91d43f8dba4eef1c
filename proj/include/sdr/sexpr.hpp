#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace sdr {

struct SExpr {
  bool is_list = false;
  std::string atom;  // lower-cased symbol when !is_list
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_atom(std::string_view s) const { return !is_list && atom == s; }
  // Head symbol of a list, or "" when the list is empty or starts with a list.
  std::string_view head() const {
    if (!is_list || items.empty() || items.front().is_list) return {};
    return items.front().atom;
  }
};

// Reads every top-level form. Comments run from ';' to end of line.
// Throws SyntaxError with the line/column of the offending form.
std::vector<SExpr> read_sexprs(std::string_view text);

}  // namespace sdr
