#include "sdr/sexpr.hpp"

#include <cctype>

#include "sdr/errors.hpp"

namespace sdr {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip_space();
    while (pos_ < text_.size()) {
      out.push_back(read_one());
      skip_space();
    }
    return out;
  }

 private:
  SExpr read_one() {
    SExpr e;
    e.line = line_;
    e.column = column_;
    const char c = text_[pos_];
    if (c == ')') throw SyntaxError("unexpected ')'", line_, column_);
    if (c == '(') {
      advance();
      e.is_list = true;
      skip_space();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        e.items.push_back(read_one());
        skip_space();
      }
      if (pos_ >= text_.size()) throw SyntaxError("unclosed '('", e.line, e.column);
      advance();
      return e;
    }
    while (pos_ < text_.size() && !is_delim(text_[pos_])) {
      e.atom.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_]))));
      advance();
    }
    return e;
  }

  static bool is_delim(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';';
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

std::vector<SExpr> read_sexprs(std::string_view text) { return Reader(text).read_all(); }

}  // namespace sdr
