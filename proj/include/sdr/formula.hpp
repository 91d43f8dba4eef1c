#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdr/literal.hpp"
#include "sdr/state.hpp"

namespace sdr {

// Propositional condition: a literal, a conjunction or disjunction tree, an
// exactly-one group over literals, or a constant.
//
// The smart constructors fold constants and flatten nested connectives of the
// same kind, so an And/Or built through them always has at least two children.
class Formula {
 public:
  enum class Kind : std::uint8_t { True, False, Lit, And, Or, OneOf };

  Formula() = default;

  static Formula truth() { return Formula(Kind::True); }
  static Formula falsity() { return Formula(Kind::False); }
  static Formula literal(Literal l);
  static Formula conj(std::vector<Formula> children);
  static Formula disj(std::vector<Formula> children);
  static Formula one_of(std::vector<Literal> lits);

  static Formula conj_of(const LiteralSet& lits);
  static Formula disj_of(const LiteralSet& lits);

  Kind kind() const { return kind_; }
  bool is_true() const { return kind_ == Kind::True; }
  bool is_false() const { return kind_ == Kind::False; }
  bool is_literal() const { return kind_ == Kind::Lit; }

  Literal lit() const { return lit_; }
  const std::vector<Formula>& children() const { return children_; }
  // Literals of a OneOf node.
  std::vector<Literal> one_of_literals() const;

  bool evaluate(const State& s) const;

  // Three-valued evaluation over a partial assignment: value[p] is -1 when
  // unassigned, 0 or 1 otherwise. Returns nullopt when undetermined.
  std::optional<bool> evaluate_partial(const std::vector<std::int8_t>& value) const;

  // Negation pushed to the literals. OneOf is expanded first.
  Formula negated() const;

  // Replace literals fixed by the lookup (-1 unknown, 0 false, 1 true) and fold.
  Formula simplified(const std::vector<std::int8_t>& known) const;

  // Literals l such that the formula entails l syntactically (top-level
  // conjunction members).
  LiteralSet top_level_units() const;

  void collect_props(std::vector<PropId>& out) const;

  std::string to_string(const std::vector<std::string>* names = nullptr) const;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  explicit Formula(Kind k) : kind_(k) {}

  Kind kind_ = Kind::True;
  Literal lit_{};
  std::vector<Formula> children_;
};

}  // namespace sdr
