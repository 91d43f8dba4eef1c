#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sdr {

struct TypedName {
  std::string name;
  std::string type = "object";
  friend bool operator==(const TypedName&, const TypedName&) = default;
};

struct TypeDecl {
  std::string name;
  std::string parent = "object";
  friend bool operator==(const TypeDecl&, const TypeDecl&) = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> params;
  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

// Arguments are variables ("?x") or object/constant names.
struct Atom {
  std::string predicate;
  std::vector<std::string> args;
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct LiftedLiteral {
  Atom atom;
  bool negated = false;
  friend bool operator==(const LiftedLiteral&, const LiftedLiteral&) = default;
};

// One `when` block, or a single unconditional literal when condition is empty.
struct LiftedEffect {
  std::vector<LiftedLiteral> condition;
  std::vector<LiftedLiteral> effects;
  friend bool operator==(const LiftedEffect&, const LiftedEffect&) = default;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> parameters;
  std::vector<LiftedLiteral> precondition;
  std::vector<LiftedEffect> effects;
  std::vector<Atom> observes;
  friend bool operator==(const ActionSchema&, const ActionSchema&) = default;
};

struct LiftedDomain {
  std::string name;
  std::vector<TypeDecl> types;
  std::vector<TypedName> constants;
  std::vector<PredicateDecl> predicates;
  std::vector<ActionSchema> actions;
  friend bool operator==(const LiftedDomain&, const LiftedDomain&) = default;
};

// Initial-state formula over ground atoms.
struct InitNode {
  enum class Kind { Atom, Not, And, Or, OneOf };
  Kind kind = Kind::And;
  Atom atom;
  std::vector<InitNode> children;
  friend bool operator==(const InitNode&, const InitNode&) = default;
};

struct LiftedProblem {
  std::string name;
  std::string domain;
  std::vector<TypedName> objects;
  InitNode init;
  std::vector<LiftedLiteral> goal;
  friend bool operator==(const LiftedProblem&, const LiftedProblem&) = default;
};

// Throws SyntaxError (with line/column) on malformed input and SemanticError
// for undeclared predicates, objects, types or unbound variables.
LiftedDomain parse_domain(std::string_view text);
LiftedProblem parse_problem(std::string_view text, const LiftedDomain& domain);
std::pair<LiftedDomain, LiftedProblem> parse(std::string_view domain_text, std::string_view problem_text);

std::string to_text(const LiftedDomain& domain);
std::string to_text(const LiftedProblem& problem);

}  // namespace sdr
