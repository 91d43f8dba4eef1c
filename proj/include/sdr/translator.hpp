#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdr/model.hpp"

namespace sdr {

struct KProposition {
  enum class Kind { Base, KnowTrue, KnowFalse, Conditional, RefutedState };
  Kind kind = Kind::Base;
  PropId base = 0;        // original proposition (unused for RefutedState)
  std::size_t state = 0;  // index into S' for Conditional and RefutedState
};

struct CondEffect {
  LiteralSet cond;
  std::vector<Clause> cond_disj;  // extra conjunction of disjunctions
  Literal effect;
};

struct ClassicalAction {
  enum class Origin { Original, Merge, Refute };

  std::string name;
  LiteralSet pre;
  std::vector<Clause> pre_disj;
  std::vector<CondEffect> effects;
  Origin origin = Origin::Original;
  ActionId source = 0;  // original action for Origin::Original
};

enum class MergeStyle {
  Disjunctive,  // precondition l/s or K-not-s for every s
  Conditional,  // no precondition; the same test guards the effect
  Cases,        // guarded effect split into conjunctive cases
};

struct TranslationOptions {
  MergeStyle merge_style = MergeStyle::Disjunctive;
  // Refutations as standalone actions instead of sensing-action effects.
  bool separate_refutation = true;
  // Literals known to hold in every possible state now. Used to seed the
  // always-known analysis; defaults to the unit literals of the initial formula.
  std::optional<LiteralSet> known;
  // Drop the always-known optimisation (every proposition gets K and p/s copies).
  bool prune_always_known = true;
};

class ClassicalProblem {
 public:
  std::vector<std::string> names;
  std::vector<KProposition> props;
  std::vector<ClassicalAction> actions;
  State init;
  LiteralSet goal;

  std::size_t num_base = 0;
  std::size_t num_states = 0;
  std::size_t distinguished = 0;
  std::vector<bool> always_known;  // per original proposition

  std::size_t size() const { return names.size(); }

  // Classical literal standing for "l is known".
  Literal know(Literal l) const;
  // "l is not known to be false".
  Literal not_known_false(Literal l) const;
  // l under the assumption that state s of S' was the initial state.
  Literal conditional(Literal l, std::size_t s) const;
  Literal refuted(std::size_t s) const { return Literal::pos(refuted_ids[s]); }
  bool has_knowledge(PropId p) const { return !always_known[p]; }

  std::optional<std::size_t> find_action(const std::string& name) const;

  // Proposition ids; entries for always-known propositions are unused.
  std::vector<PropId> know_true_ids;
  std::vector<PropId> know_false_ids;
  std::vector<std::vector<PropId>> cond_ids;  // [p][s]
  std::vector<PropId> refuted_ids;
};

// Propositions whose value is fixed by `known` (or by the unit literals of
// the initial formula) and which no effect can make uncertain.
std::vector<bool> detect_always_known(const Problem& problem, const std::optional<LiteralSet>& known = std::nullopt);

// P_c(S', s'). Throws std::invalid_argument when s' is not in S'.
ClassicalProblem translate(const Problem& problem, const std::vector<State>& sample, const State& distinguished,
                           const TranslationOptions& opts = {});

// Adds K-not-s for every sampled state other than the distinguished one.
ClassicalProblem augment_state_refutation(ClassicalProblem cp);

// Rewrites disjunctive preconditions and guards into conjunctive cases.
ClassicalProblem to_cases(ClassicalProblem cp);

struct ClassicalText {
  std::string domain;
  std::string problem;
};

ClassicalText emit_classical(const ClassicalProblem& cp);

}  // namespace sdr
