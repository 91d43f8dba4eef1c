#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdr/formula.hpp"
#include "sdr/literal.hpp"
#include "sdr/state.hpp"

namespace sdr {

using ActionId = std::uint32_t;

struct Effect {
  LiteralSet condition;  // conjunction; empty means unconditional
  Literal effect;

  friend bool operator==(const Effect&, const Effect&) = default;
};

struct Action {
  std::string name;
  LiteralSet pre;
  std::vector<Effect> effects;
  std::vector<PropId> observes;

  bool is_sensing() const { return !observes.empty(); }
  bool changes_state() const { return !effects.empty(); }
};

// Full assignment to obs(a), in the order of Action::observes. Empty for
// actions that observe nothing.
struct Observation {
  LiteralSet values;

  bool is_null() const { return values.empty(); }
  friend bool operator==(const Observation&, const Observation&) = default;
};

// Grounded ⟨P, A, φ_I, G⟩. Immutable after construction.
class Problem {
 public:
  Problem() = default;

  PropId add_proposition(const std::string& name);
  ActionId add_action(Action a);
  void set_init(Formula init) { init_ = std::move(init); }
  void set_goal(LiteralSet goal) { goal_ = std::move(goal); }
  void set_name(std::string name) { name_ = std::move(name); }

  const std::string& name() const { return name_; }
  std::size_t num_props() const { return prop_names_.size(); }
  const std::vector<std::string>& prop_names() const { return prop_names_; }
  const std::string& prop_name(PropId p) const { return prop_names_[p]; }
  std::optional<PropId> find_prop(const std::string& name) const;
  PropId prop(const std::string& name) const;  // throws if absent

  const std::vector<Action>& actions() const { return actions_; }
  const Action& action(ActionId id) const { return actions_[id]; }
  std::optional<ActionId> find_action(const std::string& name) const;
  ActionId action_id(const std::string& name) const;  // throws if absent

  const Formula& init() const { return init_; }
  const LiteralSet& goal() const { return goal_; }

  Literal lit(const std::string& name, bool value = true) const { return {prop(name), !value}; }
  std::string literal_name(Literal l) const;
  State make_state(std::span<const std::string> true_props) const;
  std::string describe(const State& s) const;  // names of true propositions

 private:
  std::string name_;
  std::vector<std::string> prop_names_;
  std::unordered_map<std::string, PropId> prop_index_;
  std::vector<Action> actions_;
  std::unordered_map<std::string, ActionId> action_index_;
  Formula init_;
  LiteralSet goal_;
};

using Belief = std::vector<State>;

bool applicable(const Action& a, const State& s);

// a(s). Throws PreconditionViolated when s does not satisfy pre(a).
State apply(const Action& a, const State& s);

// Values of obs(a) in s, taken before effects.
Observation observe(const Action& a, const State& s);

// b_{a,o} by enumeration. Throws UnsafeAction if a is not applicable in some
// state of b, ImpossibleObservation if no state produces o.
Belief progress_belief(const Belief& b, const Action& a, const Observation& o);

// b_{a,s}: progress keeping states that agree with s on obs(a).
Belief progress_belief_from(const Belief& b, const Action& a, const State& truth);

// Brute-force model enumeration of φ_I (backtracking over the propositions the
// formula mentions, three-valued pruning). Propositions the formula never
// mentions are false. Stops after `limit` models. Independent of the SAT engine
// so it can serve as a test oracle.
std::vector<State> enumerate_initial_states(const Problem& problem, std::size_t limit = 1U << 20);

bool belief_entails(const Belief& b, Literal l);
bool belief_entails_all(const Belief& b, std::span<const Literal> lits);

// Consistency of an action: every c ∧ pre is consistent, and any two effects
// whose conditions (with pre) are jointly satisfiable write consistent
// literals. Throws ConsistencyError naming the action and the effect pair.
void check_action_consistency(const Action& a, const std::vector<std::string>& prop_names);

}  // namespace sdr
