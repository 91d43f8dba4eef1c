#include "sdr/model.hpp"

#include <algorithm>
#include <functional>

#include "sdr/errors.hpp"

namespace sdr {

PropId Problem::add_proposition(const std::string& name) {
  auto it = prop_index_.find(name);
  if (it != prop_index_.end()) return it->second;
  const auto id = static_cast<PropId>(prop_names_.size());
  prop_names_.push_back(name);
  prop_index_.emplace(name, id);
  return id;
}

ActionId Problem::add_action(Action a) {
  if (action_index_.count(a.name)) throw SemanticError("duplicate action name '" + a.name + "'");
  const auto id = static_cast<ActionId>(actions_.size());
  action_index_.emplace(a.name, id);
  actions_.push_back(std::move(a));
  return id;
}

std::optional<PropId> Problem::find_prop(const std::string& name) const {
  auto it = prop_index_.find(name);
  if (it == prop_index_.end()) return std::nullopt;
  return it->second;
}

PropId Problem::prop(const std::string& name) const {
  auto p = find_prop(name);
  if (!p) throw SemanticError("unknown proposition '" + name + "'");
  return *p;
}

std::optional<ActionId> Problem::find_action(const std::string& name) const {
  auto it = action_index_.find(name);
  if (it == action_index_.end()) return std::nullopt;
  return it->second;
}

ActionId Problem::action_id(const std::string& name) const {
  auto a = find_action(name);
  if (!a) throw SemanticError("unknown action '" + name + "'");
  return *a;
}

std::string Problem::literal_name(Literal l) const {
  return l.negated ? "-" + prop_names_[l.prop] : prop_names_[l.prop];
}

State Problem::make_state(std::span<const std::string> true_props) const {
  State s(num_props());
  for (const auto& n : true_props) s.set(prop(n));
  return s;
}

std::string Problem::describe(const State& s) const {
  std::string out = "{";
  bool first = true;
  for (PropId p = 0; p < s.width(); ++p) {
    if (!s.test(p)) continue;
    if (!first) out += ' ';
    out += prop_names_[p];
    first = false;
  }
  return out + "}";
}

bool applicable(const Action& a, const State& s) { return s.holds_all(a.pre); }

State apply(const Action& a, const State& s) {
  if (!applicable(a, s)) throw PreconditionViolated("precondition of '" + a.name + "' does not hold");
  State next = s;
  // Effects are evaluated on the pre-state. Deletes first, then adds.
  for (const auto& e : a.effects) {
    if (e.effect.negated && s.holds_all(e.condition)) next.set(e.effect.prop, false);
  }
  for (const auto& e : a.effects) {
    if (!e.effect.negated && s.holds_all(e.condition)) next.set(e.effect.prop, true);
  }
  return next;
}

Observation observe(const Action& a, const State& s) {
  Observation o;
  o.values.reserve(a.observes.size());
  for (PropId p : a.observes) o.values.push_back({p, !s.test(p)});
  return o;
}

Belief progress_belief(const Belief& b, const Action& a, const Observation& o) {
  Belief out;
  for (const auto& s : b) {
    if (!applicable(a, s)) throw UnsafeAction("'" + a.name + "' is not applicable in every possible state");
    if (observe(a, s) != o) continue;
    State next = apply(a, s);
    if (std::find(out.begin(), out.end(), next) == out.end()) out.push_back(std::move(next));
  }
  if (out.empty()) throw ImpossibleObservation("observation impossible after '" + a.name + "'");
  return out;
}

Belief progress_belief_from(const Belief& b, const Action& a, const State& truth) {
  return progress_belief(b, a, observe(a, truth));
}

std::vector<State> enumerate_initial_states(const Problem& problem, std::size_t limit) {
  const Formula& init = problem.init();
  const std::size_t n = problem.num_props();
  std::vector<PropId> mentioned;
  init.collect_props(mentioned);
  std::sort(mentioned.begin(), mentioned.end());
  mentioned.erase(std::unique(mentioned.begin(), mentioned.end()), mentioned.end());

  std::vector<std::int8_t> value(n, -1);
  std::vector<bool> is_mentioned(n, false);
  for (PropId p : mentioned) is_mentioned[p] = true;
  for (PropId p = 0; p < n; ++p) {
    if (!is_mentioned[p]) value[p] = 0;
  }
  // Fix top-level units up front.
  for (Literal l : init.top_level_units()) {
    const std::int8_t v = l.negated ? 0 : 1;
    if (value[l.prop] >= 0 && value[l.prop] != v) return {};
    value[l.prop] = v;
  }
  std::vector<PropId> open;
  for (PropId p : mentioned) {
    if (value[p] < 0) open.push_back(p);
  }

  std::vector<State> out;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (out.size() >= limit) return;
    auto r = init.evaluate_partial(value);
    if (r && !*r) return;
    if (i == open.size()) {
      State s(n);
      for (PropId p = 0; p < n; ++p) s.set(p, value[p] == 1);
      if (init.evaluate(s)) out.push_back(std::move(s));
      return;
    }
    for (std::int8_t v : {std::int8_t{0}, std::int8_t{1}}) {
      value[open[i]] = v;
      rec(i + 1);
    }
    value[open[i]] = -1;
  };
  rec(0);
  return out;
}

bool belief_entails(const Belief& b, Literal l) {
  return std::all_of(b.begin(), b.end(), [&](const State& s) { return s.holds(l); });
}

bool belief_entails_all(const Belief& b, std::span<const Literal> lits) {
  return std::all_of(b.begin(), b.end(), [&](const State& s) { return s.holds_all(lits); });
}

void check_action_consistency(const Action& a, const std::vector<std::string>& prop_names) {
  auto lit_name = [&](Literal l) {
    return (l.negated ? "(not " : "(") + prop_names[l.prop] + ")";
  };
  auto effect_name = [&](const Effect& e) {
    std::string c;
    for (Literal l : e.condition) c += (c.empty() ? "" : " ") + lit_name(l);
    return "(when (and " + c + ") " + lit_name(e.effect) + ")";
  };
  if (has_complementary_pair(a.pre)) {
    throw ConsistencyError("action '" + a.name + "': precondition is inconsistent");
  }
  for (const auto& e : a.effects) {
    LiteralSet joint = a.pre;
    joint.insert(joint.end(), e.condition.begin(), e.condition.end());
    if (has_complementary_pair(joint)) {
      throw ConsistencyError("action '" + a.name + "': effect " + effect_name(e) +
                             " has a condition inconsistent with the precondition");
    }
  }
  for (std::size_t i = 0; i < a.effects.size(); ++i) {
    for (std::size_t j = i + 1; j < a.effects.size(); ++j) {
      const auto& e1 = a.effects[i];
      const auto& e2 = a.effects[j];
      if (e1.effect != ~e2.effect) continue;
      LiteralSet joint = a.pre;
      joint.insert(joint.end(), e1.condition.begin(), e1.condition.end());
      joint.insert(joint.end(), e2.condition.begin(), e2.condition.end());
      if (!has_complementary_pair(joint)) {
        throw ConsistencyError("action '" + a.name + "': effects " + effect_name(e1) + " and " +
                               effect_name(e2) + " can trigger together with inconsistent results");
      }
    }
  }
}

}  // namespace sdr
