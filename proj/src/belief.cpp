#include "sdr/belief.hpp"

#include <algorithm>
#include <random>

#include "sdr/errors.hpp"

namespace sdr {

LiteralSet Psbs::known() const {
  LiteralSet out;
  for (std::size_t p = 0; p < value.size(); ++p) {
    if (value[p] >= 0) out.push_back({static_cast<PropId>(p), value[p] == 0});
  }
  return out;
}

namespace {

Formula regress_literal(Literal l, const Action& a) {
  std::vector<Formula> adds{Formula::literal(l)};
  std::vector<Formula> keeps;
  bool touched = false;
  for (const auto& e : a.effects) {
    if (e.effect.prop != l.prop) continue;
    touched = true;
    if (e.effect == l) {
      if (e.condition.empty()) return Formula::truth();
      adds.push_back(Formula::conj_of(e.condition));
    } else {
      if (e.condition.empty()) return Formula::falsity();
      LiteralSet neg;
      for (Literal c : e.condition) neg.push_back(~c);
      keeps.push_back(Formula::disj_of(neg));
    }
  }
  if (!touched) return Formula::literal(l);
  keeps.push_back(Formula::disj(std::move(adds)));
  return Formula::conj(std::move(keeps));
}

// -1 unknown, 0 some literal known false, 1 all known true.
int status(const LiteralSet& cond, const Psbs& k) {
  bool all = true;
  for (Literal l : cond) {
    if (k.refutes(l)) return 0;
    if (!k.knows(l)) all = false;
  }
  return all ? 1 : -1;
}

bool known_except(const LiteralSet& cond, Literal skip, const Psbs& k) {
  return std::all_of(cond.begin(), cond.end(), [&](Literal l) { return l == skip || k.knows(l); });
}

bool contains(const LiteralSet& cond, Literal l) { return std::find(cond.begin(), cond.end(), l) != cond.end(); }

}  // namespace

Formula regress(const Formula& c, const Action& a) {
  using K = Formula::Kind;
  switch (c.kind()) {
    case K::True:
    case K::False:
      return c;
    case K::Lit:
      return regress_literal(c.lit(), a);
    case K::And:
    case K::Or: {
      std::vector<Formula> kids;
      for (const auto& k : c.children()) kids.push_back(regress(k, a));
      return c.kind() == K::And ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    case K::OneOf: {
      // Exactly one: at least one, and no two.
      const auto lits = c.one_of_literals();
      std::vector<Formula> parts{regress(Formula::disj_of(lits), a)};
      for (std::size_t i = 0; i < lits.size(); ++i) {
        for (std::size_t j = i + 1; j < lits.size(); ++j) {
          parts.push_back(regress(Formula::disj_of({~lits[i], ~lits[j]}), a));
        }
      }
      return Formula::conj(std::move(parts));
    }
  }
  return c;
}

Formula regress_history(const Formula& c, const Problem& problem, std::span<const HistoryStep> history) {
  Formula f = c;
  for (std::size_t i = history.size(); i-- > 0;) f = regress(f, problem.action(history[i].action));
  return f;
}

Psbs progress_psbs(const Psbs& before, const Action& a) {
  Psbs after = before;
  std::vector<PropId> props;
  for (const auto& e : a.effects) props.push_back(e.effect.prop);
  std::sort(props.begin(), props.end());
  props.erase(std::unique(props.begin(), props.end()), props.end());

  for (PropId p : props) {
    const Literal pos = Literal::pos(p);
    const Literal neg = Literal::neg(p);
    std::vector<const LiteralSet*> adds;
    std::vector<const LiteralSet*> dels;
    for (const auto& e : a.effects) {
      if (e.effect.prop != p) continue;
      (e.effect.negated ? dels : adds).push_back(&e.condition);
    }
    auto fires = [&](const std::vector<const LiteralSet*>& cs) {
      return std::any_of(cs.begin(), cs.end(), [&](const LiteralSet* c) { return status(*c, before) == 1; });
    };
    auto possible = [&](const std::vector<const LiteralSet*>& cs) {
      std::vector<const LiteralSet*> out;
      for (const auto* c : cs) {
        if (status(*c, before) != 0) out.push_back(c);
      }
      return out;
    };
    std::int8_t v = before.value[p];
    if (fires(adds)) {
      v = 1;
    } else if (fires(dels)) {
      v = 0;
    } else {
      const auto pa = possible(adds);
      const auto pd = possible(dels);
      if (v == 1 && !pd.empty()) {
        v = -1;
      } else if (v == 0 && !pa.empty()) {
        v = -1;
      } else if (v == -1) {
        // Deleted whenever p holds and never added while it does not.
        const bool del_if_p = std::any_of(dels.begin(), dels.end(), [&](const LiteralSet* c) {
          return known_except(*c, pos, before);
        });
        const bool no_add_if_not_p =
            std::all_of(pa.begin(), pa.end(), [&](const LiteralSet* c) { return contains(*c, pos); });
        const bool add_if_not_p = std::any_of(adds.begin(), adds.end(), [&](const LiteralSet* c) {
          return known_except(*c, neg, before);
        });
        const bool no_del_if_p =
            std::all_of(pd.begin(), pd.end(), [&](const LiteralSet* c) { return contains(*c, neg); });
        if (del_if_p && no_add_if_not_p) {
          v = 0;
        } else if (add_if_not_p && no_del_if_p) {
          v = 1;
        }
      }
    }
    after.value[p] = v;
  }
  return after;
}

BeliefContext::BeliefContext(const Problem& problem) : problem_(&problem) {
  phi_.num_vars = problem.num_props();
  add_formula(phi_, problem.init());
  // Closed world: propositions the initial formula never mentions are false.
  std::vector<PropId> mentioned;
  problem.init().collect_props(mentioned);
  std::vector<bool> is_mentioned(problem.num_props(), false);
  for (PropId q : mentioned) is_mentioned[q] = true;
  for (PropId q = 0; q < problem.num_props(); ++q) {
    if (!is_mentioned[q]) phi_.clauses.push_back({Literal::neg(q)});
  }
  psbs_.push_back(Psbs{std::vector<std::int8_t>(problem.num_props(), -1)});
  simplify_phi();
}

void BeliefContext::add_known(std::size_t step, Literal l) {
  auto& v = psbs_[step].value[l.prop];
  const std::int8_t want = l.negated ? 0 : 1;
  if (v == want) return;
  if (v >= 0) {
    throw InconsistentBelief("literal " + problem_->literal_name(l) + " contradicts what is known at step " +
                             std::to_string(step));
  }
  v = want;
}

void BeliefContext::simplify_phi() {
  std::vector<std::int8_t> vals;
  if (!Dpll(phi_).propagate_units(vals)) throw InconsistentBelief("initial belief formula is unsatisfiable");
  auto val = [&](Literal l) {
    const int v = vals[l.prop];
    return v < 0 ? -1 : (v == (l.negated ? 0 : 1) ? 1 : 0);
  };
  std::vector<Clause> clauses;
  for (const auto& c : phi_.clauses) {
    Clause kept;
    bool sat = false;
    for (Literal l : c) {
      const int v = val(l);
      if (v == 1) {
        sat = true;
        break;
      }
      if (v < 0) kept.push_back(l);
    }
    if (!sat) clauses.push_back(std::move(kept));
  }
  std::vector<std::vector<Literal>> oneofs;
  for (const auto& g : phi_.oneofs) {
    std::vector<Literal> kept;
    bool done = false;
    for (Literal l : g) {
      const int v = val(l);
      if (v == 1) done = true;
      if (v < 0) kept.push_back(l);
    }
    if (done) continue;
    if (kept.size() == 2) {
      clauses.push_back({kept[0], kept[1]});
      clauses.push_back({~kept[0], ~kept[1]});
    } else {
      oneofs.push_back(std::move(kept));
    }
  }
  for (std::size_t p = 0; p < vals.size(); ++p) {
    if (vals[p] >= 0) clauses.push_back({Literal{static_cast<PropId>(p), vals[p] == 0}});
  }
  phi_.clauses = remove_subsumed(std::move(clauses));
  phi_.oneofs = std::move(oneofs);
  for (std::size_t p = 0; p < problem_->num_props(); ++p) {
    if (vals[p] >= 0) add_known(0, {static_cast<PropId>(p), vals[p] == 0});
  }
}

void BeliefContext::reprogress() {
  for (std::size_t t = 0; t < history_.size(); ++t) {
    const Psbs next = progress_psbs(psbs_[t], problem_->action(history_[t].action));
    for (std::size_t p = 0; p < next.value.size(); ++p) {
      if (next.value[p] >= 0) add_known(t + 1, {static_cast<PropId>(p), next.value[p] == 0});
    }
  }
}

Formula BeliefContext::regress_cached(const Formula& c) const {
  Formula f = c.simplified(psbs_.back().value);
  for (std::size_t t = history_.size(); t-- > 0;) {
    if (f.is_true() || f.is_false()) break;
    f = regress(f, problem_->action(history_[t].action)).simplified(psbs_[t].value);
  }
  return f;
}

void BeliefContext::append(ActionId a) {
  history_.push_back({a, {}});
  psbs_.push_back(progress_psbs(psbs_.back(), problem_->action(a)));
}

void BeliefContext::assimilate_observation(const Observation& o) {
  if (history_.empty()) throw InconsistentBelief("observation without an action");
  const std::size_t obs_step = history_.size() - 1;
  history_.back().observation = o;
  bool changed = false;
  for (Literal l : o.values) {
    if (psbs_[obs_step].refutes(l)) {
      throw InconsistentBelief("observed " + problem_->literal_name(l) + " contradicts the belief");
    }
    if (psbs_[obs_step].knows(l)) continue;
    Formula f = Formula::literal(l);
    for (std::size_t t = obs_step; t-- > 0;) {
      f = regress(f, problem_->action(history_[t].action)).simplified(psbs_[t].value);
      if (f.is_false()) {
        throw InconsistentBelief("observed " + problem_->literal_name(l) + " is impossible given the history");
      }
      if (f.is_true()) break;
      for (Literal u : f.top_level_units()) add_known(t, u);
    }
    add_known(obs_step, l);
    if (!f.is_true()) add_formula(phi_, f);
    changed = true;
  }
  if (!changed) return;
  simplify_phi();
  reprogress();
}

void BeliefContext::execute(ActionId a, const Observation& o) {
  append(a);
  if (!o.is_null()) assimilate_observation(o);
}

std::optional<State> BeliefContext::find_counterexample(const LiteralSet& lits) {
  ++stats_.queries;
  if (std::all_of(lits.begin(), lits.end(), [&](Literal l) { return current().knows(l); })) {
    ++stats_.cache_hits;
    return std::nullopt;
  }
  LiteralSet neg;
  for (Literal l : lits) neg.push_back(~l);
  const Formula f = regress_cached(Formula::disj_of(neg));
  if (!f.is_false()) {
    ++stats_.sat_calls;
    SemiCnf q = phi_;
    add_formula(q, f);
    if (auto model = Dpll(q).solve()) return project(*model);
  }
  for (Literal l : lits) add_known(psbs_.size() - 1, l);
  return std::nullopt;
}

bool BeliefContext::entails(const LiteralSet& lits) {
  // Some possible state always exists, so a refuted literal is not entailed.
  if (std::any_of(lits.begin(), lits.end(), [&](Literal l) { return current().refutes(l); })) {
    ++stats_.queries;
    ++stats_.cache_hits;
    return false;
  }
  return !find_counterexample(lits).has_value();
}

State BeliefContext::project(const std::vector<bool>& model) const {
  State s(problem_->num_props());
  for (std::size_t p = 0; p < problem_->num_props(); ++p) {
    if (model[p]) s.set(static_cast<PropId>(p));
  }
  return s;
}

bool BeliefContext::consistent_initial(const State& s) const {
  SemiCnf q = phi_;
  for (std::size_t p = 0; p < problem_->num_props(); ++p) {
    q.clauses.push_back({Literal{static_cast<PropId>(p), !s.test(static_cast<PropId>(p))}});
  }
  return Dpll(q).solve().has_value();
}

std::vector<State> BeliefContext::sample_initial_states(std::size_t n, std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  Dpll solver(phi_);
  std::vector<State> out;
  while (out.size() < n) {
    auto model = solver.solve(&rng);
    if (!model) break;
    Clause block;
    for (PropId v = 0; v < problem_->num_props(); ++v) block.push_back({v, (*model)[v]});
    out.push_back(project(*model));
    solver.add_clause(std::move(block));
  }
  if (out.empty()) throw InconsistentBelief("no initial state satisfies the belief formula");
  return out;
}

std::vector<State> BeliefContext::enumerate_initial_states(std::size_t limit) const {
  std::vector<State> out;
  Dpll(phi_).enumerate(limit, [&](const std::vector<bool>& m) {
    out.push_back(project(m));
    return true;
  });
  return out;
}

State BeliefContext::progress(const State& initial) const {
  State s = initial;
  for (const auto& h : history_) s = apply(problem_->action(h.action), s);
  return s;
}

}  // namespace sdr
