#include "support.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "sdr/domains.hpp"
#include "sdr/belief.hpp"
#include "sdr/errors.hpp"
#include "sdr/grounder.hpp"

namespace sdr::testing {

Problem load_family(const std::string& family, const std::string& params, std::uint64_t seed) {
  const auto g = generate({family, parse_params(params), seed});
  return load_problem(g.domain, g.problem);
}

namespace {

Literal random_literal(std::mt19937_64& rng, std::size_t n) {
  return {static_cast<PropId>(rng() % n), static_cast<bool>(rng() % 2)};
}

LiteralSet random_literals(std::mt19937_64& rng, std::size_t n, std::size_t max_count) {
  LiteralSet out;
  const std::size_t count = rng() % (max_count + 1);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_literal(rng, n));
  out = normalized(std::move(out));
  if (has_complementary_pair(out)) out.clear();
  return out;
}

Formula random_init(std::mt19937_64& rng, std::size_t n) {
  std::vector<PropId> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<PropId>(i);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Formula> parts;
  std::size_t i = 0;
  while (i < n) {
    const auto kind = rng() % 5;
    if (kind <= 1 && i + 1 < n) {
      const std::size_t size = std::min<std::size_t>(2 + rng() % 2, n - i);
      std::vector<Literal> group;
      for (std::size_t j = 0; j < size; ++j) group.push_back(Literal::pos(order[i + j]));
      parts.push_back(Formula::one_of(group));
      i += size;
    } else if (kind == 2 && i + 1 < n) {
      parts.push_back(Formula::disj({Formula::literal(random_literal(rng, n)), Formula::literal(random_literal(rng, n))}));
      ++i;
    } else {
      parts.push_back(Formula::literal({order[i], static_cast<bool>(rng() % 2)}));
      ++i;
    }
  }
  return Formula::conj(std::move(parts));
}

Action random_action(std::mt19937_64& rng, std::size_t n, bool sensing, std::size_t index) {
  Action a;
  a.name = "a" + std::to_string(index);
  a.pre = random_literals(rng, n, 2);
  if (sensing) {
    a.observes.push_back(static_cast<PropId>(rng() % n));
    if (rng() % 3 == 0) {
      const auto q = static_cast<PropId>(rng() % n);
      if (q != a.observes[0]) a.observes.push_back(q);
    }
    return a;
  }
  const std::size_t count = 1 + rng() % 3;
  for (std::size_t i = 0; i < count; ++i) {
    Effect e{random_literals(rng, n, 2), random_literal(rng, n)};
    LiteralSet joint = e.condition;
    joint.insert(joint.end(), a.pre.begin(), a.pre.end());
    if (has_complementary_pair(normalized(joint))) continue;
    a.effects.push_back(std::move(e));
  }
  return a;
}

}  // namespace

Problem random_problem(std::mt19937_64& rng, const RandomProblemOptions& opts) {
  const std::size_t n = opts.num_props;
  for (;;) {
    Problem p;
    for (std::size_t i = 0; i < n; ++i) p.add_proposition("p" + std::to_string(i));
    p.set_init(random_init(rng, n));
    const auto states = enumerate_initial_states(p, opts.max_states + 1);
    if (states.size() < 2 || states.size() > opts.max_states) continue;
    std::size_t made = 0;
    for (std::size_t attempt = 0; made < opts.num_actions && attempt < 50 * opts.num_actions; ++attempt) {
      const bool sensing = std::uniform_real_distribution<double>(0, 1)(rng) < opts.sensing_share;
      Action a = random_action(rng, n, sensing, made);
      if (!a.is_sensing() && !a.changes_state()) continue;
      try {
        check_action_consistency(a, p.prop_names());
      } catch (const ConsistencyError&) {
        continue;
      }
      p.add_action(std::move(a));
      ++made;
    }
    LiteralSet goal = random_literals(rng, n, 2);
    if (goal.empty()) goal.push_back(random_literal(rng, n));
    p.set_goal(goal);
    p.set_name("random");
    return p;
  }
}

Formula random_formula(std::mt19937_64& rng, std::size_t num_props, std::size_t depth) {
  if (depth == 0 || rng() % 4 == 0) return Formula::literal(random_literal(rng, num_props));
  const auto kind = rng() % 5;
  if (kind == 0) {
    std::vector<Literal> group;
    for (std::size_t i = 0; i < 2 + rng() % 2; ++i) group.push_back(random_literal(rng, num_props));
    return Formula::one_of(group);
  }
  std::vector<Formula> children;
  for (std::size_t i = 0; i < 2 + rng() % 2; ++i) children.push_back(random_formula(rng, num_props, depth - 1));
  return kind <= 2 ? Formula::conj(std::move(children)) : Formula::disj(std::move(children));
}

RegressionCheck check_regression_exhaustive(const Problem& problem, std::mt19937_64& rng, std::size_t formulas) {
  RegressionCheck out;
  const std::size_t n = problem.num_props();
  for (const Action& a : problem.actions()) {
    for (std::size_t k = 0; k < formulas; ++k) {
      const Formula c = random_formula(rng, n);
      const Formula r = regress(c, a);
      for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        State s(n);
        for (PropId p = 0; p < n; ++p) s.set(p, (bits >> p) & 1U);
        if (!applicable(a, s)) continue;
        ++out.checks;
        if (r.evaluate(s) != c.evaluate(apply(a, s)) && out.counterexamples++ == 0) {
          out.first_failure = "regress(" + c.to_string(&problem.prop_names()) + ", " + a.name + ") = " +
                              r.to_string(&problem.prop_names()) + " wrong at " + problem.describe(s);
        }
      }
    }
  }
  return out;
}

LiteralSet known_literals(const Problem& problem, const Belief& b) {
  LiteralSet out;
  for (PropId p = 0; p < problem.num_props(); ++p) {
    for (const bool neg : {false, true}) {
      if (belief_entails(b, {p, neg})) out.push_back({p, neg});
    }
  }
  return out;
}

std::vector<ActionId> safe_actions(const Problem& problem, const Belief& b) {
  std::vector<ActionId> out;
  for (ActionId id = 0; id < problem.actions().size(); ++id) {
    const Action& a = problem.action(id);
    if (std::all_of(b.begin(), b.end(), [&](const State& s) { return applicable(a, s); })) out.push_back(id);
  }
  return out;
}

ShadowOracle::ShadowOracle(const Problem& problem)
    : problem_(problem), belief_(enumerate_initial_states(problem)) {}

void ShadowOracle::note(std::string s) {
  if (notes.size() < 5) notes.push_back(std::move(s));
}

void ShadowOracle::on_entails(const LiteralSet& lits, bool result) {
  ++queries;
  const bool expected = belief_entails_all(belief_, lits);
  if (expected != result) {
    ++disagreements;
    std::string text;
    for (Literal l : lits) text += " " + problem_.literal_name(l);
    note("entails{" + text + " } answered " + (result ? "true" : "false") + " after " +
         std::to_string(executions) + " steps");
  }
}

void ShadowOracle::on_execute(const Action& a, const Observation& o) {
  ++executions;
  if (!std::all_of(belief_.begin(), belief_.end(), [&](const State& s) { return applicable(a, s); })) {
    ++unsafe;
    note("unsafe execution of " + a.name);
    Belief kept;
    for (const auto& s : belief_) {
      if (applicable(a, s)) kept.push_back(s);
    }
    belief_ = std::move(kept);
  }
  try {
    belief_ = progress_belief(belief_, a, o);
  } catch (const Error& e) {
    ++disagreements;
    note(std::string("oracle progression failed: ") + e.what());
  }
}

namespace {

bool knows(const ClassicalProblem& cp, const State& s, Literal l) { return s.holds(cp.know(l)); }

void close_knowledge(const ClassicalProblem& cp, State& s) {
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto origin : {ClassicalAction::Origin::Refute, ClassicalAction::Origin::Merge}) {
      for (const auto& a : cp.actions) {
        if (a.origin != origin || !applicable(a, s)) continue;
        State next = apply(a, s);
        if (!(next == s)) {
          s = std::move(next);
          changed = true;
        }
      }
    }
  }
}

}  // namespace

KnowledgeCheck check_knowledge_equivalence(const Problem& problem, const State& distinguished,
                                         const std::vector<ActionId>& seq) {
  KnowledgeCheck out;
  Belief b = enumerate_initial_states(problem);
  TranslationOptions opts;
  opts.merge_style = MergeStyle::Conditional;
  opts.known = known_literals(problem, b);
  const ClassicalProblem cp = translate(problem, b, distinguished, opts);

  State cs = cp.init;
  State truth = distinguished;
  auto compare = [&](std::size_t step) {
    close_knowledge(cp, cs);
    for (PropId p = 0; p < problem.num_props(); ++p) {
      for (const bool neg : {false, true}) {
        const Literal l{p, neg};
        ++out.comparisons;
        const bool expected = belief_entails(b, l);
        if (expected != knows(cp, cs, l)) {
          if (out.counterexamples++ == 0) {
            out.first_failure = "step " + std::to_string(step) + ": " + problem.literal_name(l) +
                                (expected ? " entailed but not known" : " known but not entailed");
          }
        }
      }
    }
  };
  compare(0);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Action& a = problem.action(seq[i]);
    const auto& ca = cp.actions[*cp.find_action(a.name)];
    if (!applicable(ca, cs)) {
      if (out.counterexamples++ == 0) {
        out.first_failure = "step " + std::to_string(i + 1) + ": translated " + a.name + " not applicable";
      }
      return out;
    }
    cs = apply(ca, cs);
    b = progress_belief_from(b, a, truth);
    truth = apply(a, truth);
    compare(i + 1);
  }
  return out;
}

std::vector<ActionId> random_safe_sequence(const Problem& problem, const State& truth, std::size_t max_len,
                                           std::mt19937_64& rng) {
  std::vector<ActionId> seq;
  Belief b = enumerate_initial_states(problem);
  State t = truth;
  const std::size_t len = rng() % (max_len + 1);
  while (seq.size() < len) {
    const auto options = safe_actions(problem, b);
    if (options.empty()) break;
    const ActionId id = options[rng() % options.size()];
    b = progress_belief_from(b, problem.action(id), t);
    t = apply(problem.action(id), t);
    seq.push_back(id);
  }
  return seq;
}

bool belief_branch_solvable(const Problem& problem, const State& truth) {
  struct Node {
    Belief b;
    State t;
  };
  auto key = [](Belief b, const State& t) {
    std::sort(b.begin(), b.end());
    b.push_back(t);
    return b;
  };
  std::set<Belief> seen;
  std::deque<Node> open;
  Belief b0 = enumerate_initial_states(problem);
  seen.insert(key(b0, truth));
  open.push_back({std::move(b0), truth});
  while (!open.empty()) {
    Node n = std::move(open.front());
    open.pop_front();
    if (belief_entails_all(n.b, problem.goal())) return true;
    for (ActionId id : safe_actions(problem, n.b)) {
      const Action& a = problem.action(id);
      Node next{progress_belief_from(n.b, a, n.t), apply(a, n.t)};
      std::sort(next.b.begin(), next.b.end());
      next.b.erase(std::unique(next.b.begin(), next.b.end()), next.b.end());
      if (seen.insert(key(next.b, next.t)).second) open.push_back(std::move(next));
    }
  }
  return false;
}

}  // namespace sdr::testing
