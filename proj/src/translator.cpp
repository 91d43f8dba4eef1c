#include "sdr/translator.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sdr/errors.hpp"

namespace sdr {

Literal ClassicalProblem::know(Literal l) const {
  if (always_known[l.prop]) return l;
  return Literal::pos(l.negated ? know_false_ids[l.prop] : know_true_ids[l.prop]);
}

Literal ClassicalProblem::not_known_false(Literal l) const {
  if (always_known[l.prop]) return l;
  return ~know(~l);
}

Literal ClassicalProblem::conditional(Literal l, std::size_t s) const {
  if (always_known[l.prop]) return l;
  return {cond_ids[l.prop][s], l.negated};
}

std::optional<std::size_t> ClassicalProblem::find_action(const std::string& name) const {
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<bool> detect_always_known(const Problem& problem, const std::optional<LiteralSet>& known) {
  std::vector<bool> ak(problem.num_props(), false);
  const LiteralSet seed = known ? *known : problem.init().top_level_units();
  for (Literal l : seed) ak[l.prop] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& a : problem.actions()) {
      for (const auto& e : a.effects) {
        if (!ak[e.effect.prop]) continue;
        const bool uncertain =
            std::any_of(e.condition.begin(), e.condition.end(), [&](Literal c) { return !ak[c.prop]; });
        if (uncertain) {
          ak[e.effect.prop] = false;
          changed = true;
        }
      }
    }
  }
  return ak;
}

namespace {

class Translator {
 public:
  Translator(const Problem& p, const std::vector<State>& sample, std::size_t dist, const TranslationOptions& opts)
      : p_(p), sample_(sample), opts_(opts) {
    cp_.num_base = p.num_props();
    cp_.num_states = sample.size();
    cp_.distinguished = dist;
    if (opts.prune_always_known) {
      cp_.always_known = detect_always_known(p, opts.known);
    } else {
      cp_.always_known.assign(p.num_props(), false);
    }
  }

  ClassicalProblem run() {
    make_propositions();
    make_init();
    for (ActionId a = 0; a < p_.actions().size(); ++a) translate_action(a);
    if (opts_.separate_refutation) make_refutations();
    make_merges();
    for (Literal g : p_.goal()) cp_.goal.push_back(cp_.know(g));
    cp_.goal = normalized(std::move(cp_.goal));
    return std::move(cp_);
  }

 private:
  PropId add(std::string name, KProposition kp) {
    cp_.names.push_back(std::move(name));
    cp_.props.push_back(kp);
    return static_cast<PropId>(cp_.names.size() - 1);
  }

  void make_propositions() {
    const std::size_t k = p_.num_props();
    using K = KProposition::Kind;
    for (PropId p = 0; p < k; ++p) add(p_.prop_name(p), {K::Base, p, 0});
    cp_.know_true_ids.assign(k, 0);
    cp_.know_false_ids.assign(k, 0);
    cp_.cond_ids.assign(k, {});
    for (PropId p = 0; p < k; ++p) {
      if (cp_.always_known[p]) continue;
      cp_.know_true_ids[p] = add("K-" + p_.prop_name(p), {K::KnowTrue, p, 0});
      cp_.know_false_ids[p] = add("KN-" + p_.prop_name(p), {K::KnowFalse, p, 0});
    }
    for (PropId p = 0; p < k; ++p) {
      if (cp_.always_known[p]) continue;
      for (std::size_t s = 0; s < sample_.size(); ++s) {
        cp_.cond_ids[p].push_back(add(p_.prop_name(p) + "--s" + std::to_string(s), {K::Conditional, p, s}));
      }
    }
    for (std::size_t s = 0; s < sample_.size(); ++s) {
      cp_.refuted_ids.push_back(add("KN-s" + std::to_string(s), {K::RefutedState, 0, s}));
    }
  }

  void make_init() {
    cp_.init = State(cp_.size());
    const State& dist = sample_[cp_.distinguished];
    for (PropId p = 0; p < p_.num_props(); ++p) {
      cp_.init.set(p, dist.test(p));
      if (cp_.always_known[p]) continue;
      for (std::size_t s = 0; s < sample_.size(); ++s) cp_.init.set(cp_.cond_ids[p][s], sample_[s].test(p));
    }
    const LiteralSet known = opts_.known ? *opts_.known : p_.init().top_level_units();
    for (Literal l : known) {
      if (!cp_.always_known[l.prop]) cp_.init.set(cp_.know(l).prop);
    }
  }

  static void push(std::vector<CondEffect>& out, LiteralSet cond, Literal effect) {
    cond = normalized(std::move(cond));
    if (has_complementary_pair(cond)) return;
    out.push_back({std::move(cond), {}, effect});
  }

  template <typename F>
  LiteralSet map(const LiteralSet& c, F f) const {
    LiteralSet out;
    for (Literal l : c) out.push_back(f(l));
    return out;
  }

  void translate_action(ActionId id) {
    const Action& a = p_.action(id);
    ClassicalAction ca;
    ca.name = a.name;
    ca.origin = ClassicalAction::Origin::Original;
    ca.source = id;
    for (Literal l : a.pre) {
      ca.pre.push_back(l);
      ca.pre.push_back(cp_.know(l));
    }
    ca.pre = normalized(std::move(ca.pre));

    for (const auto& e : a.effects) {
      push(ca.effects, e.condition, e.effect);
      if (cp_.always_known[e.effect.prop]) continue;
      for (std::size_t s = 0; s < sample_.size(); ++s) {
        push(ca.effects, map(e.condition, [&](Literal l) { return cp_.conditional(l, s); }),
             cp_.conditional(e.effect, s));
      }
      push(ca.effects, map(e.condition, [&](Literal l) { return cp_.know(l); }), cp_.know(e.effect));
      push(ca.effects, map(e.condition, [&](Literal l) { return cp_.not_known_false(l); }),
           cp_.not_known_false(e.effect));
    }
    for (PropId p : a.observes) {
      if (cp_.always_known[p]) continue;
      for (Literal l : {Literal::pos(p), Literal::neg(p)}) {
        push(ca.effects, {l}, cp_.know(l));
        if (opts_.separate_refutation) continue;
        for (std::size_t s = 0; s < sample_.size(); ++s) {
          push(ca.effects, {l, cp_.conditional(~l, s)}, cp_.refuted(s));
        }
      }
    }
    cp_.actions.push_back(std::move(ca));
  }

  void make_refutations() {
    std::set<PropId> observable;
    for (const auto& a : p_.actions()) observable.insert(a.observes.begin(), a.observes.end());
    for (PropId p : observable) {
      if (cp_.always_known[p]) continue;
      for (std::size_t s = 0; s < sample_.size(); ++s) {
        for (Literal l : {Literal::pos(p), Literal::neg(p)}) {
          ClassicalAction r;
          r.name = std::string(l.negated ? "refute-not-" : "refute-") + p_.prop_name(p) + "-s" + std::to_string(s);
          r.origin = ClassicalAction::Origin::Refute;
          // Knowing l, rather than the distinguished value of l, keeps the
          // action from refuting s before anything was sensed.
          r.pre = normalized({cp_.know(l), cp_.conditional(~l, s), ~cp_.refuted(s)});
          r.effects.push_back({{}, {}, cp_.refuted(s)});
          cp_.actions.push_back(std::move(r));
        }
      }
    }
  }

  void make_merges() {
    for (PropId p = 0; p < p_.num_props(); ++p) {
      if (cp_.always_known[p]) continue;
      for (Literal l : {Literal::pos(p), Literal::neg(p)}) {
        ClassicalAction m;
        m.name = std::string(l.negated ? "merge-not-" : "merge-") + p_.prop_name(p);
        m.origin = ClassicalAction::Origin::Merge;
        std::vector<Clause> test;
        for (std::size_t s = 0; s < sample_.size(); ++s) {
          test.push_back(normalized({cp_.conditional(l, s), cp_.refuted(s)}));
        }
        if (opts_.merge_style == MergeStyle::Conditional) {
          m.effects.push_back({{}, std::move(test), cp_.know(l)});
        } else {
          m.pre.push_back(~cp_.know(l));
          m.pre_disj = std::move(test);
          m.effects.push_back({{}, {}, cp_.know(l)});
        }
        cp_.actions.push_back(std::move(m));
      }
    }
    if (opts_.merge_style == MergeStyle::Cases) cp_ = to_cases(std::move(cp_));
  }

  const Problem& p_;
  const std::vector<State>& sample_;
  TranslationOptions opts_;
  ClassicalProblem cp_;
};

// Every way of picking one literal per clause, skipping contradictory picks.
std::vector<LiteralSet> cases_of(const std::vector<Clause>& clauses) {
  std::vector<LiteralSet> acc{LiteralSet{}};
  for (const auto& c : clauses) {
    std::vector<LiteralSet> next;
    for (const auto& partial : acc) {
      for (Literal l : c) {
        LiteralSet x = partial;
        x.push_back(l);
        x = normalized(std::move(x));
        if (!has_complementary_pair(x)) next.push_back(std::move(x));
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    acc = std::move(next);
  }
  return acc;
}

}  // namespace

ClassicalProblem translate(const Problem& problem, const std::vector<State>& sample, const State& distinguished,
                           const TranslationOptions& opts) {
  auto it = std::find(sample.begin(), sample.end(), distinguished);
  if (it == sample.end()) throw std::invalid_argument("distinguished state is not in the sample");
  return Translator(problem, sample, static_cast<std::size_t>(it - sample.begin()), opts).run();
}

ClassicalProblem augment_state_refutation(ClassicalProblem cp) {
  for (std::size_t s = 0; s < cp.num_states; ++s) {
    if (s != cp.distinguished) cp.goal.push_back(cp.refuted(s));
  }
  cp.goal = normalized(std::move(cp.goal));
  return cp;
}

ClassicalProblem to_cases(ClassicalProblem cp) {
  for (auto& a : cp.actions) {
    const auto guard = cases_of(a.pre_disj);
    a.pre_disj.clear();
    std::vector<CondEffect> effects;
    for (const auto& e : a.effects) {
      for (const auto& g : guard) {
        for (const auto& c : cases_of(e.cond_disj)) {
          LiteralSet cond = e.cond;
          cond.insert(cond.end(), g.begin(), g.end());
          cond.insert(cond.end(), c.begin(), c.end());
          cond = normalized(std::move(cond));
          if (!has_complementary_pair(cond)) effects.push_back({std::move(cond), {}, e.effect});
        }
      }
    }
    a.effects = std::move(effects);
  }
  return cp;
}

namespace {

std::string lit_text(const ClassicalProblem& cp, Literal l) {
  return l.negated ? "(not (" + cp.names[l.prop] + "))" : "(" + cp.names[l.prop] + ")";
}

std::string conj_text(const ClassicalProblem& cp, const LiteralSet& ls) {
  std::string out = "(and";
  for (Literal l : ls) out += " " + lit_text(cp, l);
  return out + ")";
}

}  // namespace

ClassicalText emit_classical(const ClassicalProblem& input) {
  const ClassicalProblem cp = to_cases(input);
  std::ostringstream d;
  d << "(define (domain classical)\n";
  d << "  (:requirements :strips :negative-preconditions :conditional-effects)\n";
  d << "  (:predicates";
  for (const auto& n : cp.names) d << "\n    (" << n << ")";
  d << ")\n";
  for (const auto& a : cp.actions) {
    d << "  (:action " << a.name << "\n    :parameters ()\n";
    if (!a.pre.empty()) d << "    :precondition " << conj_text(cp, a.pre) << "\n";
    d << "    :effect (and";
    for (const auto& e : a.effects) {
      if (e.cond.empty()) {
        d << "\n      " << lit_text(cp, e.effect);
      } else {
        d << "\n      (when " << conj_text(cp, e.cond) << " " << lit_text(cp, e.effect) << ")";
      }
    }
    d << ")\n  )\n";
  }
  d << ")\n";

  std::ostringstream p;
  p << "(define (problem classical-problem)\n  (:domain classical)\n  (:init (and";
  for (PropId i = 0; i < cp.size(); ++i) {
    if (cp.init.test(i)) p << "\n    (" << cp.names[i] << ")";
  }
  p << "))\n  (:goal " << conj_text(cp, cp.goal) << ")\n)\n";
  return {d.str(), p.str()};
}

}  // namespace sdr
