#include "sdr/executive.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "sdr/errors.hpp"

namespace sdr {

Observation simulate_step(Simulator& sim, const Action& a) {
  if (!applicable(a, sim.hidden_)) throw SimulatorFault("precondition of '" + a.name + "' fails in the true state");
  Observation o = observe(a, sim.hidden_);
  sim.hidden_ = apply(a, sim.hidden_);
  return o;
}

bool check_safe(BeliefContext& ctx, const Action& a, std::optional<State>* witness) {
  if (a.pre.empty()) return true;
  auto w = ctx.find_counterexample(a.pre);
  if (witness) *witness = w;
  return !w.has_value();
}

namespace {

bool unknown_observable(BeliefContext& ctx, const Action& a) {
  return std::any_of(a.observes.begin(), a.observes.end(), [&](PropId p) {
    return !ctx.entails(Literal::pos(p)) && !ctx.entails(Literal::neg(p));
  });
}

}  // namespace

std::vector<ActionId> eager_sense(BeliefContext& ctx, const Problem& problem) {
  std::vector<ActionId> out;
  for (ActionId id = 0; id < problem.actions().size(); ++id) {
    const Action& a = problem.action(id);
    if (a.changes_state() || !a.is_sensing()) continue;
    if (ctx.entails(a.pre) && unknown_observable(ctx, a)) out.push_back(id);
  }
  return out;
}

namespace {

class Runner {
 public:
  Runner(const Problem& p, const State& true_init, const SdrConfig& cfg, ExecutionListener* listener)
      : p_(p), cfg_(cfg), listener_(listener), ctx_(p), sim_(p, true_init), rng_(cfg.seed) {}

  ExecutionTrace run() {
    std::size_t planning = 0;
    for (;;) {
      if (cfg_.mode == Mode::ObsBias) sense_eagerly(nullptr);
      if (entails(p_.goal())) {
        trace_.outcome = ExecutionTrace::Outcome::GoalReached;
        break;
      }
      if (limit_hit()) {
        trace_.outcome = ExecutionTrace::Outcome::ActionLimit;
        break;
      }
      if (planning++ >= cfg_.max_replans) {
        fail("replanning limit reached");
        break;
      }
      if (!plan_episode()) break;
      execute_plan();
    }
    return std::move(trace_);
  }

 private:
  struct Planned {
    ClassicalProblem cp;
    Plan plan;
    State distinguished;
  };

  bool limit_hit() const { return trace_.steps.size() >= cfg_.max_total_actions; }

  void fail(std::string why) {
    trace_.outcome = ExecutionTrace::Outcome::Failure;
    trace_.failure_reason = std::move(why);
  }

  bool entails(const LiteralSet& lits) {
    const bool r = ctx_.entails(lits);
    if (listener_) listener_->on_entails(lits, r);
    return r;
  }

  std::optional<State> counterexample(const LiteralSet& lits) {
    auto w = ctx_.find_counterexample(lits);
    if (listener_) listener_->on_entails(lits, !w.has_value());
    return w;
  }

  Observation execute(ActionId id, TraceStep::Trigger trigger) {
    const Action& a = p_.action(id);
    Observation o = simulate_step(sim_, a);
    if (listener_) listener_->on_execute(a, o);
    ctx_.execute(id, o);
    trace_.steps.push_back({id, o, trigger});
    return o;
  }

  void replan(ReplanEvent::Cause cause) {
    trace_.replan_events.push_back({trace_.steps.size(), cause});
    if (listener_) listener_->on_replan(trace_.replan_events.back());
  }

  void add_witness(const State& w) {
    if (std::find(witnesses_.begin(), witnesses_.end(), w) != witnesses_.end()) return;
    witnesses_.push_back(w);
    if (witnesses_.size() > cfg_.max_witnesses) witnesses_.erase(witnesses_.begin());
  }

  // Returns true when an eager observation contradicts the distinguished state.
  bool sense_eagerly(const State* distinguished) {
    for (ActionId id = 0; id < p_.actions().size(); ++id) {
      const Action& a = p_.action(id);
      if (a.changes_state() || !a.is_sensing()) continue;
      if (limit_hit()) return false;
      if (!entails(a.pre)) continue;
      bool unknown = false;
      for (PropId q : a.observes) {
        if (!entails({Literal::pos(q)}) && !entails({Literal::neg(q)})) unknown = true;
      }
      if (!unknown) continue;
      const Observation o = execute(id, TraceStep::Trigger::EagerSense);
      if (distinguished && o != observe(a, *distinguished)) return true;
    }
    return false;
  }

  SolveResult solve_cp(const ClassicalProblem& cp) {
    if (!cfg_.external_planner.empty()) return solve_external(cp, cfg_.external_planner, cfg_.budget);
    return solve(cp, cfg_.budget);
  }

  // Progresses initial states to now and drops duplicates.
  std::vector<State> current_states(const std::vector<State>& initial) const {
    std::vector<State> out;
    for (const auto& s : initial) {
      State now = ctx_.progress(s);
      if (std::find(out.begin(), out.end(), now) == out.end()) out.push_back(std::move(now));
    }
    return out;
  }

  std::optional<Planned> attempt(const std::vector<State>& initial, bool complete) {
    const std::size_t pick = std::uniform_int_distribution<std::size_t>(0, initial.size() - 1)(rng_);
    trace_.episodes.push_back({trace_.steps.size(), initial.size(), initial[pick], 0, complete});
    const auto sample = current_states(initial);
    const State distinguished = ctx_.progress(initial[pick]);
    TranslationOptions opts;
    opts.known = ctx_.current().known();
    ClassicalProblem cp = translate(p_, sample, distinguished, opts);
    if (cfg_.mode == Mode::StateRefutation && sample.size() > 1) {
      ClassicalProblem sr = augment_state_refutation(cp);
      auto r = solve_cp(sr);
      if (r.status == SolveResult::Status::Plan) {
        trace_.episodes.back().plan_length = r.plan.size();
        return Planned{std::move(sr), std::move(r.plan), distinguished};
      }
    }
    auto r = solve_cp(cp);
    if (r.status != SolveResult::Status::Plan) {
      last_status_ = r.status;
      return std::nullopt;
    }
    trace_.episodes.back().plan_length = r.plan.size();
    return Planned{std::move(cp), std::move(r.plan), distinguished};
  }

  std::vector<State> sample_initial() {
    std::vector<State> out;
    for (const auto& w : witnesses_) {
      if (ctx_.consistent_initial(w)) out.push_back(w);
    }
    const std::size_t want = out.size() + cfg_.sample_size;
    for (auto& s : ctx_.sample_initial_states(want, rng_())) {
      if (out.size() >= want) break;
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
    }
    return out;
  }

  bool plan_episode() {
    for (int tries = 0; tries < 2; ++tries) {
      if (auto planned = attempt(sample_initial(), false)) {
        planned_ = std::move(planned);
        return true;
      }
    }
    auto all = ctx_.enumerate_initial_states(cfg_.escalation_cap + 1);
    if (all.size() <= cfg_.escalation_cap) {
      if (auto planned = attempt(all, true)) {
        planned_ = std::move(planned);
        return true;
      }
      fail(last_status_ == SolveResult::Status::Unsolvable
               ? "goal unreachable from the states indistinguishable from the distinguished state"
               : "classical search budget exhausted on the complete translation");
      return false;
    }
    fail(last_status_ == SolveResult::Status::Unsolvable ? "sampled classical problem is unsolvable"
                                                         : "classical search budget exhausted");
    return false;
  }

  void execute_plan() {
    Planned planned = std::move(*planned_);
    planned_.reset();
    State s_prime = planned.distinguished;
    for (std::size_t idx : planned.plan) {
      const ClassicalAction& ca = planned.cp.actions[idx];
      if (ca.origin != ClassicalAction::Origin::Original) continue;
      if (cfg_.mode == Mode::ObsBias && sense_eagerly(&s_prime)) {
        replan(ReplanEvent::Cause::ObsContradictsSPrime);
        return;
      }
      if (limit_hit()) return;
      const Action& a = p_.action(ca.source);
      if (auto w = counterexample(a.pre)) {
        add_witness(*w);
        replan(ReplanEvent::Cause::UnsafePrecondition);
        return;
      }
      const Observation expected = observe(a, s_prime);
      const Observation o = execute(ca.source, TraceStep::Trigger::Planned);
      if (o != expected) {
        replan(ReplanEvent::Cause::ObsContradictsSPrime);
        return;
      }
      s_prime = apply(a, s_prime);
    }
    if (limit_hit()) return;
    if (auto w = counterexample(p_.goal())) {
      add_witness(*w);
      replan(ReplanEvent::Cause::PlanExhausted);
    }
  }

  const Problem& p_;
  SdrConfig cfg_;
  ExecutionListener* listener_;
  BeliefContext ctx_;
  Simulator sim_;
  std::mt19937_64 rng_;
  ExecutionTrace trace_;
  std::vector<State> witnesses_;
  std::optional<Planned> planned_;
  SolveResult::Status last_status_ = SolveResult::Status::Unsolvable;
};

}  // namespace

ExecutionTrace run_sdr(const Problem& problem, const State& true_init, const SdrConfig& cfg,
                       ExecutionListener* listener) {
  if (cfg.sample_size == 0) throw InvalidParams("sample size must be at least 1");
  return Runner(problem, true_init, cfg, listener).run();
}

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Plain:
      return "plain";
    case Mode::ObsBias:
      return "obs";
    case Mode::StateRefutation:
      return "sr";
  }
  return "?";
}

const char* to_string(ReplanEvent::Cause c) {
  switch (c) {
    case ReplanEvent::Cause::ObsContradictsSPrime:
      return "obs-contradicts-s'";
    case ReplanEvent::Cause::UnsafePrecondition:
      return "unsafe-precondition";
    case ReplanEvent::Cause::PlanExhausted:
      return "plan-exhausted";
  }
  return "?";
}

const char* to_string(ExecutionTrace::Outcome o) {
  switch (o) {
    case ExecutionTrace::Outcome::GoalReached:
      return "GoalReached";
    case ExecutionTrace::Outcome::Failure:
      return "Failure";
    case ExecutionTrace::Outcome::ActionLimit:
      return "ActionLimit";
  }
  return "?";
}

std::string format_trace(const Problem& problem, const ExecutionTrace& trace) {
  std::ostringstream os;
  std::size_t ev = 0;
  std::size_t ep = 0;
  auto flush_events = [&](std::size_t step) {
    while (ev < trace.replan_events.size() && trace.replan_events[ev].step_index <= step) {
      os << "replan: " << to_string(trace.replan_events[ev++].cause) << "\n";
    }
    while (ep < trace.episodes.size() && trace.episodes[ep].step_index <= step) {
      const auto& e = trace.episodes[ep++];
      os << "plan " << ep << ": |S'|=" << e.sample_size << " length=" << e.plan_length
         << (e.complete_translation ? " complete" : "") << " s'=" << problem.describe(e.distinguished) << "\n";
    }
  };
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    flush_events(i);
    const auto& s = trace.steps[i];
    os << i + 1 << ": " << problem.action(s.action).name;
    if (s.trigger == TraceStep::Trigger::EagerSense) os << " [eager]";
    if (!s.observation.is_null()) {
      os << " ->";
      for (Literal l : s.observation.values) os << " " << problem.literal_name(l);
    }
    os << "\n";
  }
  flush_events(trace.steps.size());
  os << "outcome: " << to_string(trace.outcome);
  if (!trace.failure_reason.empty()) os << " (" << trace.failure_reason << ")";
  os << "\nactions: " << trace.steps.size() << "\n";
  return os.str();
}

}  // namespace sdr
