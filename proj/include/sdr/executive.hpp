#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sdr/belief.hpp"
#include "sdr/classical.hpp"
#include "sdr/model.hpp"

namespace sdr {

enum class Mode { Plain, ObsBias, StateRefutation };

struct SdrConfig {
  std::size_t sample_size = 2;
  Mode mode = Mode::Plain;
  std::uint64_t seed = 0;
  SearchBudget budget;
  std::size_t max_total_actions = 500;
  std::size_t max_replans = 1000;
  // Fall back to the complete translation when the sampled problem stays
  // unsolvable and the belief has at most this many initial states.
  std::size_t escalation_cap = 64;
  // Oldest witnesses are dropped beyond this many.
  std::size_t max_witnesses = 16;
  std::string external_planner;  // empty: built-in search
};

struct TraceStep {
  enum class Trigger { Planned, EagerSense };
  ActionId action;
  Observation observation;
  Trigger trigger = Trigger::Planned;
};

struct ReplanEvent {
  enum class Cause { ObsContradictsSPrime, UnsafePrecondition, PlanExhausted };
  std::size_t step_index;
  Cause cause;
};

struct Episode {
  std::size_t step_index;
  std::size_t sample_size;
  State distinguished;  // initial state assumed true
  std::size_t plan_length = 0;
  bool complete_translation = false;  // escalated beyond the sampled problem
};

struct ExecutionTrace {
  enum class Outcome { GoalReached, Failure, ActionLimit };
  std::vector<TraceStep> steps;
  std::vector<ReplanEvent> replan_events;
  std::vector<Episode> episodes;
  Outcome outcome = Outcome::Failure;
  std::string failure_reason;
};

// Observer hooks used by test oracles.
class ExecutionListener {
 public:
  virtual ~ExecutionListener() = default;
  virtual void on_entails(const LiteralSet& /*lits*/, bool /*result*/) {}
  // Called before the belief assimilates the step.
  virtual void on_execute(const Action& /*a*/, const Observation& /*o*/) {}
  virtual void on_replan(const ReplanEvent& /*e*/) {}
};

class Simulator {
 public:
  Simulator(const Problem& problem, State hidden) : problem_(&problem), hidden_(std::move(hidden)) {}
  const State& hidden_state() const { return hidden_; }
  const Problem& problem() const { return *problem_; }

 private:
  friend Observation simulate_step(Simulator& sim, const Action& a);
  const Problem* problem_;
  State hidden_;
};

// Observation of the hidden state before the action, then the hidden state
// advances. Throws SimulatorFault if the precondition fails.
Observation simulate_step(Simulator& sim, const Action& a);

// True iff pre(a) holds in every possible state. Otherwise fills `witness`
// with an initial state from which it fails.
bool check_safe(BeliefContext& ctx, const Action& a, std::optional<State>* witness = nullptr);

// Pure sensing actions that are safe and would observe something unknown.
std::vector<ActionId> eager_sense(BeliefContext& ctx, const Problem& problem);

ExecutionTrace run_sdr(const Problem& problem, const State& true_init, const SdrConfig& cfg,
                       ExecutionListener* listener = nullptr);

const char* to_string(Mode m);
const char* to_string(ReplanEvent::Cause c);
const char* to_string(ExecutionTrace::Outcome o);

// Human-readable trace, identical for identical runs.
std::string format_trace(const Problem& problem, const ExecutionTrace& trace);

}  // namespace sdr
