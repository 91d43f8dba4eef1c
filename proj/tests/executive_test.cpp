#include <gtest/gtest.h>

#include <algorithm>

#include "sdr/belief.hpp"
#include "sdr/errors.hpp"
#include "sdr/executive.hpp"
#include "sdr/grounder.hpp"
#include "support.hpp"

namespace sdr {
namespace {

using testing::load_family;

const Mode kModes[] = {Mode::Plain, Mode::ObsBias, Mode::StateRefutation};

std::vector<std::string> action_names(const Problem& p, const ExecutionTrace& t) {
  std::vector<std::string> out;
  for (const auto& s : t.steps) out.push_back(p.action(s.action).name);
  return out;
}

TEST(RunSdr, GoalAlreadyKnown) {
  const char* d = "(define (domain d) (:predicates (p) (q)) (:action a :observe (q)))";
  const char* pr = "(define (problem x) (:domain d) (:init (p) (oneof (q) (p))) (:goal (and (p))))";
  const Problem p = load_problem(d, pr);
  const ExecutionTrace t = run_sdr(p, enumerate_initial_states(p)[0], {});
  EXPECT_EQ(t.outcome, ExecutionTrace::Outcome::GoalReached);
  EXPECT_TRUE(t.steps.empty());
  EXPECT_TRUE(t.episodes.empty());
}

TEST(RunSdr, DiseasesTreatsOnlyTheActualDisease) {
  const Problem p = load_family("diseases", "n=2");
  const State truth = p.make_state(std::vector<std::string>{"disease-d2"});
  for (const Mode m : kModes) {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      SdrConfig cfg;
      cfg.mode = m;
      cfg.seed = seed;
      const ExecutionTrace t = run_sdr(p, truth, cfg);
      ASSERT_EQ(t.outcome, ExecutionTrace::Outcome::GoalReached) << t.failure_reason;
      const auto names = action_names(p, t);
      EXPECT_EQ(std::count(names.begin(), names.end(), "treat-d1"), 0);
      EXPECT_EQ(names.back(), "treat-d2");
    }
  }
}

TEST(RunSdr, DiseasesWrongGuessForcesReplan) {
  const Problem p = load_family("diseases", "n=2");
  const State truth = p.make_state(std::vector<std::string>{"disease-d2"});
  bool saw_contradiction = false;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SdrConfig cfg;
    cfg.seed = seed;
    const ExecutionTrace t = run_sdr(p, truth, cfg);
    for (const auto& e : t.replan_events) {
      if (e.cause == ReplanEvent::Cause::ObsContradictsSPrime) {
        saw_contradiction = true;
        ASSERT_GE(e.step_index, 1U);
        const auto& obs = t.steps[e.step_index - 1].observation;
        EXPECT_EQ(obs.values, LiteralSet{p.lit("test-passed", false)});
      }
    }
  }
  EXPECT_TRUE(saw_contradiction);
}

TEST(RunSdr, WumpusFromEveryInitialState) {
  const Problem p = load_family("wumpus", "n=4");
  for (const State& s : enumerate_initial_states(p)) {
    for (const Mode m : kModes) {
      SdrConfig cfg;
      cfg.mode = m;
      cfg.max_total_actions = 200;
      const ExecutionTrace t = run_sdr(p, s, cfg);
      EXPECT_EQ(t.outcome, ExecutionTrace::Outcome::GoalReached) << to_string(m) << ": " << t.failure_reason;
      EXPECT_LE(t.steps.size(), 200U);
    }
  }
}

TEST(RunSdr, ObsModeSensesEagerly) {
  const Problem p = load_family("wumpus", "n=4");
  SdrConfig cfg;
  cfg.mode = Mode::ObsBias;
  const ExecutionTrace t = run_sdr(p, enumerate_initial_states(p)[0], cfg);
  EXPECT_TRUE(std::any_of(t.steps.begin(), t.steps.end(),
                          [](const TraceStep& s) { return s.trigger == TraceStep::Trigger::EagerSense; }));
  for (const auto& s : t.steps) {
    if (s.trigger == TraceStep::Trigger::EagerSense) EXPECT_FALSE(p.action(s.action).changes_state());
  }
}

TEST(RunSdr, ShadowOracleSeesOnlySafeActionsAndCorrectAnswers) {
  struct Case {
    const char* family;
    const char* params;
  };
  for (const Case c : {Case{"diseases", "n=4"}, Case{"wumpus", "n=4"}, Case{"doors", "n=5"}, Case{"unix", "depth=2"},
                       Case{"localize", "n=3"}}) {
    const Problem p = load_family(c.family, c.params);
    const auto b = enumerate_initial_states(p);
    for (const Mode m : kModes) {
      testing::ShadowOracle oracle(p);
      SdrConfig cfg;
      cfg.mode = m;
      cfg.seed = 3;
      const ExecutionTrace t = run_sdr(p, b[b.size() / 2], cfg, &oracle);
      EXPECT_EQ(t.outcome, ExecutionTrace::Outcome::GoalReached) << c.family << " " << to_string(m);
      EXPECT_EQ(oracle.unsafe, 0U) << c.family;
      EXPECT_EQ(oracle.disagreements, 0U) << c.family << ": " << (oracle.notes.empty() ? "" : oracle.notes[0]);
      EXPECT_GT(oracle.queries, 0U);
      EXPECT_EQ(oracle.executions, t.steps.size());
      EXPECT_TRUE(belief_entails_all(oracle.belief(), p.goal()));
    }
  }
}

// Replaying the executed steps through the explicit belief: every action is
// safe where it was taken and every observation is possible, so the belief
// only ever gets refined.
TEST(RunSdr, ReplayedTraceRefinesBelief) {
  const Problem p = load_family("doors", "n=5");
  const auto b0 = enumerate_initial_states(p);
  for (std::size_t i = 0; i < b0.size(); ++i) {
    SdrConfig cfg;
    cfg.seed = i;
    const ExecutionTrace t = run_sdr(p, b0[i], cfg);
    ASSERT_EQ(t.outcome, ExecutionTrace::Outcome::GoalReached);
    Belief b = b0;
    std::size_t size = b.size();
    State truth = b0[i];
    for (const auto& step : t.steps) {
      const Action& a = p.action(step.action);
      EXPECT_EQ(observe(a, truth), step.observation);
      ASSERT_NO_THROW(b = progress_belief(b, a, step.observation));
      std::sort(b.begin(), b.end());
      b.erase(std::unique(b.begin(), b.end()), b.end());
      EXPECT_LE(b.size(), size);
      size = b.size();
      truth = apply(a, truth);
    }
    EXPECT_TRUE(belief_entails_all(b, p.goal()));
  }
}

TEST(RunSdr, ReplanEventsPointIntoTheTrace) {
  const Problem p = load_family("doors", "n=5");
  const auto b = enumerate_initial_states(p);
  const ExecutionTrace t = run_sdr(p, b.back(), {});
  ASSERT_FALSE(t.replan_events.empty());
  for (const auto& e : t.replan_events) EXPECT_LE(e.step_index, t.steps.size());
  EXPECT_EQ(t.episodes.size(), t.replan_events.size() + 1);
}

TEST(RunSdr, DeadEndDomainCanFail) {
  const Problem p = load_family("wumpus-deadend", "n=4");
  std::size_t failures = 0;
  for (const State& s : enumerate_initial_states(p)) {
    const ExecutionTrace t = run_sdr(p, s, {});
    failures += t.outcome != ExecutionTrace::Outcome::GoalReached;
  }
  EXPECT_GE(failures, 1U);
}

TEST(RunSdr, ActionLimit) {
  const Problem p = load_family("doors", "n=7");
  SdrConfig cfg;
  cfg.max_total_actions = 3;
  const ExecutionTrace t = run_sdr(p, enumerate_initial_states(p).back(), cfg);
  EXPECT_EQ(t.outcome, ExecutionTrace::Outcome::ActionLimit);
  EXPECT_LE(t.steps.size(), 3U);
}

TEST(RunSdr, DeterministicTrace) {
  const Problem p = load_family("wumpus", "n=5");
  const State s = enumerate_initial_states(p)[1];
  SdrConfig cfg;
  cfg.seed = 42;
  cfg.mode = Mode::StateRefutation;
  EXPECT_EQ(format_trace(p, run_sdr(p, s, cfg)), format_trace(p, run_sdr(p, s, cfg)));
}

TEST(RunSdr, ZeroSampleSizeIsRejected) {
  const Problem p = load_family("diseases", "n=2");
  SdrConfig cfg;
  cfg.sample_size = 0;
  EXPECT_THROW(run_sdr(p, enumerate_initial_states(p)[0], cfg), InvalidParams);
}

TEST(Simulator, InapplicableActionFaults) {
  const Problem p = load_family("diseases", "n=2");
  Simulator sim(p, p.make_state(std::vector<std::string>{"disease-d2"}));
  EXPECT_THROW(simulate_step(sim, p.action(p.action_id("treat-d1"))), SimulatorFault);
  EXPECT_NO_THROW(simulate_step(sim, p.action(p.action_id("treat-d2"))));
  EXPECT_EQ(sim.hidden_state(), State(p.num_props()));
}

TEST(Simulator, ObservesBeforeEffects) {
  const Problem p = load_family("diseases", "n=2");
  Simulator sim(p, p.make_state(std::vector<std::string>{"disease-d1"}));
  EXPECT_TRUE(simulate_step(sim, p.action(p.action_id("test-d1"))).is_null());
  EXPECT_EQ(simulate_step(sim, p.action(p.action_id("observe-test-result"))).values,
            LiteralSet{p.lit("test-passed")});
}

TEST(CheckSafe, TreatmentNeedsIdentification) {
  const Problem p = load_family("diseases", "n=2");
  BeliefContext ctx(p);
  std::optional<State> witness;
  EXPECT_FALSE(check_safe(ctx, p.action(p.action_id("treat-d1")), &witness));
  ASSERT_TRUE(witness.has_value());
  EXPECT_TRUE(witness->holds(p.lit("disease-d2")));
  EXPECT_TRUE(check_safe(ctx, p.action(p.action_id("test-d1"))));
  ctx.execute(p.action_id("test-d1"), {});
  ctx.execute(p.action_id("observe-test-result"), {{p.lit("test-passed")}});
  EXPECT_TRUE(check_safe(ctx, p.action(p.action_id("treat-d1"))));
}

TEST(EagerSense, UnknownStenchNextToAgent) {
  const Problem p = load_family("wumpus", "n=4");
  BeliefContext ctx(p);
  EXPECT_TRUE(eager_sense(ctx, p).empty());
  ctx.execute(p.action_id("move-1-1-1-2"), {});
  ctx.execute(p.action_id("move-1-2-1-3"), {});
  const auto sensed = eager_sense(ctx, p);
  ASSERT_EQ(sensed.size(), 1U);
  EXPECT_EQ(p.action(sensed[0]).name, "smell-1-3");
  ctx.execute(sensed[0], {{p.lit("stench-at-1-3", false)}});
  EXPECT_TRUE(eager_sense(ctx, p).empty());
}

TEST(Trace, FormatMentionsOutcome) {
  const Problem p = load_family("diseases", "n=2");
  const ExecutionTrace t = run_sdr(p, enumerate_initial_states(p)[0], {});
  const std::string text = format_trace(p, t);
  EXPECT_NE(text.find("outcome: GoalReached"), std::string::npos);
  EXPECT_NE(text.find("actions: " + std::to_string(t.steps.size())), std::string::npos);
}

}  // namespace
}  // namespace sdr
