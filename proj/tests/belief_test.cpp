#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sdr/belief.hpp"
#include "sdr/errors.hpp"
#include "sdr/grounder.hpp"
#include "support.hpp"

namespace sdr {
namespace {

using testing::load_family;

bool equivalent(const Formula& a, const Formula& b, std::size_t n) {
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    State s(n);
    for (PropId p = 0; p < n; ++p) s.set(p, (bits >> p) & 1U);
    if (a.evaluate(s) != b.evaluate(s)) return false;
  }
  return true;
}

TEST(Regress, SensingActionsLeaveFormulasUnchanged) {
  const Problem p = load_family("wumpus", "n=4");
  const Formula c = Formula::literal(p.lit("at-4-4"));
  EXPECT_EQ(regress(c, p.action(p.action_id("smell-2-2"))), c);
}

TEST(Regress, TestActionDeterminesTestResult) {
  const Problem p = load_family("diseases", "n=3");
  const Action& test = p.action(p.action_id("test-d2"));
  const std::size_t n = p.num_props();
  EXPECT_TRUE(equivalent(regress(Formula::literal(p.lit("test-passed")), test),
                         Formula::literal(p.lit("disease-d2")), n));
  EXPECT_TRUE(equivalent(regress(Formula::literal(p.lit("test-passed", false)), test),
                         Formula::literal(p.lit("disease-d2", false)), n));
  // A formula not touched by the action regresses to itself.
  const Formula other = Formula::literal(p.lit("disease-d1"));
  EXPECT_TRUE(equivalent(regress(other, test), other, n));
}

TEST(Regress, UnconditionalEffects) {
  const Problem p = load_family("wumpus", "n=4");
  const Action& move = p.action(p.action_id("move-1-1-1-2"));
  EXPECT_TRUE(regress(Formula::literal(p.lit("at-1-2")), move).is_true());
  EXPECT_TRUE(regress(Formula::literal(p.lit("at-1-1")), move).is_false());
}

TEST(Regress, ExhaustiveOnRandomProblems) {
  std::mt19937_64 rng(21);
  for (int round = 0; round < 30; ++round) {
    const Problem p = testing::random_problem(rng, {8, 6, 16, 0.2});
    const auto check = testing::check_regression_exhaustive(p, rng, 4);
    EXPECT_GT(check.checks, 0U);
    EXPECT_EQ(check.counterexamples, 0U) << check.first_failure;
  }
}

TEST(Regress, HistoryMatchesProgression) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 60; ++round) {
    const Problem p = testing::random_problem(rng, {8, 6, 16, 0.2});
    const Belief init = enumerate_initial_states(p);
    const auto seq = testing::random_safe_sequence(p, init[rng() % init.size()], 6, rng);
    std::vector<HistoryStep> history;
    for (ActionId id : seq) history.push_back({id, {}});
    const Formula c = testing::random_formula(rng, p.num_props());
    const Formula r = regress_history(c, p, history);
    for (const State& s0 : init) {
      State s = s0;
      bool runs = true;  // regression ignores preconditions
      for (ActionId id : seq) {
        runs = runs && applicable(p.action(id), s);
        if (runs) s = apply(p.action(id), s);
      }
      if (!runs) continue;
      EXPECT_EQ(r.evaluate(s0), c.evaluate(s)) << "round " << round;
    }
  }
}

TEST(Entails, KnownLiteralIsACacheHit) {
  const Problem p = load_family("diseases", "n=3");
  BeliefContext ctx(p);
  const auto before = ctx.stats();
  EXPECT_TRUE(ctx.entails(p.lit("test-passed", false)));
  EXPECT_EQ(ctx.stats().cache_hits, before.cache_hits + 1);
  EXPECT_EQ(ctx.stats().sat_calls, before.sat_calls);
}

TEST(Entails, DiseasesAfterPositiveTest) {
  const Problem p = load_family("diseases", "n=3");
  BeliefContext ctx(p);
  EXPECT_FALSE(ctx.entails(p.lit("disease-d2")));
  ctx.execute(p.action_id("test-d2"), {});
  EXPECT_FALSE(ctx.entails(p.lit("test-passed")));
  ctx.execute(p.action_id("observe-test-result"), {{p.lit("test-passed")}});
  EXPECT_TRUE(ctx.entails(p.lit("disease-d2")));
  EXPECT_TRUE(ctx.entails(p.lit("disease-d1", false)));
  EXPECT_TRUE(ctx.entails(LiteralSet{p.lit("disease-d3", false), p.lit("test-passed")}));
}

TEST(Entails, WumpusPositionUnknownInitially) {
  const Problem p = load_family("wumpus", "n=4");
  BeliefContext ctx(p);
  EXPECT_FALSE(ctx.entails(p.lit("wumpus-at-2-3", false)));
  EXPECT_FALSE(ctx.entails(p.lit("wumpus-at-2-3")));
  EXPECT_TRUE(ctx.entails(p.lit("at-1-1")));
  const auto cex = ctx.find_counterexample({p.lit("wumpus-at-2-3", false)});
  ASSERT_TRUE(cex.has_value());
  EXPECT_TRUE(cex->holds(p.lit("wumpus-at-2-3")));
}

TEST(Assimilate, NegativeTestSingleAlternative) {
  const Problem p = load_family("diseases", "n=2");
  BeliefContext ctx(p);
  ctx.execute(p.action_id("test-d1"), {});
  ctx.execute(p.action_id("observe-test-result"), {{p.lit("test-passed", false)}});
  EXPECT_TRUE(ctx.entails(p.lit("disease-d2")));
  EXPECT_TRUE(ctx.entails(p.lit("disease-d1", false)));
  EXPECT_EQ(ctx.enumerate_initial_states(10).size(), 1U);
}

TEST(Assimilate, StenchPinsWumpus) {
  const Problem p = load_family("wumpus", "n=4");
  BeliefContext ctx(p);
  ctx.execute(p.action_id("move-1-1-1-2"), {});
  ctx.execute(p.action_id("move-1-2-1-3"), {});
  ctx.execute(p.action_id("smell-1-3"), {{p.lit("stench-at-1-3")}});
  EXPECT_TRUE(ctx.entails(p.lit("wumpus-at-2-3")));
  EXPECT_TRUE(ctx.entails(p.lit("wumpus-at-3-2", false)));
  EXPECT_FALSE(ctx.entails(p.lit("wumpus-at-3-4")));
  EXPECT_EQ(ctx.enumerate_initial_states(10).size(), 2U);
}

TEST(Assimilate, ContradictionThrows) {
  const Problem p = load_family("diseases", "n=2");
  BeliefContext ctx(p);
  EXPECT_THROW(ctx.execute(p.action_id("observe-test-result"), {{p.lit("test-passed")}}), InconsistentBelief);
}

TEST(Sampling, DistinctStatesUpToBeliefSize) {
  const Problem two = load_family("diseases", "n=2");
  const auto s2 = BeliefContext(two).sample_initial_states(5, 1);
  EXPECT_EQ(s2.size(), 2U);
  const Problem ten = load_family("diseases", "n=10");
  BeliefContext ctx(ten);
  const auto s10 = ctx.sample_initial_states(4, 9);
  EXPECT_EQ(s10.size(), 4U);
  EXPECT_EQ(std::set<State>(s10.begin(), s10.end()).size(), 4U);
  for (const State& s : s10) EXPECT_TRUE(ctx.consistent_initial(s));
}

TEST(Sampling, FreeAtomsStayFree) {
  const char* d = "(define (domain d) (:predicates (p) (q)) (:action a :effect (and (p))))";
  const char* pr = "(define (problem x) (:domain d) (:init (or (q) (not (q)))) (:goal (and (p))))";
  const Problem p = load_problem(d, pr);
  EXPECT_EQ(BeliefContext(p).sample_initial_states(4, 2).size(), 2U);
}

// Explicit belief alongside the lazy one on random runs: entailment agrees on
// every literal, the per-step cache is sound, and the set of possible initial
// states only shrinks.
TEST(BeliefContextOracle, AgreesWithExplicitBelief) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 120; ++round) {
    const Problem p = testing::random_problem(rng, {9, 6, 16, 0.4});
    const Belief init = enumerate_initial_states(p);
    const State truth = init[rng() % init.size()];
    const auto seq = testing::random_safe_sequence(p, truth, 8, rng);
    BeliefContext ctx(p);
    Belief b = init;
    State t = truth;
    std::set<State> possible(init.begin(), init.end());
    for (ActionId id : seq) {
      const Action& a = p.action(id);
      const Observation o = observe(a, t);
      ctx.execute(id, o);
      b = progress_belief(b, a, o);
      t = apply(a, t);
      const auto now = ctx.enumerate_initial_states(1U << 12);
      const std::set<State> now_set(now.begin(), now.end());
      EXPECT_TRUE(std::includes(possible.begin(), possible.end(), now_set.begin(), now_set.end()));
      possible = now_set;
      for (Literal l : ctx.current().known()) {
        EXPECT_TRUE(belief_entails(b, l)) << "round " << round << ": cache claims " << p.literal_name(l);
      }
      for (PropId q = 0; q < p.num_props(); ++q) {
        for (const bool neg : {false, true}) {
          EXPECT_EQ(ctx.entails(Literal{q, neg}), belief_entails(b, {q, neg}))
              << "round " << round << " literal " << p.literal_name({q, neg});
        }
      }
      std::set<State> progressed;
      for (const State& s0 : now) progressed.insert(ctx.progress(s0));
      EXPECT_EQ(progressed, std::set<State>(b.begin(), b.end())) << "round " << round;
    }
  }
}

}  // namespace
}  // namespace sdr
