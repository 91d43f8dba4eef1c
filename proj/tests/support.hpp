#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "sdr/executive.hpp"
#include "sdr/model.hpp"
#include "sdr/translator.hpp"

namespace sdr::testing {

Problem load_family(const std::string& family, const std::string& params = "", std::uint64_t seed = 0);

struct RandomProblemOptions {
  std::size_t num_props = 8;
  std::size_t num_actions = 6;
  std::size_t max_states = 16;
  double sensing_share = 0.3;
};

// Small random PPOS problem in grounded normal form: every action either
// senses or changes the state, effects pass the consistency check, and the
// initial belief has between 2 and max_states states.
Problem random_problem(std::mt19937_64& rng, const RandomProblemOptions& opts = {});

// Random formula over the problem's propositions: literals under up to
// `depth` levels of and/or, occasionally a oneof.
Formula random_formula(std::mt19937_64& rng, std::size_t num_props, std::size_t depth = 2);

struct RegressionCheck {
  std::size_t checks = 0;
  std::size_t counterexamples = 0;
  std::string first_failure;
};

// For every action, `formulas` random formulas c and every state s over all
// propositions where the action applies: s |= regress(c, a) iff a(s) |= c.
RegressionCheck check_regression_exhaustive(const Problem& problem, std::mt19937_64& rng, std::size_t formulas);

// Literals entailed by an explicit belief.
LiteralSet known_literals(const Problem& problem, const Belief& b);

// Actions applicable in every state of b.
std::vector<ActionId> safe_actions(const Problem& problem, const Belief& b);

// Explicit-belief shadow of a run: checks every entailment answer and the
// safety of every executed action.
class ShadowOracle : public ExecutionListener {
 public:
  explicit ShadowOracle(const Problem& problem);

  void on_entails(const LiteralSet& lits, bool result) override;
  void on_execute(const Action& a, const Observation& o) override;

  std::size_t queries = 0;
  std::size_t disagreements = 0;
  std::size_t executions = 0;
  std::size_t unsafe = 0;
  std::vector<std::string> notes;  // first few problems, for messages
  const Belief& belief() const { return belief_; }

 private:
  void note(std::string s);
  const Problem& problem_;
  Belief belief_;
};

struct KnowledgeCheck {
  std::size_t comparisons = 0;
  std::size_t counterexamples = 0;
  std::string first_failure;
};

// Complete translation (S' = b_I) with conditional merges; after each action
// of `seq` every refutation and every merge is applied to a fixpoint, and Kl is
// compared with explicit entailment of l for every literal.
KnowledgeCheck check_knowledge_equivalence(const Problem& problem, const State& distinguished,
                                         const std::vector<ActionId>& seq);

// Random sequence of up to max_len actions, each safe in the belief that
// follows from the truth's observations.
std::vector<ActionId> random_safe_sequence(const Problem& problem, const State& truth, std::size_t max_len,
                                           std::mt19937_64& rng);

// Exhaustive search over explicit beliefs along the observation branch of
// `truth`: true iff some action sequence leads to a belief entailing the goal.
bool belief_branch_solvable(const Problem& problem, const State& truth);

}  // namespace sdr::testing
