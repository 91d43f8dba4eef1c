#pragma once

#include <chrono>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "sdr/translator.hpp"

namespace sdr {

struct SearchBudget {
  std::size_t max_expansions = 200000;
  std::chrono::duration<double> wall_clock{60.0};
};

using Plan = std::vector<std::size_t>;  // indices into ClassicalProblem::actions

struct SolveResult {
  enum class Status { Plan, Unsolvable, BudgetExhausted };
  Status status = Status::Unsolvable;
  Plan plan;
  std::size_t expansions = 0;
};

inline constexpr std::size_t kInfinity = std::numeric_limits<std::size_t>::max();

bool applicable(const ClassicalAction& a, const State& s);
State apply(const ClassicalAction& a, const State& s);

// Additive delete-relaxation estimate over literal facts. Conditional effects
// are independent relaxed actions; a disjunction costs its cheapest literal.
class AdditiveHeuristic {
 public:
  explicit AdditiveHeuristic(const ClassicalProblem& cp);
  // kInfinity when the goal is relaxed-unreachable; 0 iff s satisfies the goal.
  std::size_t operator()(const State& s);

 private:
  struct Unit {
    std::uint32_t fact;
    std::vector<std::uint32_t> facts;
    std::vector<std::uint32_t> clauses;
  };
  static std::uint32_t fact(Literal l) { return 2 * l.prop + (l.negated ? 1 : 0); }

  std::vector<Unit> units_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<std::uint32_t>> fact_users_;    // fact -> units
  std::vector<std::vector<std::uint32_t>> fact_clauses_;  // fact -> clauses
  std::vector<std::vector<std::uint32_t>> clause_users_;  // clause -> units
  std::vector<std::uint32_t> goal_;
  std::size_t num_facts_;

  std::vector<std::size_t> cost_;
  std::vector<std::size_t> unit_cost_;
  std::vector<std::uint32_t> missing_;
  std::vector<bool> clause_done_;
};

std::size_t heuristic(const State& s, const ClassicalProblem& cp);

// Greedy best-first search with deferred evaluation, a hashed closed list and
// FIFO tie-breaking.
SolveResult solve(const ClassicalProblem& cp, const SearchBudget& budget = {});

bool validate_plan(const ClassicalProblem& cp, const Plan& plan);

// Runs `exec_path domain-file problem-file`. The plan is read from the file
// named by SDR_PLAN_FILE in the child's environment if the planner wrote it,
// otherwise from lines of standard output of the form "N: (action)".
// Output containing "unsolvable" means no plan exists.
// Throws ExternalPlannerError on crashes, unknown actions or invalid plans.
SolveResult solve_external(const ClassicalProblem& cp, const std::string& exec_path, const SearchBudget& budget = {});

// Parses plan text (one action per line, optional "N:" prefix, parentheses
// and case ignored). Throws ExternalPlannerError on unknown names.
Plan parse_plan(const ClassicalProblem& cp, const std::string& text);

}  // namespace sdr
