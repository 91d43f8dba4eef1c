#pragma once

#include <string_view>

#include "sdr/model.hpp"
#include "sdr/parser.hpp"

namespace sdr {

struct GroundOptions {
  // Fold atoms of static predicates whose initial value is known, prune what
  // they make unreachable, and drop actions left without effects or sensing.
  bool simplify_static = true;
  // Replace an action that both changes the state and senses with two
  // actions sharing its precondition; the sensing half is named "sense-<name>".
  bool split_mixed_actions = true;
  // Run the pairwise effect consistency test on every ground action.
  bool check_consistency = true;
};

// Instantiates every schema over the (lexicographically ordered) objects of
// matching type. Atoms the initial formula never mentions are false.
// Ground names join predicate or schema and arguments with '-'.
// Throws SemanticError on name clashes or an unreachable goal, and
// ConsistencyError from the per-action checks.
Problem ground(const LiftedDomain& domain, const LiftedProblem& problem, const GroundOptions& opts = {});

Problem load_problem(std::string_view domain_text, std::string_view problem_text, const GroundOptions& opts = {});

}  // namespace sdr
