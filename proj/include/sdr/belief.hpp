#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sdr/model.hpp"
#include "sdr/sat.hpp"

namespace sdr {

struct HistoryStep {
  ActionId action;
  Observation observation;
};

// Partially-specified belief state: literals known at one step.
// value[p] is -1 (unknown), 0 or 1.
struct Psbs {
  std::vector<std::int8_t> value;

  bool knows(Literal l) const { return value[l.prop] == (l.negated ? 0 : 1); }
  bool refutes(Literal l) const { return value[l.prop] == (l.negated ? 1 : 0); }
  LiteralSet known() const;
};

// regress(c, a) with pre(a) elided.
Formula regress(const Formula& c, const Action& a);

// Right-to-left fold of regress over the history, without any cache.
Formula regress_history(const Formula& c, const Problem& problem, std::span<const HistoryStep> history);

// One step of PSBS progression through an action.
Psbs progress_psbs(const Psbs& before, const Action& a);

struct BeliefStats {
  std::size_t queries = 0;
  std::size_t cache_hits = 0;
  std::size_t sat_calls = 0;
};

// Lazy belief: the initial formula, the history, and one PSBS per step.
class BeliefContext {
 public:
  explicit BeliefContext(const Problem& problem);

  const Problem& problem() const { return *problem_; }
  const SemiCnf& init_cnf() const { return phi_; }
  const std::vector<HistoryStep>& history() const { return history_; }
  const std::vector<Psbs>& psbs() const { return psbs_; }
  const Psbs& current() const { return psbs_.back(); }
  const BeliefStats& stats() const { return stats_; }

  // regress_history using the per-step caches: literals known at a step are
  // folded before regressing further.
  Formula regress_cached(const Formula& c) const;

  // Appends an action with a null observation and progresses the cache.
  void append(ActionId a);

  // The observation made by the last appended action (taken before its
  // effects). Conjoins the regressed observation to the initial formula.
  // Throws InconsistentBelief when no initial state remains.
  void assimilate_observation(const Observation& o);

  // append + assimilate.
  void execute(ActionId a, const Observation& o);

  // True iff every currently possible state satisfies all of lits.
  bool entails(const LiteralSet& lits);
  bool entails(Literal l) { return entails(LiteralSet{l}); }

  // nullopt when lits is entailed, otherwise an initial state whose
  // progression through the history violates some literal.
  std::optional<State> find_counterexample(const LiteralSet& lits);

  // True iff s satisfies the current initial formula.
  bool consistent_initial(const State& s) const;

  // Up to n distinct models of the initial formula, found by randomized
  // search with blocking clauses. Throws InconsistentBelief if there are none.
  std::vector<State> sample_initial_states(std::size_t n, std::uint64_t seed) const;

  // Exact models of the initial formula, at most `limit`.
  std::vector<State> enumerate_initial_states(std::size_t limit) const;

  // Progress initial states through the history.
  State progress(const State& initial) const;

 private:
  State project(const std::vector<bool>& model) const;
  void add_known(std::size_t step, Literal l);
  void reprogress();
  void simplify_phi();

  const Problem* problem_;
  SemiCnf phi_;
  std::vector<HistoryStep> history_;
  std::vector<Psbs> psbs_;
  BeliefStats stats_;
};

}  // namespace sdr
