#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "sdr/formula.hpp"
#include "sdr/literal.hpp"

namespace sdr {

// Clauses plus exactly-one groups. Variables at or beyond the proposition
// count of the owning problem are auxiliary.
struct SemiCnf {
  std::size_t num_vars = 0;
  std::vector<Clause> clauses;
  std::vector<std::vector<Literal>> oneofs;

  PropId new_var() { return static_cast<PropId>(num_vars++); }
};

// Conjoins f to out. Disjunctions are distributed; once a distribution would
// exceed `cap` clauses the offending subformula is encoded with auxiliary
// variables defined by equivalence, so every model of the original extends
// to exactly one model of the encoding.
void add_formula(SemiCnf& out, const Formula& f, std::size_t cap = 10000);

// Plain distribution. nullopt when the result would exceed cap clauses.
std::optional<std::vector<Clause>> distribute(const Formula& f, std::size_t cap = 10000);

// Drops tautologies, duplicate literals and subsumed clauses.
std::vector<Clause> remove_subsumed(std::vector<Clause> clauses);

// Chronological DPLL with unit propagation and native exactly-one propagation.
class Dpll {
 public:
  explicit Dpll(const SemiCnf& f);

  void add_clause(Clause c);

  // A model, or nullopt when unsatisfiable. With an rng the branching
  // variable and polarity are random; without one the lowest unassigned
  // variable is tried false first.
  std::optional<std::vector<bool>> solve(std::mt19937_64* rng = nullptr);

  // Every model, in search order, until `visit` returns false or `limit`
  // models were produced. Returns the number produced.
  std::size_t enumerate(std::size_t limit, const std::function<bool(const std::vector<bool>&)>& visit);

  // Unit propagation alone. Fills `values` (-1 unassigned) and returns false
  // on conflict.
  bool propagate_units(std::vector<std::int8_t>& values);

  std::size_t decisions() const { return decisions_; }

 private:
  static std::size_t index(Literal l) { return 2 * static_cast<std::size_t>(l.prop) + (l.negated ? 1 : 0); }
  int value(Literal l) const {
    const int v = vals_[l.prop];
    return v < 0 ? -1 : (v == (l.negated ? 0 : 1) ? 1 : 0);
  }
  void reset();
  bool assign(Literal l);
  bool propagate();
  void undo_to(std::size_t trail_size);
  std::optional<PropId> pick(std::mt19937_64* rng);
  bool search(std::mt19937_64* rng, std::size_t limit,
              const std::function<bool(const std::vector<bool>&)>* visit, std::size_t* produced,
              std::vector<bool>* model);

  std::size_t num_vars_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Literal>> oneofs_;
  std::vector<std::vector<std::uint32_t>> occ_;      // literal index -> clauses
  std::vector<std::vector<std::uint32_t>> one_occ_;  // variable -> oneof groups
  std::vector<std::int8_t> vals_;
  std::vector<Literal> trail_;
  std::size_t qhead_ = 0;
  bool trivially_unsat_ = false;
  std::size_t decisions_ = 0;
};

std::optional<std::vector<bool>> satisfiable(const SemiCnf& f);

}  // namespace sdr
