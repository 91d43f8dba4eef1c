#include "sdr/sat.hpp"

#include <algorithm>

namespace sdr {

namespace {

std::vector<Clause> expand_one_of(const std::vector<Literal>& lits) {
  std::vector<Clause> out;
  out.push_back(lits);
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) out.push_back({~lits[i], ~lits[j]});
  }
  return out;
}

bool subsumes(const Clause& a, const Clause& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Literal equivalent to f, defining fresh variables as needed.
Literal tseitin(SemiCnf& out, const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Lit:
      return f.lit();
    case K::True:
    case K::False: {
      const auto x = out.new_var();
      out.clauses.push_back({Literal{x, f.kind() == K::False}});
      return Literal::pos(x);
    }
    case K::OneOf: {
      std::vector<Formula> cs;
      for (const auto& c : expand_one_of(f.one_of_literals())) cs.push_back(Formula::disj_of(c));
      return tseitin(out, Formula::conj(std::move(cs)));
    }
    case K::And:
    case K::Or: {
      std::vector<Literal> kids;
      for (const auto& c : f.children()) kids.push_back(tseitin(out, c));
      const Literal x = Literal::pos(out.new_var());
      const bool is_and = f.kind() == K::And;
      // and: x -> k_i, (all k_i) -> x.  or: k_i -> x, x -> (some k_i).
      Clause big{is_and ? x : ~x};
      for (Literal k : kids) {
        out.clauses.push_back(is_and ? Clause{~x, k} : Clause{x, ~k});
        big.push_back(is_and ? ~k : k);
      }
      out.clauses.push_back(std::move(big));
      return x;
    }
  }
  return f.lit();
}

}  // namespace

std::vector<Clause> remove_subsumed(std::vector<Clause> clauses) {
  std::vector<Clause> cleaned;
  for (auto& c : clauses) {
    c = normalized(std::move(c));
    if (!has_complementary_pair(c)) cleaned.push_back(std::move(c));
  }
  std::sort(cleaned.begin(), cleaned.end(), [](const Clause& a, const Clause& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  cleaned.erase(std::unique(cleaned.begin(), cleaned.end()), cleaned.end());
  if (cleaned.size() > 4000) return cleaned;
  std::vector<Clause> out;
  for (auto& c : cleaned) {
    bool dominated = false;
    for (const auto& kept : out) {
      if (subsumes(kept, c)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.push_back(std::move(c));
  }
  return out;
}

std::optional<std::vector<Clause>> distribute(const Formula& f, std::size_t cap) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return std::vector<Clause>{};
    case K::False:
      return std::vector<Clause>{Clause{}};
    case K::Lit:
      return std::vector<Clause>{Clause{f.lit()}};
    case K::OneOf:
      return expand_one_of(f.one_of_literals());
    case K::And: {
      std::vector<Clause> out;
      for (const auto& c : f.children()) {
        auto part = distribute(c, cap);
        if (!part) return std::nullopt;
        out.insert(out.end(), part->begin(), part->end());
        if (out.size() > cap) return std::nullopt;
      }
      return remove_subsumed(std::move(out));
    }
    case K::Or: {
      std::vector<Clause> acc{Clause{}};
      for (const auto& c : f.children()) {
        auto part = distribute(c, cap);
        if (!part) return std::nullopt;
        if (acc.size() * part->size() > cap * 4) return std::nullopt;
        std::vector<Clause> next;
        for (const auto& a : acc) {
          for (const auto& b : *part) {
            Clause m = a;
            m.insert(m.end(), b.begin(), b.end());
            next.push_back(std::move(m));
          }
        }
        acc = remove_subsumed(std::move(next));
        if (acc.size() > cap) return std::nullopt;
      }
      return acc;
    }
  }
  return std::nullopt;
}

void add_formula(SemiCnf& out, const Formula& f, std::size_t cap) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return;
    case K::And:
      for (const auto& c : f.children()) add_formula(out, c, cap);
      return;
    case K::OneOf:
      out.oneofs.push_back(f.one_of_literals());
      return;
    default:
      break;
  }
  if (auto cls = distribute(f, cap)) {
    out.clauses.insert(out.clauses.end(), cls->begin(), cls->end());
    return;
  }
  out.clauses.push_back({tseitin(out, f)});
}

Dpll::Dpll(const SemiCnf& f) : num_vars_(f.num_vars) {
  occ_.resize(2 * num_vars_);
  one_occ_.resize(num_vars_);
  for (const auto& c : f.clauses) add_clause(c);
  for (const auto& g : f.oneofs) {
    if (g.empty()) trivially_unsat_ = true;
    const auto id = static_cast<std::uint32_t>(oneofs_.size());
    for (Literal l : g) one_occ_[l.prop].push_back(id);
    oneofs_.push_back(g);
  }
}

void Dpll::add_clause(Clause c) {
  if (c.empty()) trivially_unsat_ = true;
  const auto id = static_cast<std::uint32_t>(clauses_.size());
  for (Literal l : c) {
    if (l.prop >= num_vars_) {
      num_vars_ = l.prop + 1;
      occ_.resize(2 * num_vars_);
      one_occ_.resize(num_vars_);
    }
    occ_[index(l)].push_back(id);
  }
  clauses_.push_back(std::move(c));
}

void Dpll::reset() {
  vals_.assign(num_vars_, -1);
  trail_.clear();
  qhead_ = 0;
}

bool Dpll::assign(Literal l) {
  const int v = value(l);
  if (v == 1) return true;
  if (v == 0) return false;
  vals_[l.prop] = l.negated ? 0 : 1;
  trail_.push_back(l);
  return true;
}

void Dpll::undo_to(std::size_t trail_size) {
  while (trail_.size() > trail_size) {
    vals_[trail_.back().prop] = -1;
    trail_.pop_back();
  }
  qhead_ = trail_size;
}

bool Dpll::propagate() {
  while (qhead_ < trail_.size()) {
    const Literal x = trail_[qhead_++];
    for (auto ci : occ_[index(~x)]) {
      const auto& c = clauses_[ci];
      std::size_t open = 0;
      Literal last{};
      bool sat = false;
      for (Literal l : c) {
        const int v = value(l);
        if (v == 1) {
          sat = true;
          break;
        }
        if (v < 0) {
          ++open;
          last = l;
        }
      }
      if (sat) continue;
      if (open == 0) return false;
      if (open == 1 && !assign(last)) return false;
    }
    for (auto gi : one_occ_[x.prop]) {
      const auto& g = oneofs_[gi];
      std::size_t trues = 0;
      std::size_t open = 0;
      Literal last{};
      for (Literal l : g) {
        const int v = value(l);
        if (v == 1) ++trues;
        if (v < 0) {
          ++open;
          last = l;
        }
      }
      if (trues > 1) return false;
      if (trues == 1) {
        for (Literal l : g) {
          if (value(l) < 0 && !assign(~l)) return false;
        }
      } else if (open == 0) {
        return false;
      } else if (open == 1 && !assign(last)) {
        return false;
      }
    }
  }
  return true;
}

std::optional<PropId> Dpll::pick(std::mt19937_64* rng) {
  if (!rng) {
    for (PropId v = 0; v < num_vars_; ++v) {
      if (vals_[v] < 0) return v;
    }
    return std::nullopt;
  }
  std::vector<PropId> open;
  for (PropId v = 0; v < num_vars_; ++v) {
    if (vals_[v] < 0) open.push_back(v);
  }
  if (open.empty()) return std::nullopt;
  return open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(*rng)];
}

bool Dpll::search(std::mt19937_64* rng, std::size_t limit, const std::function<bool(const std::vector<bool>&)>* visit,
                  std::size_t* produced, std::vector<bool>* model) {
  reset();
  if (trivially_unsat_) return false;
  for (const auto& c : clauses_) {
    if (c.size() == 1 && !assign(c.front())) return false;
  }
  for (const auto& g : oneofs_) {
    if (g.size() == 1 && !assign(g.front())) return false;
  }
  if (!propagate()) return false;

  struct Decision {
    std::size_t trail_pos;
    Literal lit;
    bool flipped;
  };
  std::vector<Decision> stack;
  for (;;) {
    bool conflict = false;
    if (auto v = pick(rng)) {
      bool positive = false;
      if (rng) positive = std::uniform_int_distribution<int>(0, 1)(*rng) == 1;
      const Literal lit{*v, !positive};
      ++decisions_;
      stack.push_back({trail_.size(), lit, false});
      conflict = !(assign(lit) && propagate());
    } else {
      std::vector<bool> m(num_vars_, false);
      for (std::size_t i = 0; i < num_vars_; ++i) m[i] = vals_[i] == 1;
      if (!visit) {
        *model = std::move(m);
        return true;
      }
      ++*produced;
      if (!(*visit)(m) || *produced >= limit) return true;
      conflict = true;
    }
    while (conflict) {
      if (stack.empty()) return false;
      auto& d = stack.back();
      undo_to(d.trail_pos);
      if (d.flipped) {
        stack.pop_back();
        continue;
      }
      d.flipped = true;
      d.lit = ~d.lit;
      conflict = !(assign(d.lit) && propagate());
    }
  }
}

std::optional<std::vector<bool>> Dpll::solve(std::mt19937_64* rng) {
  std::vector<bool> model;
  if (!search(rng, 1, nullptr, nullptr, &model)) return std::nullopt;
  return model;
}

std::size_t Dpll::enumerate(std::size_t limit, const std::function<bool(const std::vector<bool>&)>& visit) {
  std::size_t produced = 0;
  if (limit == 0) return 0;
  search(nullptr, limit, &visit, &produced, nullptr);
  return produced;
}

bool Dpll::propagate_units(std::vector<std::int8_t>& values) {
  reset();
  bool ok = !trivially_unsat_;
  for (const auto& c : clauses_) {
    if (ok && c.size() == 1) ok = assign(c.front());
  }
  for (const auto& g : oneofs_) {
    if (ok && g.size() == 1) ok = assign(g.front());
  }
  ok = ok && propagate();
  values = vals_;
  return ok;
}

std::optional<std::vector<bool>> satisfiable(const SemiCnf& f) { return Dpll(f).solve(); }

}  // namespace sdr
