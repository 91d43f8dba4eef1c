#include "sdr/formula.hpp"

#include <algorithm>
#include <cassert>

namespace sdr {

Formula Formula::literal(Literal l) {
  Formula f(Kind::Lit);
  f.lit_ = l;
  return f;
}

Formula Formula::conj(std::vector<Formula> children) {
  std::vector<Formula> flat;
  flat.reserve(children.size());
  for (auto& c : children) {
    switch (c.kind_) {
      case Kind::True:
        break;
      case Kind::False:
        return falsity();
      case Kind::And:
        for (auto& g : c.children_) flat.push_back(std::move(g));
        break;
      default:
        flat.push_back(std::move(c));
    }
  }
  // Cheap contradiction check over literal members.
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (!flat[i].is_literal()) continue;
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      if (flat[j].is_literal() && flat[j].lit_ == ~flat[i].lit_) return falsity();
    }
  }
  // Drop duplicate literal members.
  std::vector<Formula> uniq;
  uniq.reserve(flat.size());
  for (auto& c : flat) {
    if (c.is_literal() && std::find(uniq.begin(), uniq.end(), c) != uniq.end()) continue;
    uniq.push_back(std::move(c));
  }
  if (uniq.empty()) return truth();
  if (uniq.size() == 1) return std::move(uniq.front());
  Formula f(Kind::And);
  f.children_ = std::move(uniq);
  return f;
}

Formula Formula::disj(std::vector<Formula> children) {
  std::vector<Formula> flat;
  flat.reserve(children.size());
  for (auto& c : children) {
    switch (c.kind_) {
      case Kind::False:
        break;
      case Kind::True:
        return truth();
      case Kind::Or:
        for (auto& g : c.children_) flat.push_back(std::move(g));
        break;
      default:
        flat.push_back(std::move(c));
    }
  }
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (!flat[i].is_literal()) continue;
    for (std::size_t j = i + 1; j < flat.size(); ++j) {
      if (flat[j].is_literal() && flat[j].lit_ == ~flat[i].lit_) return truth();
    }
  }
  std::vector<Formula> uniq;
  uniq.reserve(flat.size());
  for (auto& c : flat) {
    if (c.is_literal() && std::find(uniq.begin(), uniq.end(), c) != uniq.end()) continue;
    uniq.push_back(std::move(c));
  }
  if (uniq.empty()) return falsity();
  if (uniq.size() == 1) return std::move(uniq.front());
  Formula f(Kind::Or);
  f.children_ = std::move(uniq);
  return f;
}

Formula Formula::one_of(std::vector<Literal> lits) {
  if (lits.empty()) return falsity();
  if (lits.size() == 1) return literal(lits.front());
  Formula f(Kind::OneOf);
  for (Literal l : lits) f.children_.push_back(literal(l));
  return f;
}

Formula Formula::conj_of(const LiteralSet& lits) {
  std::vector<Formula> cs;
  cs.reserve(lits.size());
  for (Literal l : lits) cs.push_back(literal(l));
  return conj(std::move(cs));
}

Formula Formula::disj_of(const LiteralSet& lits) {
  std::vector<Formula> cs;
  cs.reserve(lits.size());
  for (Literal l : lits) cs.push_back(literal(l));
  return disj(std::move(cs));
}

std::vector<Literal> Formula::one_of_literals() const {
  std::vector<Literal> out;
  for (const auto& c : children_) out.push_back(c.lit_);
  return out;
}

bool Formula::evaluate(const State& s) const {
  switch (kind_) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Lit:
      return s.holds(lit_);
    case Kind::And:
      for (const auto& c : children_) {
        if (!c.evaluate(s)) return false;
      }
      return true;
    case Kind::Or:
      for (const auto& c : children_) {
        if (c.evaluate(s)) return true;
      }
      return false;
    case Kind::OneOf: {
      int n = 0;
      for (const auto& c : children_) n += c.evaluate(s) ? 1 : 0;
      return n == 1;
    }
  }
  return false;
}

std::optional<bool> Formula::evaluate_partial(const std::vector<std::int8_t>& value) const {
  switch (kind_) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Lit: {
      const auto v = value[lit_.prop];
      if (v < 0) return std::nullopt;
      return (v == 1) != lit_.negated;
    }
    case Kind::And: {
      bool open = false;
      for (const auto& c : children_) {
        auto r = c.evaluate_partial(value);
        if (!r) {
          open = true;
        } else if (!*r) {
          return false;
        }
      }
      if (open) return std::nullopt;
      return true;
    }
    case Kind::Or: {
      bool open = false;
      for (const auto& c : children_) {
        auto r = c.evaluate_partial(value);
        if (!r) {
          open = true;
        } else if (*r) {
          return true;
        }
      }
      if (open) return std::nullopt;
      return false;
    }
    case Kind::OneOf: {
      int trues = 0;
      int open = 0;
      for (const auto& c : children_) {
        auto r = c.evaluate_partial(value);
        if (!r) {
          ++open;
        } else if (*r) {
          ++trues;
        }
      }
      if (trues > 1) return false;
      if (open == 0) return trues == 1;
      if (trues == 1) {
        // Remaining open members must all be false; undetermined.
        return std::nullopt;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

namespace {

Formula expand_one_of(const std::vector<Literal>& lits) {
  std::vector<Formula> parts;
  parts.push_back(Formula::disj_of(lits));
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      parts.push_back(Formula::disj_of({~lits[i], ~lits[j]}));
    }
  }
  return Formula::conj(std::move(parts));
}

}  // namespace

Formula Formula::negated() const {
  switch (kind_) {
    case Kind::True:
      return falsity();
    case Kind::False:
      return truth();
    case Kind::Lit:
      return literal(~lit_);
    case Kind::And: {
      std::vector<Formula> cs;
      for (const auto& c : children_) cs.push_back(c.negated());
      return disj(std::move(cs));
    }
    case Kind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : children_) cs.push_back(c.negated());
      return conj(std::move(cs));
    }
    case Kind::OneOf:
      return expand_one_of(one_of_literals()).negated();
  }
  return truth();
}

Formula Formula::simplified(const std::vector<std::int8_t>& known) const {
  switch (kind_) {
    case Kind::True:
    case Kind::False:
      return *this;
    case Kind::Lit: {
      const auto v = known[lit_.prop];
      if (v < 0) return *this;
      return ((v == 1) != lit_.negated) ? truth() : falsity();
    }
    case Kind::And: {
      std::vector<Formula> cs;
      for (const auto& c : children_) {
        auto s = c.simplified(known);
        if (s.is_false()) return falsity();
        cs.push_back(std::move(s));
      }
      return conj(std::move(cs));
    }
    case Kind::Or: {
      std::vector<Formula> cs;
      for (const auto& c : children_) {
        auto s = c.simplified(known);
        if (s.is_true()) return truth();
        cs.push_back(std::move(s));
      }
      return disj(std::move(cs));
    }
    case Kind::OneOf: {
      std::vector<Literal> open;
      int trues = 0;
      for (const auto& c : children_) {
        const auto v = known[c.lit_.prop];
        if (v < 0) {
          open.push_back(c.lit_);
        } else if ((v == 1) != c.lit_.negated) {
          ++trues;
        }
      }
      if (trues > 1) return falsity();
      if (trues == 1) {
        std::vector<Formula> cs;
        for (Literal l : open) cs.push_back(literal(~l));
        return conj(std::move(cs));
      }
      return one_of(std::move(open));
    }
  }
  return *this;
}

LiteralSet Formula::top_level_units() const {
  LiteralSet out;
  if (kind_ == Kind::Lit) {
    out.push_back(lit_);
  } else if (kind_ == Kind::And) {
    for (const auto& c : children_) {
      if (c.is_literal()) out.push_back(c.lit_);
    }
  }
  return out;
}

void Formula::collect_props(std::vector<PropId>& out) const {
  if (kind_ == Kind::Lit) {
    out.push_back(lit_.prop);
    return;
  }
  for (const auto& c : children_) c.collect_props(out);
}

std::string Formula::to_string(const std::vector<std::string>* names) const {
  auto lit_str = [&](Literal l) {
    std::string atom = names ? (*names)[l.prop] : "p" + std::to_string(l.prop);
    return l.negated ? "(not " + atom + ")" : atom;
  };
  switch (kind_) {
    case Kind::True:
      return "(and)";
    case Kind::False:
      return "(or)";
    case Kind::Lit:
      return lit_str(lit_);
    case Kind::And:
    case Kind::Or:
    case Kind::OneOf: {
      std::string out = kind_ == Kind::And ? "(and" : kind_ == Kind::Or ? "(or" : "(oneof";
      for (const auto& c : children_) out += " " + c.to_string(names);
      return out + ")";
    }
  }
  return "";
}

}  // namespace sdr
