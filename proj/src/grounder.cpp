#include "sdr/grounder.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <variant>

#include "sdr/errors.hpp"

namespace sdr {

namespace {

using AtomKey = std::pair<std::size_t, std::vector<std::uint32_t>>;

struct Object {
  std::string name;
  std::string type;
};

class Grounder {
 public:
  Grounder(const LiftedDomain& d, const LiftedProblem& p, const GroundOptions& opts) : d_(d), p_(p), opts_(opts) {
    for (const auto& t : d.types) parent_[t.name] = t.parent;
    std::vector<Object> objs;
    for (const auto& c : d.constants) objs.push_back({c.name, c.type});
    for (const auto& o : p.objects) objs.push_back({o.name, o.type});
    std::sort(objs.begin(), objs.end(), [](const Object& a, const Object& b) { return a.name < b.name; });
    for (std::size_t i = 0; i < objs.size(); ++i) object_index_[objs[i].name] = static_cast<std::uint32_t>(i);
    objects_ = std::move(objs);
    for (std::size_t i = 0; i < d.predicates.size(); ++i) pred_index_[d.predicates[i].name] = i;
    for (const auto& a : d.actions) {
      for (const auto& e : a.effects) {
        for (const auto& l : e.effects) fluent_.insert(l.atom.predicate);
      }
    }
  }

  Problem run() {
    analyse_init();
    intern_propositions();
    out_.set_name(p_.name);
    build_init();
    for (const auto& schema : d_.actions) ground_schema(schema);
    build_goal();
    return std::move(out_);
  }

 private:
  // ---- objects and types ----

  bool is_subtype(std::string t, const std::string& target) const {
    for (int guard = 0; guard < 64; ++guard) {
      if (t == target) return true;
      if (t == "object") return false;
      auto it = parent_.find(t);
      if (it == parent_.end()) return false;
      t = it->second;
    }
    return false;
  }

  const std::vector<std::uint32_t>& objects_of(const std::string& type) {
    auto it = typed_.find(type);
    if (it != typed_.end()) return it->second;
    std::vector<std::uint32_t> ids;
    for (std::uint32_t i = 0; i < objects_.size(); ++i) {
      if (is_subtype(objects_[i].type, type)) ids.push_back(i);
    }
    return typed_.emplace(type, std::move(ids)).first->second;
  }

  std::string atom_name(const AtomKey& k) const {
    std::string n = d_.predicates[k.first].name;
    for (auto o : k.second) n += "-" + objects_[o].name;
    return n;
  }

  AtomKey key_of(const Atom& a, const std::map<std::string, std::uint32_t>& binding) const {
    AtomKey k{pred_index_.at(a.predicate), {}};
    for (const auto& arg : a.args) {
      auto b = binding.find(arg);
      k.second.push_back(b != binding.end() ? b->second : object_index_.at(arg));
    }
    return k;
  }

  // ---- initial state analysis ----

  void collect_atoms(const InitNode& n, std::set<AtomKey>& out) const {
    if (n.kind == InitNode::Kind::Atom) {
      out.insert(key_of(n.atom, {}));
      return;
    }
    for (const auto& c : n.children) collect_atoms(c, out);
  }

  void flatten_top(const InitNode& n, std::vector<const InitNode*>& out) const {
    if (n.kind == InitNode::Kind::And) {
      for (const auto& c : n.children) flatten_top(c, out);
    } else {
      out.push_back(&n);
    }
  }

  void analyse_init() {
    flatten_top(p_.init, top_);
    for (const InitNode* n : top_) {
      if (n->kind == InitNode::Kind::Atom) {
        units_[key_of(n->atom, {})] = true;
      } else if (n->kind == InitNode::Kind::Not && n->children.front().kind == InitNode::Kind::Atom) {
        units_[key_of(n->children.front().atom, {})] = false;
      } else {
        collect_atoms(*n, uncertain_);
      }
    }
    collect_atoms(p_.init, mentioned_);
  }

  bool is_constant(const AtomKey& k) const {
    return opts_.simplify_static && !fluent_.count(d_.predicates[k.first].name) && !uncertain_.count(k);
  }

  bool constant_value(const AtomKey& k) const {
    auto it = units_.find(k);
    return it != units_.end() && it->second;
  }

  void all_atoms_of(std::size_t pred, std::set<AtomKey>& out) {
    const auto& params = d_.predicates[pred].params;
    std::vector<const std::vector<std::uint32_t>*> domains;
    for (const auto& prm : params) domains.push_back(&objects_of(prm.type));
    std::vector<std::uint32_t> args(params.size());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == params.size()) {
        out.insert({pred, args});
        return;
      }
      for (auto o : *domains[i]) {
        args[i] = o;
        rec(i + 1);
      }
    };
    rec(0);
  }

  void intern_propositions() {
    std::set<AtomKey> keys;
    for (std::size_t i = 0; i < d_.predicates.size(); ++i) {
      if (!opts_.simplify_static || fluent_.count(d_.predicates[i].name)) all_atoms_of(i, keys);
    }
    keys.insert(uncertain_.begin(), uncertain_.end());
    std::map<std::string, AtomKey> names;
    for (const auto& k : keys) {
      auto name = atom_name(k);
      auto [it, fresh] = names.emplace(name, k);
      if (!fresh) throw SemanticError("ground atom name '" + name + "' is ambiguous");
      prop_of_[k] = out_.add_proposition(name);
    }
  }

  // Constant truth value, or the literal over P.
  std::variant<bool, Literal> resolve(const AtomKey& k, bool negated) const {
    if (is_constant(k)) return constant_value(k) != negated;
    return Literal{prop_of_.at(k), negated};
  }

  Formula convert(const InitNode& n) const {
    switch (n.kind) {
      case InitNode::Kind::Atom: {
        auto r = resolve(key_of(n.atom, {}), false);
        if (auto* b = std::get_if<bool>(&r)) return *b ? Formula::truth() : Formula::falsity();
        return Formula::literal(std::get<Literal>(r));
      }
      case InitNode::Kind::Not:
        return convert(n.children.front()).negated();
      case InitNode::Kind::And:
      case InitNode::Kind::Or: {
        std::vector<Formula> cs;
        for (const auto& c : n.children) cs.push_back(convert(c));
        return n.kind == InitNode::Kind::And ? Formula::conj(std::move(cs)) : Formula::disj(std::move(cs));
      }
      case InitNode::Kind::OneOf: {
        std::vector<Literal> lits;
        for (const auto& c : n.children) {
          if (c.kind != InitNode::Kind::Atom) throw SemanticError("oneof expects atoms");
          lits.push_back({prop_of_.at(key_of(c.atom, {})), false});
        }
        return Formula::one_of(std::move(lits));
      }
    }
    return Formula::truth();
  }

  void build_init() {
    std::vector<Formula> parts;
    for (const InitNode* n : top_) parts.push_back(convert(*n));
    for (const auto& [k, id] : prop_of_) {
      if (!mentioned_.count(k)) parts.push_back(Formula::literal(Literal::neg(id)));
    }
    auto init = Formula::conj(std::move(parts));
    // A tautology such as (or p (not p)) folds away, but p must stay free
    // rather than fall under the closed-world default.
    std::vector<PropId> present;
    init.collect_props(present);
    const std::set<PropId> present_set(present.begin(), present.end());
    std::vector<Formula> free;
    for (const auto& k : uncertain_) {
      const auto it = prop_of_.find(k);
      if (it != prop_of_.end() && !present_set.count(it->second)) {
        free.push_back(Formula::one_of({Literal::pos(it->second), Literal::neg(it->second)}));
      }
    }
    if (!free.empty()) {
      free.push_back(std::move(init));
      init = Formula::conj(std::move(free));
    }
    if (init.is_false()) throw SemanticError("initial state formula is unsatisfiable");
    out_.set_init(std::move(init));
  }

  void build_goal() {
    LiteralSet goal;
    for (const auto& g : p_.goal) {
      auto r = resolve(key_of(g.atom, {}), g.negated);
      if (auto* b = std::get_if<bool>(&r)) {
        if (!*b) throw SemanticError("goal literal on static atom '" + atom_name(key_of(g.atom, {})) + "' is never true");
        continue;
      }
      goal.push_back(std::get<Literal>(r));
    }
    out_.set_goal(normalized(std::move(goal)));
  }

  // ---- actions ----

  // Grounds a conjunction. nullopt when statically false.
  std::optional<LiteralSet> ground_conj(const std::vector<LiftedLiteral>& lits,
                                        const std::map<std::string, std::uint32_t>& b) const {
    LiteralSet out;
    for (const auto& l : lits) {
      auto r = resolve(key_of(l.atom, b), l.negated);
      if (auto* v = std::get_if<bool>(&r)) {
        if (!*v) return std::nullopt;
        continue;
      }
      out.push_back(std::get<Literal>(r));
    }
    out = normalized(std::move(out));
    if (has_complementary_pair(out)) return std::nullopt;
    return out;
  }

  void ground_schema(const ActionSchema& s) {
    const std::size_t n = s.parameters.size();
    std::vector<const std::vector<std::uint32_t>*> domains;
    for (const auto& prm : s.parameters) domains.push_back(&objects_of(prm.type));

    // Precondition literals over static atoms, checked as soon as their
    // variables are bound.
    std::vector<std::vector<const LiftedLiteral*>> early(n + 1);
    std::map<std::string, std::size_t> pos;
    for (std::size_t i = 0; i < n; ++i) pos[s.parameters[i].name] = i + 1;
    for (const auto& l : s.precondition) {
      if (!opts_.simplify_static || fluent_.count(l.atom.predicate)) continue;
      std::size_t depth = 0;
      for (const auto& a : l.atom.args) {
        auto it = pos.find(a);
        if (it != pos.end()) depth = std::max(depth, it->second);
      }
      early[depth].push_back(&l);
    }

    std::map<std::string, std::uint32_t> binding;
    std::vector<std::uint32_t> args(n);
    auto passes = [&](std::size_t depth) {
      for (const auto* l : early[depth]) {
        auto k = key_of(l->atom, binding);
        if (is_constant(k) && constant_value(k) == l->negated) return false;
      }
      return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == n) {
        emit(s, binding, args);
        return;
      }
      for (auto o : *domains[i]) {
        binding[s.parameters[i].name] = o;
        args[i] = o;
        if (passes(i + 1)) rec(i + 1);
      }
      binding.erase(s.parameters[i].name);
    };
    if (passes(0)) rec(0);
  }

  void emit(const ActionSchema& s, const std::map<std::string, std::uint32_t>& b, const std::vector<std::uint32_t>& args) {
    auto pre = ground_conj(s.precondition, b);
    if (!pre) return;
    Action a;
    a.name = s.name;
    for (auto o : args) a.name += "-" + objects_[o].name;
    a.pre = *pre;
    for (const auto& e : s.effects) {
      auto cond = ground_conj(e.condition, b);
      if (!cond) continue;
      LiteralSet joint = a.pre;
      joint.insert(joint.end(), cond->begin(), cond->end());
      if (has_complementary_pair(joint)) continue;
      for (const auto& l : e.effects) {
        // Effect atoms are fluent, hence never folded.
        a.effects.push_back({*cond, {prop_of_.at(key_of(l.atom, b)), l.negated}});
      }
    }
    for (const auto& o : s.observes) {
      auto r = resolve(key_of(o, b), false);
      if (auto* lit = std::get_if<Literal>(&r)) {
        if (std::find(a.observes.begin(), a.observes.end(), lit->prop) == a.observes.end()) a.observes.push_back(lit->prop);
      }
    }
    if (opts_.simplify_static && a.effects.empty() && a.observes.empty()) return;

    if (opts_.split_mixed_actions && a.changes_state() && a.is_sensing()) {
      Action sense{"sense-" + a.name, a.pre, {}, a.observes};
      a.observes.clear();
      add(std::move(a));
      add(std::move(sense));
    } else {
      add(std::move(a));
    }
  }

  void add(Action a) {
    if (opts_.check_consistency) check_action_consistency(a, out_.prop_names());
    out_.add_action(std::move(a));
  }

  const LiftedDomain& d_;
  const LiftedProblem& p_;
  GroundOptions opts_;
  std::map<std::string, std::string> parent_;
  std::vector<Object> objects_;
  std::map<std::string, std::uint32_t> object_index_;
  std::map<std::string, std::size_t> pred_index_;
  std::set<std::string> fluent_;
  std::map<std::string, std::vector<std::uint32_t>> typed_;
  std::vector<const InitNode*> top_;
  std::map<AtomKey, bool> units_;
  std::set<AtomKey> uncertain_;
  std::set<AtomKey> mentioned_;
  std::map<AtomKey, PropId> prop_of_;
  Problem out_;
};

}  // namespace

Problem ground(const LiftedDomain& domain, const LiftedProblem& problem, const GroundOptions& opts) {
  return Grounder(domain, problem, opts).run();
}

Problem load_problem(std::string_view domain_text, std::string_view problem_text, const GroundOptions& opts) {
  auto [d, p] = parse(domain_text, problem_text);
  return ground(d, p, opts);
}

}  // namespace sdr
