#include "sdr/parser.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "sdr/errors.hpp"
#include "sdr/sexpr.hpp"

namespace sdr {

namespace {

[[noreturn]] void syntax(const SExpr& at, const std::string& what) {
  throw SyntaxError(what, at.line, at.column);
}

const SExpr& expect_list(const SExpr& e, const std::string& what) {
  if (!e.is_list) syntax(e, "expected " + what);
  return e;
}

const std::string& expect_symbol(const SExpr& e, const std::string& what) {
  if (e.is_list || e.atom.empty()) syntax(e, "expected " + what);
  return e.atom;
}

bool is_variable(const std::string& s) { return !s.empty() && s.front() == '?'; }

// "a b - t c - u d" -> typed names; untyped default to "object".
std::vector<TypedName> parse_typed_list(const std::vector<SExpr>& items, std::size_t begin) {
  std::vector<TypedName> out;
  std::vector<std::string> pending;
  for (std::size_t i = begin; i < items.size(); ++i) {
    const auto& tok = expect_symbol(items[i], "name");
    if (tok == "-") {
      if (i + 1 >= items.size()) syntax(items[i], "missing type after '-'");
      const auto& type = expect_symbol(items[i + 1], "type name");
      for (auto& n : pending) out.push_back({std::move(n), type});
      pending.clear();
      ++i;
    } else {
      pending.push_back(tok);
    }
  }
  for (auto& n : pending) out.push_back({std::move(n), "object"});
  return out;
}

Atom parse_atom(const SExpr& e) {
  expect_list(e, "atom");
  if (e.items.empty()) syntax(e, "empty atom");
  Atom a;
  a.predicate = expect_symbol(e.items[0], "predicate name");
  for (std::size_t i = 1; i < e.items.size(); ++i) a.args.push_back(expect_symbol(e.items[i], "argument"));
  return a;
}

LiftedLiteral parse_literal(const SExpr& e) {
  expect_list(e, "literal");
  if (e.head() == "not") {
    if (e.items.size() != 2) syntax(e, "'not' takes exactly one atom");
    return {parse_atom(e.items[1]), true};
  }
  return {parse_atom(e), false};
}

// (and l1 l2 ...) or a single literal.
std::vector<LiftedLiteral> parse_conjunction(const SExpr& e) {
  expect_list(e, "condition");
  std::vector<LiftedLiteral> out;
  if (e.head() == "and") {
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      if (e.items[i].head() == "and") {
        auto inner = parse_conjunction(e.items[i]);
        out.insert(out.end(), inner.begin(), inner.end());
      } else {
        out.push_back(parse_literal(e.items[i]));
      }
    }
    return out;
  }
  if (e.head() == "or" || e.head() == "oneof" || e.head() == "when") {
    syntax(e, "'" + std::string(e.head()) + "' is not allowed here");
  }
  out.push_back(parse_literal(e));
  return out;
}

void parse_effect_into(const SExpr& e, std::vector<LiftedEffect>& out) {
  expect_list(e, "effect");
  if (e.head() == "and") {
    for (std::size_t i = 1; i < e.items.size(); ++i) parse_effect_into(e.items[i], out);
    return;
  }
  if (e.head() == "when") {
    if (e.items.size() != 3) syntax(e, "'when' takes a condition and an effect");
    LiftedEffect w;
    w.condition = parse_conjunction(e.items[1]);
    w.effects = parse_conjunction(e.items[2]);
    if (w.condition.empty()) {
      for (auto& l : w.effects) out.push_back({{}, {std::move(l)}});
    } else {
      out.push_back(std::move(w));
    }
    return;
  }
  out.push_back({{}, {parse_literal(e)}});
}

InitNode parse_init_node(const SExpr& e) {
  expect_list(e, "formula");
  InitNode n;
  const auto head = e.head();
  if (head == "and" || head == "or" || head == "oneof") {
    n.kind = head == "and" ? InitNode::Kind::And : head == "or" ? InitNode::Kind::Or : InitNode::Kind::OneOf;
    for (std::size_t i = 1; i < e.items.size(); ++i) n.children.push_back(parse_init_node(e.items[i]));
    if (n.kind != InitNode::Kind::And && n.children.empty()) syntax(e, "'" + std::string(head) + "' needs operands");
    return n;
  }
  if (head == "not") {
    if (e.items.size() != 2) syntax(e, "'not' takes exactly one operand");
    n.kind = InitNode::Kind::Not;
    n.children.push_back(parse_init_node(e.items[1]));
    return n;
  }
  n.kind = InitNode::Kind::Atom;
  n.atom = parse_atom(e);
  return n;
}

const SExpr& expect_define(const std::vector<SExpr>& forms, const char* kind) {
  if (forms.size() != 1) {
    if (forms.empty()) throw SyntaxError(std::string("empty ") + kind + " text", 1, 1);
    syntax(forms[1], "unexpected form after define");
  }
  const auto& d = forms.front();
  if (!d.is_list || d.head() != "define") syntax(d, "expected (define ...)");
  if (d.items.size() < 2) syntax(d, "missing name in define");
  const auto& hdr = expect_list(d.items[1], std::string("(") + kind + " name)");
  if (hdr.head() != kind || hdr.items.size() != 2) syntax(hdr, std::string("expected (") + kind + " name)");
  return d;
}

// ---- semantic checking ----------------------------------------------------

class DomainChecker {
 public:
  explicit DomainChecker(const LiftedDomain& d) : d_(d) {
    types_.insert("object");
    for (const auto& t : d.types) types_.insert(t.name);
    for (const auto& t : d.types) require_type(t.parent, "type '" + t.name + "'");
    for (const auto& p : d.predicates) {
      if (!preds_.emplace(p.name, p.params.size()).second) {
        throw SemanticError("predicate '" + p.name + "' declared twice");
      }
      for (const auto& a : p.params) require_type(a.type, "predicate '" + p.name + "'");
    }
    for (const auto& c : d.constants) {
      require_type(c.type, "constant '" + c.name + "'");
      constants_.insert(c.name);
    }
  }

  void check_actions() const {
    std::set<std::string> names;
    for (const auto& a : d_.actions) {
      if (!names.insert(a.name).second) throw SemanticError("action '" + a.name + "' declared twice");
      std::set<std::string> vars;
      for (const auto& p : a.parameters) {
        if (!is_variable(p.name)) throw SemanticError("action '" + a.name + "': parameter '" + p.name + "' is not a variable");
        require_type(p.type, "action '" + a.name + "'");
        vars.insert(p.name);
      }
      const std::string where = "action '" + a.name + "'";
      for (const auto& l : a.precondition) check_atom(l.atom, vars, where);
      for (const auto& e : a.effects) {
        for (const auto& l : e.condition) check_atom(l.atom, vars, where);
        for (const auto& l : e.effects) check_atom(l.atom, vars, where);
      }
      for (const auto& o : a.observes) check_atom(o, vars, where);
    }
  }

  void check_atom(const Atom& atom, const std::set<std::string>& vars, const std::string& where) const {
    auto it = preds_.find(atom.predicate);
    if (it == preds_.end()) throw SemanticError(where + ": undeclared predicate '" + atom.predicate + "'");
    if (it->second != atom.args.size()) {
      throw SemanticError(where + ": predicate '" + atom.predicate + "' expects " + std::to_string(it->second) +
                          " arguments, got " + std::to_string(atom.args.size()));
    }
    for (const auto& arg : atom.args) {
      if (is_variable(arg)) {
        if (!vars.count(arg)) throw SemanticError(where + ": unbound variable '" + arg + "'");
      } else if (!constants_.count(arg) && !objects_.count(arg)) {
        throw SemanticError(where + ": undeclared object '" + arg + "'");
      }
    }
  }

  void require_type(const std::string& t, const std::string& where) const {
    if (!types_.count(t)) throw SemanticError(where + ": undeclared type '" + t + "'");
  }

  void add_objects(const std::vector<TypedName>& objs) {
    for (const auto& o : objs) {
      require_type(o.type, "object '" + o.name + "'");
      if (constants_.count(o.name) || !objects_.insert(o.name).second) {
        throw SemanticError("object '" + o.name + "' declared twice");
      }
    }
  }

 private:
  const LiftedDomain& d_;
  std::set<std::string> types_;
  std::map<std::string, std::size_t> preds_;
  std::set<std::string> constants_;
  std::set<std::string> objects_;
};

void check_init(const InitNode& n, const DomainChecker& chk) {
  if (n.kind == InitNode::Kind::Atom) {
    chk.check_atom(n.atom, {}, "init");
    return;
  }
  for (const auto& c : n.children) check_init(c, chk);
}

}  // namespace

LiftedDomain parse_domain(std::string_view text) {
  const auto forms = read_sexprs(text);
  const auto& d = expect_define(forms, "domain");
  LiftedDomain dom;
  dom.name = expect_symbol(d.items[1].items[1], "domain name");
  for (std::size_t i = 2; i < d.items.size(); ++i) {
    const auto& sec = expect_list(d.items[i], "domain section");
    const auto head = sec.head();
    if (head == ":requirements") {
      continue;
    } else if (head == ":types") {
      for (auto& t : parse_typed_list(sec.items, 1)) dom.types.push_back({t.name, t.type});
    } else if (head == ":constants") {
      auto cs = parse_typed_list(sec.items, 1);
      dom.constants.insert(dom.constants.end(), cs.begin(), cs.end());
    } else if (head == ":predicates") {
      for (std::size_t j = 1; j < sec.items.size(); ++j) {
        const auto& p = expect_list(sec.items[j], "predicate declaration");
        if (p.items.empty()) syntax(p, "empty predicate declaration");
        PredicateDecl decl;
        decl.name = expect_symbol(p.items[0], "predicate name");
        decl.params = parse_typed_list(p.items, 1);
        dom.predicates.push_back(std::move(decl));
      }
    } else if (head == ":action") {
      if (sec.items.size() < 2) syntax(sec, "missing action name");
      ActionSchema a;
      a.name = expect_symbol(sec.items[1], "action name");
      for (std::size_t j = 2; j < sec.items.size(); j += 2) {
        const auto& key = expect_symbol(sec.items[j], "action keyword");
        if (j + 1 >= sec.items.size()) syntax(sec.items[j], "missing value for " + key);
        const auto& val = sec.items[j + 1];
        if (key == ":parameters") {
          a.parameters = parse_typed_list(expect_list(val, "parameter list").items, 0);
        } else if (key == ":precondition") {
          a.precondition = parse_conjunction(val);
        } else if (key == ":effect") {
          parse_effect_into(val, a.effects);
        } else if (key == ":observe") {
          expect_list(val, "observed atom");
          if (val.head() == "and") {
            for (std::size_t k = 1; k < val.items.size(); ++k) a.observes.push_back(parse_atom(val.items[k]));
          } else {
            a.observes.push_back(parse_atom(val));
          }
        } else {
          syntax(sec.items[j], "unknown action keyword '" + key + "'");
        }
      }
      dom.actions.push_back(std::move(a));
    } else {
      syntax(sec, "unknown domain section '" + std::string(head) + "'");
    }
  }
  DomainChecker chk(dom);
  chk.check_actions();
  return dom;
}

LiftedProblem parse_problem(std::string_view text, const LiftedDomain& domain) {
  const auto forms = read_sexprs(text);
  const auto& d = expect_define(forms, "problem");
  LiftedProblem prob;
  prob.name = expect_symbol(d.items[1].items[1], "problem name");
  bool has_init = false;
  for (std::size_t i = 2; i < d.items.size(); ++i) {
    const auto& sec = expect_list(d.items[i], "problem section");
    const auto head = sec.head();
    if (head == ":domain") {
      if (sec.items.size() != 2) syntax(sec, "expected (:domain name)");
      prob.domain = expect_symbol(sec.items[1], "domain name");
    } else if (head == ":requirements") {
      continue;
    } else if (head == ":objects") {
      auto os = parse_typed_list(sec.items, 1);
      prob.objects.insert(prob.objects.end(), os.begin(), os.end());
    } else if (head == ":init") {
      has_init = true;
      if (sec.items.size() == 2) {
        prob.init = parse_init_node(sec.items[1]);
        if (prob.init.kind != InitNode::Kind::And) {
          InitNode wrap;
          wrap.children.push_back(std::move(prob.init));
          prob.init = std::move(wrap);
        }
      } else {
        prob.init = InitNode{};
        for (std::size_t j = 1; j < sec.items.size(); ++j) prob.init.children.push_back(parse_init_node(sec.items[j]));
      }
    } else if (head == ":goal") {
      if (sec.items.size() != 2) syntax(sec, "expected (:goal <conjunction>)");
      prob.goal = parse_conjunction(sec.items[1]);
    } else {
      syntax(sec, "unknown problem section '" + std::string(head) + "'");
    }
  }
  if (!has_init) syntax(d, "problem has no :init");
  if (!prob.domain.empty() && prob.domain != domain.name) {
    throw SemanticError("problem refers to domain '" + prob.domain + "' but domain is '" + domain.name + "'");
  }
  DomainChecker chk(domain);
  chk.add_objects(prob.objects);
  check_init(prob.init, chk);
  for (const auto& g : prob.goal) chk.check_atom(g.atom, {}, "goal");
  return prob;
}

std::pair<LiftedDomain, LiftedProblem> parse(std::string_view domain_text, std::string_view problem_text) {
  auto dom = parse_domain(domain_text);
  auto prob = parse_problem(problem_text, dom);
  return {std::move(dom), std::move(prob)};
}

// ---- printing ---------------------------------------------------------------

namespace {

std::string typed_list(const std::vector<TypedName>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ' ';
    out += names[i].name;
    const bool last_of_type = i + 1 == names.size() || names[i + 1].type != names[i].type;
    if (last_of_type && names[i].type != "object") out += " - " + names[i].type;
    if (last_of_type && names[i].type == "object" && i + 1 < names.size()) out += " - object";
  }
  return out;
}

std::string atom_text(const Atom& a) {
  std::string out = "(" + a.predicate;
  for (const auto& x : a.args) out += " " + x;
  return out + ")";
}

std::string literal_text(const LiftedLiteral& l) {
  return l.negated ? "(not " + atom_text(l.atom) + ")" : atom_text(l.atom);
}

std::string conj_text(const std::vector<LiftedLiteral>& ls) {
  std::string out = "(and";
  for (const auto& l : ls) out += " " + literal_text(l);
  return out + ")";
}

std::string init_text(const InitNode& n) {
  switch (n.kind) {
    case InitNode::Kind::Atom:
      return atom_text(n.atom);
    case InitNode::Kind::Not:
      return "(not " + init_text(n.children.front()) + ")";
    default: {
      std::string out = n.kind == InitNode::Kind::And ? "(and" : n.kind == InitNode::Kind::Or ? "(or" : "(oneof";
      for (const auto& c : n.children) out += "\n    " + init_text(c);
      return out + ")";
    }
  }
}

}  // namespace

std::string to_text(const LiftedDomain& d) {
  std::ostringstream os;
  os << "(define (domain " << d.name << ")\n";
  if (!d.types.empty()) {
    std::vector<TypedName> ts;
    for (const auto& t : d.types) ts.push_back({t.name, t.parent});
    os << "  (:types " << typed_list(ts) << ")\n";
  }
  if (!d.constants.empty()) os << "  (:constants " << typed_list(d.constants) << ")\n";
  os << "  (:predicates";
  for (const auto& p : d.predicates) {
    os << "\n    (" << p.name;
    if (!p.params.empty()) os << " " << typed_list(p.params);
    os << ")";
  }
  os << ")\n";
  for (const auto& a : d.actions) {
    os << "  (:action " << a.name << "\n";
    os << "    :parameters (" << typed_list(a.parameters) << ")\n";
    if (!a.precondition.empty()) os << "    :precondition " << conj_text(a.precondition) << "\n";
    if (!a.effects.empty()) {
      os << "    :effect (and";
      for (const auto& e : a.effects) {
        if (e.condition.empty()) {
          for (const auto& l : e.effects) os << "\n      " << literal_text(l);
        } else {
          os << "\n      (when " << conj_text(e.condition) << " " << conj_text(e.effects) << ")";
        }
      }
      os << ")\n";
    }
    if (!a.observes.empty()) {
      if (a.observes.size() == 1) {
        os << "    :observe " << atom_text(a.observes.front()) << "\n";
      } else {
        os << "    :observe (and";
        for (const auto& o : a.observes) os << " " << atom_text(o);
        os << ")\n";
      }
    }
    os << "  )\n";
  }
  os << ")\n";
  return os.str();
}

std::string to_text(const LiftedProblem& p) {
  std::ostringstream os;
  os << "(define (problem " << p.name << ")\n";
  if (!p.domain.empty()) os << "  (:domain " << p.domain << ")\n";
  if (!p.objects.empty()) os << "  (:objects " << typed_list(p.objects) << ")\n";
  os << "  (:init " << init_text(p.init) << ")\n";
  os << "  (:goal " << conj_text(p.goal) << ")\n";
  os << ")\n";
  return os.str();
}

}  // namespace sdr
