#include "sdr/classical.hpp"

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <queue>
#include <regex>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "sdr/errors.hpp"

namespace sdr {

namespace {

bool clause_holds(const Clause& c, const State& s) {
  return std::any_of(c.begin(), c.end(), [&](Literal l) { return s.holds(l); });
}

bool all_clauses_hold(const std::vector<Clause>& cs, const State& s) {
  return std::all_of(cs.begin(), cs.end(), [&](const Clause& c) { return clause_holds(c, s); });
}

}  // namespace

bool applicable(const ClassicalAction& a, const State& s) {
  return s.holds_all(a.pre) && all_clauses_hold(a.pre_disj, s);
}

State apply(const ClassicalAction& a, const State& s) {
  State next = s;
  std::vector<Literal> adds;
  for (const auto& e : a.effects) {
    if (!s.holds_all(e.cond) || !all_clauses_hold(e.cond_disj, s)) continue;
    if (e.effect.negated) {
      next.set(e.effect.prop, false);
    } else {
      adds.push_back(e.effect);
    }
  }
  for (Literal l : adds) next.set(l.prop, true);
  return next;
}

AdditiveHeuristic::AdditiveHeuristic(const ClassicalProblem& cp) : num_facts_(2 * cp.size()) {
  fact_users_.resize(num_facts_);
  fact_clauses_.resize(num_facts_);
  for (const auto& a : cp.actions) {
    for (const auto& e : a.effects) {
      Unit u;
      u.fact = fact(e.effect);
      for (Literal l : a.pre) u.facts.push_back(fact(l));
      for (Literal l : e.cond) u.facts.push_back(fact(l));
      std::sort(u.facts.begin(), u.facts.end());
      u.facts.erase(std::unique(u.facts.begin(), u.facts.end()), u.facts.end());
      auto add_clause = [&](const Clause& c) {
        if (c.size() == 1) {
          u.facts.push_back(fact(c.front()));
          return;
        }
        u.clauses.push_back(static_cast<std::uint32_t>(clauses_.size()));
        clauses_.push_back(c);
      };
      for (const auto& c : a.pre_disj) add_clause(c);
      for (const auto& c : e.cond_disj) add_clause(c);
      units_.push_back(std::move(u));
    }
  }
  clause_users_.resize(clauses_.size());
  for (std::uint32_t i = 0; i < units_.size(); ++i) {
    for (auto f : units_[i].facts) fact_users_[f].push_back(i);
    for (auto c : units_[i].clauses) clause_users_[c].push_back(i);
  }
  for (std::uint32_t c = 0; c < clauses_.size(); ++c) {
    for (Literal l : clauses_[c]) fact_clauses_[fact(l)].push_back(c);
  }
  for (Literal g : cp.goal) goal_.push_back(fact(g));
}

std::size_t AdditiveHeuristic::operator()(const State& s) {
  cost_.assign(num_facts_, kInfinity);
  unit_cost_.assign(units_.size(), 0);
  missing_.assign(units_.size(), 0);
  clause_done_.assign(clauses_.size(), false);
  using Entry = std::pair<std::size_t, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

  auto reach = [&](std::uint32_t f, std::size_t c) {
    if (c < cost_[f]) {
      cost_[f] = c;
      queue.push({c, f});
    }
  };
  for (std::uint32_t i = 0; i < units_.size(); ++i) {
    missing_[i] = static_cast<std::uint32_t>(units_[i].facts.size() + units_[i].clauses.size());
    unit_cost_[i] = 1;
    if (missing_[i] == 0) reach(units_[i].fact, 1);
  }
  for (PropId p = 0; p < num_facts_ / 2; ++p) reach(fact(Literal{p, !s.test(p)}), 0);

  auto satisfy = [&](std::uint32_t u, std::size_t c) {
    unit_cost_[u] += c;
    if (--missing_[u] == 0) reach(units_[u].fact, unit_cost_[u]);
  };
  while (!queue.empty()) {
    auto [c, f] = queue.top();
    queue.pop();
    if (c != cost_[f]) continue;
    for (auto u : fact_users_[f]) satisfy(u, c);
    for (auto cl : fact_clauses_[f]) {
      if (clause_done_[cl]) continue;
      clause_done_[cl] = true;
      for (auto u : clause_users_[cl]) satisfy(u, c);
    }
  }
  std::size_t h = 0;
  for (auto g : goal_) {
    if (cost_[g] == kInfinity) return kInfinity;
    h += cost_[g];
  }
  return h;
}

std::size_t heuristic(const State& s, const ClassicalProblem& cp) { return AdditiveHeuristic(cp)(s); }

SolveResult solve(const ClassicalProblem& cp, const SearchBudget& budget) {
  const auto start = std::chrono::steady_clock::now();
  AdditiveHeuristic h(cp);
  struct Node {
    State state;
    std::uint32_t parent;
    std::uint32_t action;
  };
  constexpr std::uint32_t kRoot = std::numeric_limits<std::uint32_t>::max();
  std::vector<Node> nodes;
  // (priority, insertion order, node)
  using Entry = std::tuple<std::size_t, std::uint64_t, std::uint32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::unordered_set<State, StateHash> closed;
  std::uint64_t counter = 0;

  nodes.push_back({cp.init, kRoot, 0});
  open.push({0, counter++, 0});
  SolveResult result;
  while (!open.empty()) {
    const auto [prio, order, id] = open.top();
    open.pop();
    if (!closed.insert(nodes[id].state).second) continue;
    const std::size_t value = h(nodes[id].state);
    if (value == kInfinity) continue;
    if (value == 0) {
      for (auto n = id; nodes[n].parent != kRoot; n = nodes[n].parent) result.plan.push_back(nodes[n].action);
      std::reverse(result.plan.begin(), result.plan.end());
      result.status = SolveResult::Status::Plan;
      return result;
    }
    if (++result.expansions >= budget.max_expansions ||
        ((result.expansions & 63) == 0 && std::chrono::steady_clock::now() - start > budget.wall_clock)) {
      result.status = SolveResult::Status::BudgetExhausted;
      return result;
    }
    for (std::uint32_t a = 0; a < cp.actions.size(); ++a) {
      const auto& act = cp.actions[a];
      if (!applicable(act, nodes[id].state)) continue;
      State next = apply(act, nodes[id].state);
      if (closed.count(next)) continue;
      nodes.push_back({std::move(next), id, a});
      open.push({value, counter++, static_cast<std::uint32_t>(nodes.size() - 1)});
    }
  }
  result.status = SolveResult::Status::Unsolvable;
  return result;
}

bool validate_plan(const ClassicalProblem& cp, const Plan& plan) {
  State s = cp.init;
  for (auto a : plan) {
    if (a >= cp.actions.size() || !applicable(cp.actions[a], s)) return false;
    s = apply(cp.actions[a], s);
  }
  return s.holds_all(cp.goal);
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

Plan parse_plan(const ClassicalProblem& cp, const std::string& text) {
  std::unordered_map<std::string, std::size_t> by_name;
  for (std::size_t i = 0; i < cp.actions.size(); ++i) by_name.emplace(lower(cp.actions[i].name), i);
  static const std::regex line_re(R"(^\s*(?:step\s*)?(?:\d+\s*:)?\s*\(?\s*([^\s()]+)[^)]*\)?\s*$)",
                                  std::regex::icase);
  Plan plan;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto c = line.find(';'); c != std::string::npos) line.erase(c);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::smatch m;
    if (!std::regex_match(line, m, line_re)) throw ExternalPlannerError("cannot parse plan line '" + line + "'");
    auto it = by_name.find(lower(m[1].str()));
    if (it == by_name.end()) throw ExternalPlannerError("unknown action '" + m[1].str() + "' in plan");
    plan.push_back(it->second);
  }
  return plan;
}

SolveResult solve_external(const ClassicalProblem& cp, const std::string& exec_path, const SearchBudget& budget) {
  namespace fs = std::filesystem;
  char tmpl[] = "/tmp/sdr-plan-XXXXXX";
  if (!mkdtemp(tmpl)) throw ExternalPlannerError("cannot create a temporary directory");
  const fs::path dir(tmpl);
  const auto text = emit_classical(cp);
  const fs::path domain = dir / "domain.cls.pddlish";
  const fs::path problem = dir / "problem.cls.pddlish";
  const fs::path plan_file = dir / "plan";
  const fs::path out_file = dir / "stdout";
  std::ofstream(domain) << text.domain;
  std::ofstream(problem) << text.problem;

  const pid_t pid = fork();
  if (pid < 0) throw ExternalPlannerError("fork failed");
  if (pid == 0) {
    const int fd = open(out_file.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
    if (fd >= 0) {
      dup2(fd, STDOUT_FILENO);
      close(fd);
    }
    setenv("SDR_PLAN_FILE", plan_file.c_str(), 1);
    execl(exec_path.c_str(), exec_path.c_str(), domain.c_str(), problem.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  for (;;) {
    const pid_t r = waitpid(pid, &status, WNOHANG);
    if (r == pid) break;
    if (std::chrono::steady_clock::now() - start > budget.wall_clock) {
      kill(pid, SIGKILL);
      waitpid(pid, &status, 0);
      fs::remove_all(dir);
      return {SolveResult::Status::BudgetExhausted, {}, 0};
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(5));
  }

  const std::string out = read_file(out_file);
  const std::string written = fs::exists(plan_file) ? read_file(plan_file) : std::string();
  fs::remove_all(dir);
  if (!WIFEXITED(status) || WEXITSTATUS(status) == 127) {
    throw ExternalPlannerError("external planner '" + exec_path + "' did not run to completion");
  }
  if (lower(out).find("unsolvable") != std::string::npos || lower(written).find("unsolvable") != std::string::npos) {
    return {SolveResult::Status::Unsolvable, {}, 0};
  }

  SolveResult result;
  if (!written.empty()) {
    result.plan = parse_plan(cp, written);
  } else {
    static const std::regex step_re(R"(^\s*(?:step\s*)?\d+\s*:.*$)", std::regex::icase);
    std::string lines;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
      if (std::regex_match(line, step_re)) lines += line + "\n";
    }
    if (lines.empty() && WEXITSTATUS(status) != 0) {
      throw ExternalPlannerError("external planner exited with status " + std::to_string(WEXITSTATUS(status)));
    }
    result.plan = parse_plan(cp, lines);
  }
  // Disjunctive guards are emitted as case splits, so check against that form.
  if (!validate_plan(to_cases(cp), result.plan)) throw ExternalPlannerError("external plan does not reach the goal");
  result.status = SolveResult::Status::Plan;
  return result;
}

}  // namespace sdr
