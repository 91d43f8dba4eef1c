#include "sdr/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "sdr/belief.hpp"
#include "sdr/domains.hpp"
#include "sdr/errors.hpp"
#include "sdr/grounder.hpp"
#include "sdr/translator.hpp"

namespace sdr {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Input problems: unreadable files, parse errors, bad generator parameters.
struct InputError : Error {
  using Error::Error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out || !(out << text)) throw InputError("cannot write '" + path + "'");
}

struct Options {
  std::string domain, problem, family, params, out, external_planner;
  std::string mode = "plain";
  std::uint64_t seed = 0;
  std::size_t sample_size = 2, runs = 25, jobs = 1, max_actions = 500, budget_expansions = 200000;
  double budget_seconds = 60;
  bool no_timing = false;
};

Mode parse_mode(const std::string& m) {
  if (m == "plain") return Mode::Plain;
  if (m == "obs") return Mode::ObsBias;
  return Mode::StateRefutation;
}

void add_instance_options(CLI::App* sub, Options& o) {
  sub->add_option("--domain", o.domain, "domain file");
  sub->add_option("--problem", o.problem, "problem file");
  sub->add_option("--family", o.family, "generate the instance instead of reading files")
      ->check(CLI::IsMember(domain_families()));
  sub->add_option("--params", o.params, "generator parameters, e.g. n=5");
}

void add_planner_options(CLI::App* sub, Options& o) {
  sub->add_option("--mode", o.mode, "plain, obs or sr")->check(CLI::IsMember({"plain", "obs", "sr"}));
  sub->add_option("--sample-size", o.sample_size, "sampled initial states per replanning episode")
      ->check(CLI::PositiveNumber);
  sub->add_option("--seed", o.seed, "random seed");
  sub->add_option("--budget-expansions", o.budget_expansions, "node expansions per classical search");
  sub->add_option("--budget-seconds", o.budget_seconds, "seconds per classical search");
  sub->add_option("--max-actions", o.max_actions, "executed actions before giving up");
  sub->add_option("--external-planner", o.external_planner, "classical planner executable");
}

struct Instance {
  std::string name;
  Problem problem;
};

Instance load_instance(const Options& o) {
  std::string domain_text, problem_text;
  if (!o.family.empty()) {
    if (!o.domain.empty() || !o.problem.empty()) throw InputError("give either --family or --domain/--problem");
    auto g = generate({o.family, parse_params(o.params), o.seed});
    domain_text = std::move(g.domain);
    problem_text = std::move(g.problem);
  } else {
    if (o.domain.empty() || o.problem.empty()) throw InputError("--domain and --problem are both required");
    domain_text = read_text(o.domain);
    problem_text = read_text(o.problem);
  }
  Problem p = load_problem(domain_text, problem_text);
  std::string name = p.name();
  return {std::move(name), std::move(p)};
}

SdrConfig make_config(const Options& o) {
  SdrConfig cfg;
  cfg.sample_size = o.sample_size;
  cfg.mode = parse_mode(o.mode);
  cfg.seed = o.seed;
  cfg.budget.max_expansions = o.budget_expansions;
  cfg.budget.wall_clock = std::chrono::duration<double>(o.budget_seconds);
  cfg.max_total_actions = o.max_actions;
  cfg.external_planner = o.external_planner;
  return cfg;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

int cmd_gen(const Options& o, std::ostream& out) {
  if (o.family.empty()) throw InputError("gen needs --family");
  auto g = generate({o.family, parse_params(o.params), o.seed});
  load_problem(g.domain, g.problem);
  if (o.out.empty()) {
    out << g.domain << "\n" << g.problem;
  } else {
    write_text(o.out + ".domain.pddlish", g.domain);
    write_text(o.out + ".problem.pddlish", g.problem);
    out << "wrote " << o.out << ".domain.pddlish and " << o.out << ".problem.pddlish\n";
  }
  return kExitOk;
}

int cmd_translate(const Options& o, std::ostream& out, std::ostream& err) {
  const Instance inst = load_instance(o);
  BeliefContext ctx(inst.problem);
  auto sample = ctx.sample_initial_states(o.sample_size, o.seed);
  if (sample.size() < o.sample_size) {
    err << "warning: the initial belief has only " << sample.size() << " states; using all of them\n";
  }
  std::mt19937_64 rng(o.seed);
  const State distinguished = sample[std::uniform_int_distribution<std::size_t>(0, sample.size() - 1)(rng)];
  TranslationOptions topts;
  topts.known = ctx.current().known();
  ClassicalProblem cp = translate(inst.problem, sample, distinguished, topts);
  if (parse_mode(o.mode) == Mode::StateRefutation) cp = augment_state_refutation(std::move(cp));
  const auto text = emit_classical(cp);
  const std::string prefix = o.out.empty() ? inst.name : o.out;
  write_text(prefix + ".domain.cls.pddlish", text.domain);
  write_text(prefix + ".problem.cls.pddlish", text.problem);
  out << "states " << sample.size() << "\npropositions " << cp.props.size() << "\nactions " << cp.actions.size()
      << "\nwrote " << prefix << ".domain.cls.pddlish and " << prefix << ".problem.cls.pddlish\n";
  return kExitOk;
}

int cmd_run(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o);
  const State hidden = sample_true_state(inst.problem, o.seed);
  const auto start = std::chrono::steady_clock::now();
  const auto trace = run_sdr(inst.problem, hidden, make_config(o));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out << "instance: " << inst.name << "\nmode: " << o.mode << "\nseed: " << o.seed << "\ntrue state: "
      << inst.problem.describe(hidden) << "\n"
      << format_trace(inst.problem, trace);
  out << "replans: " << trace.replan_events.size() << "\n";
  if (!o.no_timing) out << "seconds: " << fixed(secs, 3) << "\n";
  return trace.outcome == ExecutionTrace::Outcome::GoalReached ? kExitOk : kExitFailure;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const Instance inst = load_instance(o);
  const auto records = run_bench(inst.problem, make_config(o), o.runs, o.jobs);
  const BenchRow row = summarize(inst.name, parse_mode(o.mode), records);
  const std::string csv = std::string(kBenchCsvHeader) + "\n" + csv_row(row, !o.no_timing) + "\n";
  if (o.out.empty()) {
    out << csv;
  } else {
    write_text(o.out, csv);
  }
  return row.failures == 0 ? kExitOk : kExitFailure;
}

}  // namespace

State sample_true_state(const Problem& problem, std::uint64_t seed) {
  BeliefContext ctx(problem);
  auto all = ctx.enumerate_initial_states(kExactSamplingLimit + 1);
  if (all.size() <= kExactSamplingLimit) {
    std::mt19937_64 rng(seed);
    return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
  }
  return ctx.sample_initial_states(1, seed).front();
}

std::uint64_t run_seed(std::uint64_t seed, std::size_t run) { return splitmix64(splitmix64(seed) + run); }

std::vector<RunRecord> run_bench(const Problem& problem, const SdrConfig& cfg, std::size_t runs, std::size_t jobs,
                                 const std::function<std::unique_ptr<ExecutionListener>(std::size_t)>& make_listener) {
  std::vector<RunRecord> records(runs);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < runs;) {
      const std::uint64_t s = run_seed(cfg.seed, i);
      SdrConfig c = cfg;
      c.seed = splitmix64(s);
      auto listener = make_listener ? make_listener(i) : nullptr;
      const auto start = std::chrono::steady_clock::now();
      try {
        records[i].trace = run_sdr(problem, sample_true_state(problem, s), c, listener.get());
      } catch (const Error& e) {
        records[i].trace.outcome = ExecutionTrace::Outcome::Failure;
        records[i].trace.failure_reason = e.what();
        records[i].fault = dynamic_cast<const SimulatorFault*>(&e) || dynamic_cast<const PreconditionViolated*>(&e);
      }
      records[i].seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < std::max<std::size_t>(jobs, 1); ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return records;
}

BenchRow summarize(const std::string& instance, Mode mode, const std::vector<RunRecord>& records) {
  BenchRow row{instance, mode, records.size()};
  auto mean_se = [&](auto value, double& mean, double& se) {
    const double n = static_cast<double>(records.size());
    if (n == 0) return;
    double sum = 0;
    for (const auto& r : records) sum += value(r);
    mean = sum / n;
    if (n < 2) return;
    double ss = 0;
    for (const auto& r : records) ss += (value(r) - mean) * (value(r) - mean);
    se = std::sqrt(ss / (n - 1)) / std::sqrt(n);
  };
  mean_se([](const RunRecord& r) { return static_cast<double>(r.trace.steps.size()); }, row.mean_actions,
          row.se_actions);
  mean_se([](const RunRecord& r) { return r.seconds; }, row.mean_seconds, row.se_seconds);
  for (const auto& r : records) row.failures += r.trace.outcome != ExecutionTrace::Outcome::GoalReached;
  return row;
}

std::string csv_row(const BenchRow& row, bool timing) {
  std::ostringstream os;
  os << row.instance << "," << to_string(row.mode) << "," << row.runs << "," << fixed(row.mean_actions, 2) << ","
     << fixed(row.se_actions, 2) << ",";
  if (timing) {
    os << fixed(row.mean_seconds, 3) << "," << fixed(row.se_seconds, 3);
  } else {
    os << "NA,NA";
  }
  os << "," << row.failures;
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sample, determinize, replan: online contingent planning"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "write a generated benchmark instance");
  gen->add_option("--family", o.family, "benchmark family")->check(CLI::IsMember(domain_families()));
  gen->add_option("--params", o.params, "generator parameters, e.g. n=5");
  gen->add_option("--seed", o.seed, "generator seed");
  gen->add_option("--out", o.out, "output prefix; prints to stdout when absent");

  auto* tr = app.add_subcommand("translate", "write the classical problem for one sampled belief");
  add_instance_options(tr, o);
  add_planner_options(tr, o);
  tr->add_option("--out", o.out, "output prefix");

  auto* run = app.add_subcommand("run", "one online execution from a uniformly drawn true state");
  add_instance_options(run, o);
  add_planner_options(run, o);
  run->add_flag("--no-timing", o.no_timing, "omit wall-clock figures");

  auto* bench = app.add_subcommand("bench", "repeated runs, summarized as CSV");
  add_instance_options(bench, o);
  add_planner_options(bench, o);
  bench->add_option("--runs", o.runs, "number of runs")->check(CLI::PositiveNumber);
  bench->add_option("--jobs", o.jobs, "parallel workers")->check(CLI::PositiveNumber);
  bench->add_option("--out", o.out, "CSV file; stdout when absent");
  bench->add_flag("--no-timing", o.no_timing, "write NA for the seconds columns");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (tr->parsed()) return cmd_translate(o, out, err);
    if (run->parsed()) return cmd_run(o, out);
    return cmd_bench(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ConsistencyError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvalidParams& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "failure: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace sdr
