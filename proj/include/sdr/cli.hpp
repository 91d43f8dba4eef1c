#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "sdr/executive.hpp"

namespace sdr {

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitInput = 2, kExitFailure = 3 };

inline constexpr const char* kBenchCsvHeader =
    "instance,mode,runs,mean_actions,se_actions,mean_seconds,se_seconds,failures";

// Exact uniform draw when the initial belief has at most 4096 states,
// otherwise one randomized-solver model.
inline constexpr std::size_t kExactSamplingLimit = 4096;
State sample_true_state(const Problem& problem, std::uint64_t seed);

struct RunRecord {
  ExecutionTrace trace;
  double seconds = 0;
  bool fault = false;  // the run stopped on SimulatorFault or PreconditionViolated
};

struct BenchRow {
  std::string instance;
  Mode mode = Mode::Plain;
  std::size_t runs = 0;
  double mean_actions = 0, se_actions = 0;
  double mean_seconds = 0, se_seconds = 0;
  std::size_t failures = 0;
};

// Run i draws its true state with seed (seed, i) and plans with the same
// derived seed, so results do not depend on the number of jobs.
// make_listener may return null; it is called once per run, from the worker.
std::vector<RunRecord> run_bench(const Problem& problem, const SdrConfig& cfg, std::size_t runs, std::size_t jobs,
                                 const std::function<std::unique_ptr<ExecutionListener>(std::size_t)>& make_listener =
                                     nullptr);
std::uint64_t run_seed(std::uint64_t seed, std::size_t run);
BenchRow summarize(const std::string& instance, Mode mode, const std::vector<RunRecord>& records);
std::string csv_row(const BenchRow& row, bool timing);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sdr
