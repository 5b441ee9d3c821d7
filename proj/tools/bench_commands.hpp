#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dimsum/trace.hpp"

namespace dimsum::bench {

enum ExitCode : int { kOk = 0, kUsage = 1, kAuditViolation = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GenOptions {
  ZipfSpec spec;
  std::string out;
};

struct AlgoConfig {
  std::string algo = "imsum";
  int epsilon_log2 = -10;
  double gamma = 4.0;
  double delta = 0x1p-10;  // CM only
  std::uint64_t seed = 1;  // CM hash seeds
};

struct BenchOptions {
  std::vector<std::string> algos{"imsum"};
  std::vector<int> epsilon_log2{-10};
  double gamma = 4.0;
  double delta = 0x1p-10;
  std::uint64_t seed = 1;
  std::string trace;
  int repeats = 5;
  std::string skew;    // label copied into the CSV
  std::string output;  // appended to; stdout when empty
};

struct BenchRow {
  std::string algo;
  int epsilon_log2 = 0;
  double gamma = 0;
  std::string skew;
  double updates_per_ms = 0;
  double mean_ops = 0;
  std::uint64_t max_ops = 0;
  std::uint64_t peak_entries = 0;
  double wall_ms = 0;
};

struct ErrorOptions {
  AlgoConfig algo;
  std::string trace;
  std::uint64_t checkpoint = 0;  // 0: stream end only
  std::string output;            // per-flow rows; skipped when empty
};

struct ElephantOptions {
  AlgoConfig algo;
  std::string trace;
  double theta = 0.1;
};

inline constexpr const char* kBenchHeader =
    "algo,epsilon_log2,gamma,skew,updates_per_ms,mean_ops,max_ops,peak_entries,wall_ms";

const std::vector<std::string>& known_algorithms();

/// Throws UsageError for unknown algorithms or out-of-domain parameters.
void validate(const AlgoConfig& config);

/// One row per (algo, epsilon). Throws ScheduleViolation if a DIM-SUM run
/// misses its schedule.
std::vector<BenchRow> run_bench(const BenchOptions& options, const std::vector<TraceRecord>& records);
std::string format_row(const BenchRow& row);

int cmd_gen(const GenOptions& options, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchOptions& options, std::ostream& out, std::ostream& err);
int cmd_error(const ErrorOptions& options, std::ostream& out, std::ostream& err);
int cmd_elephants(const ElephantOptions& options, std::ostream& out, std::ostream& err);

}  // namespace dimsum::bench
