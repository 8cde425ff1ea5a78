#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "crscl/fp_env.hpp"
#include "crscl/oracle.hpp"

#include "json.hpp"

namespace crscl::cli {

enum class Command { ReproduceIssues, Stress, Bench, Scale };
enum class OutputFormat { Text, Json, Csv };

/// Exit codes: 0 pass, 1 numerical assertion failure, 2 usage or I/O error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::ReproduceIssues;
  Precision precision = Precision::Binary32;
  std::vector<ProfileName> profiles;  // stress; empty = all
  std::size_t count = 10000;
  std::vector<Engine> engines;        // stress / bench; empty = defaults
  std::string input;                  // scale: vector file ("-" = stdin)
  std::string output;                 // report / vector output ("" = stdout)
  std::string matrix;                 // reproduce-issues: extra matrix file
  std::string denominator;            // scale: "re im"
  OutputFormat format = OutputFormat::Text;
  std::uint64_t seed = 1;
  bool explain = false;
  std::vector<std::size_t> sizes;     // bench; empty = {1e2, 1e4, 1e6}
  int repetitions = 15;
};

/// Parses the command line (args[0] is the program name), reads CRSCL_SEED
/// when --seed is absent, and dispatches.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_reproduce_issues(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_stress(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_scale(const RunConfig& config, std::ostream& out, std::ostream& err);

nlohmann::ordered_json report_json(const ErrorReport& report);

/// Stress reports for one engine, merged over the selected profiles.
ErrorReport stress_report(const RunConfig& config, Engine engine);

struct BenchRow {
  std::string engine;
  std::size_t n = 0;
  double median_ns = 0.0;
  double ns_per_element = 0.0;  // NaN when n == 0
  std::uint64_t flops_per_element = 0;
  std::uint64_t setup_divisions = 0;
  FlopCounter counts;
};

std::vector<BenchRow> bench_rows(const RunConfig& config);
nlohmann::ordered_json bench_json(const RunConfig& config, const std::vector<BenchRow>& rows);

}  // namespace crscl::cli
