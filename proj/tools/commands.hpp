#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "io.hpp"

namespace efalloc::cli {

using io::json;

/// Process exit codes; a stable contract for scripts.
enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,    // parse or validation failure, bad parameters
  kMethodMismatch = 3,  // method not applicable to the instance's model
  kCapExceeded = 4,     // an enumeration or search budget was hit
};

ExitCode exit_code_for(ErrorKind kind);

struct RunOptions {
  int threads = 1;
  std::uint64_t cap = 10'000'000;
  std::uint64_t seed = 0;
  /// Leave wall time out of reports (for byte-comparisons in tests).
  bool timing = true;
};

/// EF-probability of an allocation with the per-agent breakdown.
json cmd_prob(const std::string& instance_path, const std::string& alloc_path, const RunOptions& opts);

/// method: "enumerate", "compact-eps" (needs epsilon) or "brute".
/// Throws Error(MethodModelMismatch) when the method does not fit.
json cmd_solve(const std::string& instance_path, const std::string& method, const std::optional<std::string>& epsilon,
               const RunOptions& opts);

/// property: "possible" or "certain". method: "auto", "polynomial" or
/// "exhaustive"; "polynomial" throws Error(MethodModelMismatch) when the
/// model has no polynomial decider for the property.
json cmd_decide(const std::string& instance_path, const std::string& property, const std::string& method,
                const RunOptions& opts);

struct GenRequest {
  /// random, r3xc, independent-set, is-pairwise, lottery-to-joint,
  /// lottery-to-pairwise, single-penalty, double-penalty
  std::string kind = "random";
  std::string model = "lottery";
  std::size_t agents = 2;
  std::size_t houses = 2;
  std::size_t support = 2;
  std::string classes;  // "2,3,1"
  unsigned ties = 30;
  std::uint32_t grid = 4;
  std::string input;  // graph, R3XC or lottery instance file
  std::size_t k = 1;
  std::uint64_t alpha = 1;
  std::string out;  // empty: instance is embedded in the report
};

json cmd_gen(const GenRequest& req, const RunOptions& opts);

/// Builds the instance a GenRequest describes.
Instance generate(const GenRequest& req, std::uint64_t seed);

inline constexpr const char* kBenchHeader = "n,m,model,method,prob,wall_time_ms,seed,status";

/// Runs every case of a suite file and writes one CSV row per case after
/// the header. Returns kOk or the exit code of the first failing case.
///
/// Suite: {"cases": [{"gen": {...GenRequest fields...}, "seeds": [1, 2],
///                    "method": "enumerate", "epsilon": "1/2"}, ...]}
/// "seed" may replace "seeds"; methods are the solve methods plus
/// "possible" and "certain".
ExitCode cmd_bench(const std::string& suite_path, const RunOptions& opts, std::ostream& csv);

}  // namespace efalloc::cli
