#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "efalloc/combinatorics.hpp"
#include "efalloc/core.hpp"

namespace efalloc {

/// A Max-ProbEF answer restricted to (or induced by) an n-subset of houses.
struct SubsetResult {
  std::vector<HouseId> subset;  // sorted
  Allocation allocation;
  Prob prob;
  /// Set when no allocation has positive EF-probability; the result then
  /// carries the smallest subset and its identity allocation.
  bool zero_probability = false;

  friend bool operator==(const SubsetResult&, const SubsetResult&) = default;
};

/// Probability that house j is agent i's favourite among `subset`.
/// Throws Error(NotIndependentModel) for joint instances.
Prob top_choice_prob(const Instance& inst, AgentId i, HouseId j, const std::vector<HouseId>& subset);

/// Best allocation of exactly the houses in `subset` (sorted, size n) via a
/// max-product perfect matching on the top-choice probabilities. Empty if
/// every allocation of the subset has EF-probability zero.
std::optional<SubsetResult> best_alloc_for_subset(const Instance& inst, const std::vector<HouseId>& subset);

struct EnumerateOptions {
  std::uint64_t cap = 10'000'000;  // maximum C(m, n)
  ExecPolicy exec;
};

/// Exact Max-ProbEF for independent models by trying every n-subset of
/// houses. Ties go to the lexicographically smallest subset, then to the
/// matching tie-break. Dispatches to the serial or OpenMP kernel.
///
/// Throws Error(EnumerationCapExceeded) or Error(NotIndependentModel).
SubsetResult solve_max_prob_ef_enumerate(const Instance& inst, const EnumerateOptions& opts = {});

/// Serial reference kernel for solve_max_prob_ef_enumerate.
SubsetResult solve_max_prob_ef_enumerate_serial(const Instance& inst, std::uint64_t cap = 10'000'000);

/// OpenMP kernel; subsets are split into fixed-size rank blocks so the fold
/// is independent of the thread count.
SubsetResult solve_max_prob_ef_enumerate_parallel(const Instance& inst, int threads, std::uint64_t cap = 10'000'000);

/// Exhaustive oracle over all m!/(m-n)! injective allocations, any model.
/// Same tie-break as the enumeration solver. Throws
/// Error(EnumerationCapExceeded).
SubsetResult brute_force_max_prob_ef(const Instance& inst, std::uint64_t cap = 10'000'000);

/// Strict "is better" for the shared tie-break: higher prob, then smaller
/// subset, then smaller allocation.
bool better_result(const SubsetResult& a, const SubsetResult& b);

}  // namespace efalloc
