#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "efalloc/combinatorics.hpp"
#include "efalloc/core.hpp"

namespace efalloc {

/// n x n 0/1 matrix with ones on the diagonal. Entry (i, j) is 1 when agent
/// i tolerates being tied with agent j's house and 0 when i must strictly
/// prefer its own.
class EnvyMatrix {
 public:
  explicit EnvyMatrix(std::size_t n) : n_(n), a_(n * n, 0) {
    for (std::size_t i = 0; i < n; ++i) a_[i * n + i] = 1;
  }

  static EnvyMatrix identity(std::size_t n) { return EnvyMatrix(n); }
  static EnvyMatrix all_ones(std::size_t n);

  std::size_t size() const { return n_; }
  bool at(std::size_t i, std::size_t j) const { return a_[i * n_ + j] != 0; }
  /// Throws std::invalid_argument when clearing a diagonal entry.
  void set(std::size_t i, std::size_t j, bool value);

  std::size_t row_sum(std::size_t i) const;
  std::size_t off_diagonal_ones() const;
  /// Entrywise a <= b.
  bool dominated_by(const EnvyMatrix& b) const;

  friend bool operator==(const EnvyMatrix&, const EnvyMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<std::uint8_t> a_;
};

/// The envy matrix of `w` if `w` is envy-free for the weak orders
/// (nobody strictly prefers another allocated house), else empty.
std::optional<EnvyMatrix> envy_matrix_of(const CompactPrefs& prefs, const Allocation& w);

/// Product over rows of 1 / row-sum.
Prob matrix_ef_prob(const EnvyMatrix& a);

/// An allocation satisfying the matrix: weak preference wherever a(i,j) = 1
/// and strict preference wherever a(i,j) = 0; empty if none exists.
///
/// Repeatedly matches agents to their favourite remaining houses, skipping
/// a house for agent i when some j with a(j,i) = 0 also ranks it first.
/// When no agent-saturating matching exists, every favourite of a minimal
/// Hall violator is discarded and the round repeats; fewer remaining
/// houses than agents means no solution.
std::optional<Allocation> alloc_satisfying_envy_matrix(const CompactPrefs& prefs, const EnvyMatrix& a);

struct CompactOptimal {
  Allocation allocation;
  Prob prob;
  friend bool operator==(const CompactOptimal&, const CompactOptimal&) = default;
};

/// Proof that every allocation has EF-probability below epsilon.
struct BelowEpsilon {
  Prob epsilon;
  friend bool operator==(const BelowEpsilon&, const BelowEpsilon&) = default;
};

using CompactSolveResult = std::variant<CompactOptimal, BelowEpsilon>;

struct CompactSolveOptions {
  std::uint64_t cap = 10'000'000;  // maximum number of candidate matrices
  ExecPolicy exec;
};

/// Number of candidate matrices: sum over t <= floor(1/epsilon) of
/// C(n^2 - n, t), saturating.
std::uint64_t envy_matrix_count(std::size_t n, const Prob& epsilon);

/// Either the exact optimum (when it is at least epsilon) or a
/// BelowEpsilon certificate. Candidates are all envy matrices with at most
/// floor(1/epsilon) off-diagonal ones whose row-sum product is >= epsilon;
/// the allocation with the largest actual EF-probability wins, ties to the
/// lexicographically smallest allocation.
///
/// Throws Error(InvalidParams) unless 0 < epsilon <= 1, and
/// Error(MatrixEnumerationCapExceeded) above the cap.
CompactSolveResult max_prob_ef_compact(const CompactPrefs& prefs, const Prob& epsilon,
                                       const CompactSolveOptions& opts = {});

CompactSolveResult max_prob_ef_compact_serial(const CompactPrefs& prefs, const Prob& epsilon,
                                              std::uint64_t cap = 10'000'000);
CompactSolveResult max_prob_ef_compact_parallel(const CompactPrefs& prefs, const Prob& epsilon, int threads,
                                                std::uint64_t cap = 10'000'000);

/// A certainly-EF allocation (all strict), or empty.
std::optional<Allocation> exists_certainly_ef_compact(const CompactPrefs& prefs);

/// An allocation envy-free for the weak orders, hence EF with positive
/// probability, or empty.
std::optional<Allocation> exists_possibly_ef_compact(const CompactPrefs& prefs);

}  // namespace efalloc
