#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "efalloc/combinatorics.hpp"
#include "efalloc/core.hpp"

namespace efalloc {

enum class Method { Polynomial, Exhaustive };

std::string_view to_string(Method method);

struct Decision {
  bool answer = false;
  std::optional<Allocation> witness;  // present iff answer
  Method method = Method::Polynomial;

  friend bool operator==(const Decision&, const Decision&) = default;
};

struct DecideOptions {
  /// Search-node budget for each branch of the first agent's choice.
  std::uint64_t cap = 10'000'000;
  ExecPolicy exec;
};

/// Is some allocation EF with positive probability? Polynomial for the
/// compact and joint models, exhaustive for lottery and pairwise.
Decision decide_possibly_ef(const Instance& inst, const DecideOptions& opts = {});

/// Is some allocation EF with probability one? Polynomial for the compact
/// model, exhaustive otherwise.
Decision decide_certainly_ef(const Instance& inst, const DecideOptions& opts = {});

/// Backtracking search for any model, used directly for the NP-hard cases
/// and as a cross-check of the polynomial ones. The witness is the
/// lexicographically smallest qualifying allocation.
///
/// Throws Error(SearchCapExceeded).
Decision exhaustive_possibly_ef(const Instance& inst, const DecideOptions& opts = {});
Decision exhaustive_certainly_ef(const Instance& inst, const DecideOptions& opts = {});

}  // namespace efalloc
