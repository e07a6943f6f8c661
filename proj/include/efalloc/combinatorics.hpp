#pragma once

#include <cstdint>
#include <vector>

namespace efalloc {

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// n! / (n-k)!, saturating at UINT64_MAX.
std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t k);

/// The `rank`-th k-subset of {0..n-1} in lexicographic order (sorted).
std::vector<std::uint32_t> unrank_combination(std::uint32_t n, std::uint32_t k, std::uint64_t rank);

/// Advances a sorted k-subset of {0..n-1} to its lexicographic successor.
/// Returns false (leaving `c` unspecified) after the last subset.
bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n);

/// Execution knob shared by the parallel kernels. threads <= 1 selects the
/// serial reference path; results never depend on the thread count.
struct ExecPolicy {
  int threads = 1;
};

}  // namespace efalloc
