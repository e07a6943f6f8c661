#include "efalloc/combinatorics.hpp"

#include <limits>

namespace efalloc {

namespace {
constexpr auto kSat = std::numeric_limits<std::uint64_t>::max();
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;  // exact: product of i consecutive ints is divisible by i!
    if (result > kSat) return kSat;
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    if (result > kSat / (n - i)) return kSat;
    result *= n - i;
  }
  return result;
}

std::vector<std::uint32_t> unrank_combination(std::uint32_t n, std::uint32_t k, std::uint64_t rank) {
  std::vector<std::uint32_t> c;
  c.reserve(k);
  std::uint32_t next = 0;
  for (std::uint32_t slot = 0; slot < k; ++slot) {
    // Skip candidates whose block of completions lies entirely before `rank`.
    while (true) {
      const std::uint64_t block = binomial(n - next - 1, k - slot - 1);
      if (rank < block) break;
      rank -= block;
      ++next;
    }
    c.push_back(next++);
  }
  return c;
}

bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0 && c[i - 1] == n - k + i - 1) --i;
  if (i == 0) return false;
  ++c[i - 1];
  for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

}  // namespace efalloc
