#pragma once

#include <algorithm>
#include <ostream>
#include <random>

#include "efalloc/combinatorics.hpp"
#include "efalloc/gen.hpp"

namespace efalloc {
// readable parameter values in test names
inline void PrintTo(Model m, std::ostream* os) { *os << to_string(m); }
}  // namespace efalloc

namespace testing_util {

// Small random instance of the given model; sizes drawn from the seed.
inline efalloc::Instance small_instance(efalloc::Model model, std::uint64_t seed, std::size_t max_n = 4,
                                        std::size_t max_m = 5, std::size_t max_support = 3) {
  std::mt19937_64 rng(seed * 7919 + 13);
  efalloc::RandomParams p;
  p.model = model;
  p.agents = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
  p.houses = std::uniform_int_distribution<std::size_t>(p.agents, std::max(p.agents, max_m))(rng);
  p.support = std::uniform_int_distribution<std::size_t>(1, max_support)(rng);
  p.support = std::min<std::uint64_t>(p.support, efalloc::falling_factorial(p.houses, p.houses));
  p.tie_percent = std::uniform_int_distribution<unsigned>(0, 80)(rng);
  p.pairwise_grid = std::uniform_int_distribution<std::uint32_t>(1, 4)(rng);
  p.seed = seed;
  return efalloc::gen_random(p);
}

}  // namespace testing_util
