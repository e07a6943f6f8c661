#pragma once

// Slow, obviously-correct reference computations. Nothing here calls the
// library's algorithms; only the data types are shared.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "efalloc/core.hpp"
#include "efalloc/gen.hpp"
#include "efalloc/matching.hpp"

namespace oracle {

using efalloc::Allocation;
using efalloc::HouseId;
using efalloc::Instance;

/// Every injective allocation of n agents to m houses, lexicographic.
std::vector<Allocation> all_allocations(std::size_t n, std::size_t m);

/// EF-probability by enumerating realizations: every combination of
/// support orders (lottery), every linear extension counted per agent
/// (compact), every profile (joint), pairwise comparisons one by one.
class EfOracle {
 public:
  explicit EfOracle(const Instance& inst);
  mpq_class operator()(const Allocation& w) const;

 private:
  const Instance& inst_;
  // compact: per agent, the position arrays of every order consistent
  // with its weak order
  std::vector<std::vector<std::vector<HouseId>>> extensions_;
};

struct Optimum {
  mpq_class value;
  std::vector<Allocation> argmax;  // lexicographic
};

/// Max EF-probability over all injective allocations.
Optimum optimum(const Instance& inst);

/// Does the profile of strict orders (rank arrays) make w envy-free?
bool envy_free_under(const std::vector<std::vector<HouseId>>& rankings, const Allocation& w);

/// Brute matchings over all injections left -> right.
std::optional<mpq_class> max_product_matching(const efalloc::WeightedBipartite& g);
std::size_t max_matching_size(const efalloc::UnweightedBipartite& g);
/// Hall's condition checked on every subset of `agents`.
bool violates_hall(const efalloc::UnweightedBipartite& g, const std::vector<efalloc::Vertex>& agents);
bool is_minimal_violator(const efalloc::UnweightedBipartite& g, const std::vector<efalloc::Vertex>& agents);

bool has_independent_set(const efalloc::Graph& g, std::size_t k);
bool has_exact_cover(const efalloc::R3xcInput& x);

/// Brute compact check: is there an allocation whose pairwise relations
/// meet the envy matrix (weak where a(i,j) = 1, strict where 0)?
bool satisfiable_envy_matrix(const efalloc::CompactPrefs& prefs, const std::vector<std::vector<bool>>& a,
                             std::size_t m);

}  // namespace oracle
