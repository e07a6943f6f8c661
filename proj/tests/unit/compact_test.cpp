#include <gtest/gtest.h>

#include <random>

#include "efalloc/compact.hpp"
#include "efalloc/efprob.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace efalloc;

namespace {

Instance all_indifferent(std::size_t n, std::size_t m) {
  std::vector<HouseId> all;
  for (HouseId h = 0; h < m; ++h) all.push_back(h);
  RawInstance raw;
  raw.num_agents = n;
  for (HouseId h = 0; h < m; ++h) raw.house_names.push_back("h" + std::to_string(h));
  raw.prefs = CompactPrefs{std::vector<WeakOrder>(n, WeakOrder({all}))};
  return validate_instance(raw);
}

bool satisfies(const CompactPrefs& prefs, const EnvyMatrix& a, const Allocation& w) {
  for (AgentId i = 0; i < w.size(); ++i)
    for (AgentId j = 0; j < w.size(); ++j) {
      if (i == j) continue;
      const auto& o = prefs.agents[i];
      if (a.at(i, j) ? !o.weakly_prefers(w[i], w[j]) : !o.strictly_prefers(w[i], w[j])) return false;
    }
  return true;
}

}  // namespace

TEST(EnvyMatrix, Basics) {
  EnvyMatrix a(3);
  EXPECT_EQ(a.off_diagonal_ones(), 0u);
  a.set(0, 2, true);
  EXPECT_EQ(a.row_sum(0), 2u);
  EXPECT_TRUE(EnvyMatrix::identity(3).dominated_by(a));
  EXPECT_FALSE(a.dominated_by(EnvyMatrix::identity(3)));
  EXPECT_THROW(a.set(1, 1, false), std::invalid_argument);
  EXPECT_EQ(EnvyMatrix::all_ones(3).off_diagonal_ones(), 6u);
  EXPECT_EQ(matrix_ef_prob(EnvyMatrix::all_ones(3)), Prob(1, 27));
}

TEST(EnvyMatrix, ProductOfRowSumsIsEfProb) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const Instance inst = testing_util::small_instance(Model::Compact, seed, 5, 6);
    for (const auto& w : oracle::all_allocations(inst.num_agents(), inst.num_houses())) {
      const auto a = envy_matrix_of(inst.compact(), w);
      const Prob p = ef_prob(inst, w);
      if (!a) {
        EXPECT_TRUE(p.is_zero());
        continue;
      }
      EXPECT_EQ(matrix_ef_prob(*a), p);
      EXPECT_TRUE(satisfies(inst.compact(), *a, w));
    }
  }
}

TEST(AllocSatisfying, AgreesWithBruteForce) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coin(0, 2);
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Instance inst = testing_util::small_instance(Model::Compact, 500 + seed, 4, 6);
    const std::size_t n = inst.num_agents();
    for (int trial = 0; trial < 6; ++trial) {
      EnvyMatrix a(n);
      std::vector<std::vector<bool>> dense(n, std::vector<bool>(n, true));
      for (AgentId i = 0; i < n; ++i)
        for (AgentId j = 0; j < n; ++j)
          if (i != j) {
            const bool one = coin(rng) != 0;
            a.set(i, j, one);
            dense[i][j] = one;
          }
      const auto w = alloc_satisfying_envy_matrix(inst.compact(), a);
      ASSERT_EQ(w.has_value(), oracle::satisfiable_envy_matrix(inst.compact(), dense, inst.num_houses()))
          << "seed " << seed << " trial " << trial;
      if (w) {
        EXPECT_NO_THROW(check_allocation(inst, *w));
        EXPECT_TRUE(satisfies(inst.compact(), a, *w));
      }
    }
  }
}

TEST(CompactSolve, DichotomyAgainstOracle) {
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const Instance inst = testing_util::small_instance(Model::Compact, 900 + seed, 4, 6);
    const auto opt = oracle::optimum(inst);
    for (const Prob& eps : {Prob::one(), Prob(1, 2), Prob(1, 4), Prob(1, 9)}) {
      const auto r = max_prob_ef_compact(inst.compact(), eps);
      if (opt.value >= eps.value()) {
        const auto* got = std::get_if<CompactOptimal>(&r);
        ASSERT_NE(got, nullptr) << "seed " << seed << " eps " << eps.str();
        EXPECT_EQ(got->prob.value(), opt.value);
        EXPECT_EQ(ef_prob(inst, got->allocation), got->prob);
      } else {
        ASSERT_TRUE(std::holds_alternative<BelowEpsilon>(r)) << "seed " << seed << " eps " << eps.str();
        EXPECT_EQ(std::get<BelowEpsilon>(r).epsilon, eps);
      }
    }
  }
}

TEST(CompactSolve, AllIndifferentThree) {
  const Instance inst = all_indifferent(3, 3);
  EXPECT_TRUE(std::holds_alternative<BelowEpsilon>(max_prob_ef_compact(inst.compact(), Prob(1, 10))));
  const auto r = max_prob_ef_compact(inst.compact(), Prob(1, 27));
  ASSERT_TRUE(std::holds_alternative<CompactOptimal>(r));
  EXPECT_EQ(std::get<CompactOptimal>(r).prob, Prob(1, 27));
  EXPECT_EQ(ef_prob(inst, std::get<CompactOptimal>(r).allocation), Prob(1, 27));
}

TEST(CompactSolve, StrictSolvableAtEpsilonOne) {
  RawInstance raw;
  raw.num_agents = 2;
  raw.house_names = {"a", "b", "c"};
  raw.prefs = CompactPrefs{{WeakOrder({{0}, {1}, {2}}), WeakOrder({{1}, {0}, {2}})}};
  const auto r = max_prob_ef_compact(validate_instance(raw).compact(), Prob::one());
  ASSERT_TRUE(std::holds_alternative<CompactOptimal>(r));
  EXPECT_EQ(std::get<CompactOptimal>(r).prob, Prob::one());
  EXPECT_EQ(std::get<CompactOptimal>(r).allocation, (Allocation{{0, 1}}));
}

TEST(CompactSolve, SerialAndParallelAgree) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    RandomParams p;
    p.model = Model::Compact;
    p.agents = 5;
    p.houses = 7;
    p.tie_percent = 60;
    p.seed = seed;
    const Instance inst = gen_random(p);
    const auto serial = max_prob_ef_compact_serial(inst.compact(), Prob(1, 8));
    for (int t : {2, 4}) EXPECT_EQ(max_prob_ef_compact_parallel(inst.compact(), Prob(1, 8), t), serial);
  }
}

TEST(CompactSolve, ParametersAndCap) {
  const Instance inst = all_indifferent(3, 3);
  EXPECT_THROW(max_prob_ef_compact(inst.compact(), Prob::zero()), Error);
  EXPECT_THROW(max_prob_ef_compact(inst.compact(), Prob(3, 2)), Error);
  // n = 3: six off-diagonal cells; 1 + 6 + 15 matrices for epsilon = 1/2.
  EXPECT_EQ(envy_matrix_count(3, Prob(1, 2)), 22u);
  EXPECT_EQ(envy_matrix_count(3, Prob(1, 100)), 64u);
  try {
    max_prob_ef_compact(inst.compact(), Prob(1, 2), {21, {}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MatrixEnumerationCapExceeded);
  }
}

TEST(CompactExists, CertainAndPossibleMatchOracle) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Instance inst = testing_util::small_instance(Model::Compact, 2000 + seed, 5, 6);
    const auto opt = oracle::optimum(inst);
    const auto certain = exists_certainly_ef_compact(inst.compact());
    const auto possible = exists_possibly_ef_compact(inst.compact());
    EXPECT_EQ(certain.has_value(), opt.value == 1) << "seed " << seed;
    EXPECT_EQ(possible.has_value(), opt.value > 0) << "seed " << seed;
    if (certain) EXPECT_TRUE(ef_prob(inst, *certain).is_one());
    if (possible) EXPECT_FALSE(ef_prob(inst, *possible).is_zero());
  }
}
