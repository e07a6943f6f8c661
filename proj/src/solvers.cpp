#include "efalloc/solvers.hpp"

#include <algorithm>
#include <omp.h>

#include "efalloc/efprob.hpp"
#include "efalloc/matching.hpp"

namespace efalloc {

namespace {

void require_independent(const Instance& inst) {
  if (!inst.is_independent())
    throw Error(ErrorKind::NotIndependentModel, "the joint model does not factor across agents");
}

void check_subset(const Instance& inst, const std::vector<HouseId>& subset) {
  if (subset.size() != inst.num_agents())
    throw Error(ErrorKind::InvalidParams, "subset must contain exactly one house per agent");
  for (std::size_t k = 0; k < subset.size(); ++k) {
    if (subset[k] >= inst.num_houses()) throw Error(ErrorKind::InvalidParams, "subset house out of range");
    if (k > 0 && subset[k] <= subset[k - 1]) throw Error(ErrorKind::InvalidParams, "subset must be sorted and distinct");
  }
}

// p[i][k] = probability that subset[k] is agent i's favourite within subset.
std::vector<std::vector<Prob>> top_choice_matrix(const Instance& inst, const std::vector<HouseId>& subset) {
  const std::size_t n = inst.num_agents();
  const std::size_t s = subset.size();
  std::vector<std::vector<Prob>> p(n, std::vector<Prob>(s));
  switch (inst.model()) {
    case Model::Lottery: {
      std::vector<std::int32_t> slot(inst.num_houses(), -1);
      for (std::size_t k = 0; k < s; ++k) slot[subset[k]] = static_cast<std::int32_t>(k);
      for (AgentId i = 0; i < n; ++i)
        for (const auto& [weight, order] : inst.lottery().agents[i])
          for (HouseId h : order.ranking())
            if (slot[h] >= 0) {
              p[i][slot[h]] += weight;
              break;
            }
      break;
    }
    case Model::Compact: {
      for (AgentId i = 0; i < n; ++i) {
        const WeakOrder& w = inst.compact().agents[i];
        std::uint32_t best = UINT32_MAX;
        std::uint64_t ties = 0;
        for (HouseId h : subset) {
          const auto c = w.class_of(h);
          if (c < best) {
            best = c;
            ties = 1;
          } else if (c == best) {
            ++ties;
          }
        }
        for (std::size_t k = 0; k < s; ++k)
          if (w.class_of(subset[k]) == best) p[i][k] = reciprocal(ties);
      }
      break;
    }
    case Model::Pairwise: {
      for (AgentId i = 0; i < n; ++i) {
        const PairwiseMatrix& pm = inst.pairwise().agents[i];
        for (std::size_t k = 0; k < s; ++k) {
          Prob q = Prob::one();
          for (std::size_t l = 0; l < s && !q.is_zero(); ++l)
            if (l != k) q *= pm.at(subset[k], subset[l]);
          p[i][k] = std::move(q);
        }
      }
      break;
    }
    case Model::Joint:
      require_independent(inst);
  }
  return p;
}

SubsetResult zero_result(const Instance& inst) {
  SubsetResult r;
  for (HouseId h = 0; h < inst.num_agents(); ++h) {
    r.subset.push_back(h);
    r.allocation.assigned.push_back(h);
  }
  r.zero_probability = true;
  return r;
}

// Best over ranks [begin, end) of the lexicographic subset order. Strict
// comparison keeps the earliest subset among equal probabilities.
std::optional<SubsetResult> best_in_rank_range(const Instance& inst, std::uint64_t begin, std::uint64_t end) {
  const auto m = static_cast<std::uint32_t>(inst.num_houses());
  const auto n = static_cast<std::uint32_t>(inst.num_agents());
  std::optional<SubsetResult> best;
  auto subset = unrank_combination(m, n, begin);
  for (std::uint64_t r = begin; r < end; ++r) {
    if (auto res = best_alloc_for_subset(inst, subset); res && (!best || res->prob > best->prob))
      best = std::move(res);
    if (r + 1 < end) next_combination(subset, m);
  }
  return best;
}

std::uint64_t checked_subset_count(const Instance& inst, std::uint64_t cap) {
  require_independent(inst);
  const std::uint64_t total = binomial(inst.num_houses(), inst.num_agents());
  if (total > cap)
    throw Error(ErrorKind::EnumerationCapExceeded,
                std::to_string(total) + " house subsets exceed the cap of " + std::to_string(cap));
  return total;
}

}  // namespace

Prob top_choice_prob(const Instance& inst, AgentId i, HouseId j, const std::vector<HouseId>& subset) {
  require_independent(inst);
  check_subset(inst, subset);
  if (i >= inst.num_agents()) throw Error(ErrorKind::InvalidParams, "agent out of range");
  const auto it = std::find(subset.begin(), subset.end(), j);
  if (it == subset.end()) throw Error(ErrorKind::InvalidParams, "house is not in the subset");
  return top_choice_matrix(inst, subset)[i][static_cast<std::size_t>(it - subset.begin())];
}

std::optional<SubsetResult> best_alloc_for_subset(const Instance& inst, const std::vector<HouseId>& subset) {
  require_independent(inst);
  check_subset(inst, subset);
  const std::size_t n = inst.num_agents();
  auto p = top_choice_matrix(inst, subset);
  WeightedBipartite g(n, n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex k = 0; k < n; ++k)
      if (!p[i][k].is_zero()) g.add_edge(i, k, std::move(p[i][k]));
  auto pm = max_product_perfect_matching(g);
  if (!pm) return std::nullopt;
  SubsetResult r;
  r.subset = subset;
  for (Vertex k : pm->matching.assignment) r.allocation.assigned.push_back(subset[k]);
  r.prob = std::move(pm->product);
  return r;
}

SubsetResult solve_max_prob_ef_enumerate_serial(const Instance& inst, std::uint64_t cap) {
  const std::uint64_t total = checked_subset_count(inst, cap);
  auto best = best_in_rank_range(inst, 0, total);
  return best ? std::move(*best) : zero_result(inst);
}

SubsetResult solve_max_prob_ef_enumerate_parallel(const Instance& inst, int threads, std::uint64_t cap) {
  const std::uint64_t total = checked_subset_count(inst, cap);
  constexpr std::uint64_t kBlock = 16;
  const std::uint64_t blocks = (total + kBlock - 1) / kBlock;
  std::vector<std::optional<SubsetResult>> partial(blocks);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const auto begin = static_cast<std::uint64_t>(b) * kBlock;
    partial[b] = best_in_rank_range(inst, begin, std::min(total, begin + kBlock));
  }

  std::optional<SubsetResult> best;
  for (auto& r : partial)
    if (r && (!best || r->prob > best->prob)) best = std::move(r);
  return best ? std::move(*best) : zero_result(inst);
}

SubsetResult solve_max_prob_ef_enumerate(const Instance& inst, const EnumerateOptions& opts) {
  if (opts.exec.threads <= 1) return solve_max_prob_ef_enumerate_serial(inst, opts.cap);
  return solve_max_prob_ef_enumerate_parallel(inst, opts.exec.threads, opts.cap);
}

bool better_result(const SubsetResult& a, const SubsetResult& b) {
  if (a.prob != b.prob) return a.prob > b.prob;
  if (a.subset != b.subset) return a.subset < b.subset;
  return a.allocation < b.allocation;
}

SubsetResult brute_force_max_prob_ef(const Instance& inst, std::uint64_t cap) {
  const std::size_t n = inst.num_agents();
  const std::size_t m = inst.num_houses();
  const std::uint64_t total = falling_factorial(m, n);
  if (total > cap)
    throw Error(ErrorKind::EnumerationCapExceeded,
                std::to_string(total) + " allocations exceed the cap of " + std::to_string(cap));

  std::optional<SubsetResult> best;
  Allocation w;
  w.assigned.resize(n);
  std::vector<bool> used(m, false);
  auto visit = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      SubsetResult cand;
      cand.prob = ef_prob(inst, w);
      if (best && cand.prob < best->prob) return;
      cand.allocation = w;
      cand.subset = w.assigned;
      std::sort(cand.subset.begin(), cand.subset.end());
      if (!best || better_result(cand, *best)) best = std::move(cand);
      return;
    }
    for (HouseId h = 0; h < m; ++h) {
      if (used[h]) continue;
      used[h] = true;
      w.assigned[i] = h;
      self(self, i + 1);
      used[h] = false;
    }
  };
  visit(visit, 0);

  if (best->prob.is_zero()) return zero_result(inst);
  return std::move(*best);
}

}  // namespace efalloc
