#pragma once

#include <vector>

#include "efalloc/core.hpp"

namespace efalloc {

/// Per-agent breakdown of an EF-probability.
struct AgentEnvyReport {
  /// Probability that each agent envies nobody. For the joint model this
  /// is the marginal over profiles, and the overall value is not the
  /// product.
  std::vector<Prob> non_envy;
  /// Compact model only: agents whose house the agent ranks as tied with
  /// its own (always contains the agent). Empty for other models or when
  /// the agent strictly envies someone.
  std::vector<std::vector<AgentId>> tied_with;
  Prob overall;
};

/// Exact probability that `w` is envy-free. Unallocated houses play no
/// role. Throws Error(ModelMismatch) / Error(InvalidAllocation) on a bad
/// allocation.
Prob ef_prob(const Instance& inst, const Allocation& w);

/// Same value as ef_prob() plus the per-agent factors.
AgentEnvyReport ef_report(const Instance& inst, const Allocation& w);

bool is_possibly_ef(const Instance& inst, const Allocation& w);
bool is_certainly_ef(const Instance& inst, const Allocation& w);

}  // namespace efalloc
