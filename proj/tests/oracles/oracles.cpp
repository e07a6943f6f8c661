#include "oracles.hpp"

#include <algorithm>
#include <numeric>

namespace oracle {

using namespace efalloc;

namespace {

void extend(std::size_t n, std::size_t m, std::vector<HouseId>& cur, std::vector<bool>& used,
            std::vector<Allocation>& out) {
  if (cur.size() == n) {
    out.push_back(Allocation{cur});
    return;
  }
  for (HouseId h = 0; h < m; ++h) {
    if (used[h]) continue;
    used[h] = true;
    cur.push_back(h);
    extend(n, m, cur, used, out);
    cur.pop_back();
    used[h] = false;
  }
}

std::vector<HouseId> positions(const std::vector<HouseId>& ranking) {
  std::vector<HouseId> pos(ranking.size());
  for (HouseId r = 0; r < ranking.size(); ++r) pos[ranking[r]] = r;
  return pos;
}

bool agent_content(const std::vector<HouseId>& ranking, AgentId i, const Allocation& w) {
  const auto pos = positions(ranking);
  for (AgentId j = 0; j < w.size(); ++j)
    if (j != i && pos[w[j]] < pos[w[i]]) return false;
  return true;
}

}  // namespace

std::vector<Allocation> all_allocations(std::size_t n, std::size_t m) {
  std::vector<Allocation> out;
  std::vector<HouseId> cur;
  std::vector<bool> used(m, false);
  extend(n, m, cur, used, out);
  return out;
}

bool envy_free_under(const std::vector<std::vector<HouseId>>& rankings, const Allocation& w) {
  for (AgentId i = 0; i < w.size(); ++i)
    if (!agent_content(rankings[i], i, w)) return false;
  return true;
}

EfOracle::EfOracle(const Instance& inst) : inst_(inst) {
  if (inst.model() != Model::Compact) return;
  const std::size_t m = inst.num_houses();
  for (const auto& wo : inst.compact().agents) {
    std::vector<HouseId> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<HouseId>> ext;
    do {
      bool ok = true;
      for (std::size_t a = 0; a < m && ok; ++a)
        for (std::size_t b = a + 1; b < m && ok; ++b)
          if (wo.strictly_prefers(perm[b], perm[a])) ok = false;
      if (ok) ext.push_back(positions(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    extensions_.push_back(std::move(ext));
  }
}

mpq_class EfOracle::operator()(const Allocation& w) const {
  const std::size_t n = inst_.num_agents();
  switch (inst_.model()) {
    case Model::Lottery: {
      // Walk the full product of supports.
      const auto& agents = inst_.lottery().agents;
      mpq_class total = 0;
      std::vector<std::size_t> pick(n, 0);
      while (true) {
        mpq_class weight = 1;
        std::vector<std::vector<HouseId>> rankings;
        for (std::size_t i = 0; i < n; ++i) {
          weight *= agents[i][pick[i]].weight.value();
          rankings.push_back(agents[i][pick[i]].order.ranking());
        }
        if (envy_free_under(rankings, w)) total += weight;
        std::size_t i = 0;
        while (i < n && ++pick[i] == agents[i].size()) pick[i++] = 0;
        if (i == n) break;
      }
      return total;
    }
    case Model::Compact: {
      mpq_class total = 1;
      for (AgentId i = 0; i < n; ++i) {
        std::size_t good = 0;
        for (const auto& pos : extensions_[i]) {
          bool content = true;
          for (AgentId j = 0; j < n && content; ++j) content = j == i || pos[w[j]] > pos[w[i]];
          good += content;
        }
        total *= mpq_class(good, extensions_[i].size());
      }
      total.canonicalize();
      return total;
    }
    case Model::Joint: {
      mpq_class total = 0;
      for (const auto& prof : inst_.joint().profiles) {
        std::vector<std::vector<HouseId>> rankings;
        for (const auto& o : prof.orders) rankings.push_back(o.ranking());
        if (envy_free_under(rankings, w)) total += prof.weight.value();
      }
      return total;
    }
    case Model::Pairwise: {
      mpq_class total = 1;
      for (AgentId i = 0; i < n; ++i)
        for (AgentId j = 0; j < n; ++j)
          if (i != j) total *= inst_.pairwise().agents[i].at(w[i], w[j]).value();
      return total;
    }
  }
  return 0;
}

Optimum optimum(const Instance& inst) {
  const EfOracle ef(inst);
  Optimum best{-1, {}};
  for (auto& w : all_allocations(inst.num_agents(), inst.num_houses())) {
    const mpq_class p = ef(w);
    if (p > best.value) {
      best.value = p;
      best.argmax.clear();
    }
    if (p == best.value) best.argmax.push_back(std::move(w));
  }
  return best;
}

std::optional<mpq_class> max_product_matching(const WeightedBipartite& g) {
  std::optional<mpq_class> best;
  for (const auto& w : all_allocations(g.left_size(), g.right_size())) {
    mpq_class prod = 1;
    bool ok = true;
    for (Vertex l = 0; l < w.size() && ok; ++l) {
      const Prob* p = g.weight(l, w[l]);
      if (!p) ok = false;
      else prod *= p->value();
    }
    if (ok && (!best || prod > *best)) best = prod;
  }
  return best;
}

std::size_t max_matching_size(const UnweightedBipartite& g) {
  // Try every subset of left vertices, largest first, for an injection.
  const std::size_t n = g.left_size();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<Vertex> subset;
    for (Vertex l = 0; l < n; ++l)
      if (mask >> l & 1) subset.push_back(l);
    if (subset.size() <= best) continue;
    bool found = false;
    for (const auto& w : all_allocations(subset.size(), g.right_size())) {
      bool ok = true;
      for (std::size_t k = 0; k < subset.size() && ok; ++k) {
        const auto& nb = g.neighbours(subset[k]);
        ok = std::find(nb.begin(), nb.end(), w[k]) != nb.end();
      }
      if (ok) {
        found = true;
        break;
      }
    }
    if (found) best = subset.size();
  }
  return best;
}

bool violates_hall(const UnweightedBipartite& g, const std::vector<Vertex>& agents) {
  std::vector<bool> nb(g.right_size(), false);
  for (Vertex l : agents)
    for (Vertex r : g.neighbours(l)) nb[r] = true;
  return static_cast<std::size_t>(std::count(nb.begin(), nb.end(), true)) < agents.size();
}

bool is_minimal_violator(const UnweightedBipartite& g, const std::vector<Vertex>& agents) {
  if (agents.empty() || !violates_hall(g, agents)) return false;
  const std::size_t k = agents.size();
  for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << k); ++mask) {
    std::vector<Vertex> sub;
    for (std::size_t b = 0; b < k; ++b)
      if (mask >> b & 1) sub.push_back(agents[b]);
    if (violates_hall(g, sub)) return false;
  }
  return true;
}

bool has_independent_set(const Graph& g, std::size_t k) {
  for (std::uint32_t mask = 0; mask < (1u << g.vertices); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    bool ok = true;
    for (auto [u, v] : g.edges)
      if ((mask >> u & 1) && (mask >> v & 1)) ok = false;
    if (ok) return true;
  }
  return false;
}

bool has_exact_cover(const R3xcInput& x) {
  const std::size_t s = x.subsets.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
    std::vector<int> hits(x.ground_size, 0);
    for (std::size_t j = 0; j < s; ++j)
      if (mask >> j & 1)
        for (auto e : x.subsets[j]) ++hits[e];
    if (std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; })) return true;
  }
  return false;
}

bool satisfiable_envy_matrix(const CompactPrefs& prefs, const std::vector<std::vector<bool>>& a, std::size_t m) {
  const std::size_t n = prefs.agents.size();
  for (const auto& w : all_allocations(n, m)) {
    bool ok = true;
    for (AgentId i = 0; i < n && ok; ++i)
      for (AgentId j = 0; j < n && ok; ++j) {
        if (i == j) continue;
        const auto& o = prefs.agents[i];
        ok = a[i][j] ? o.weakly_prefers(w[i], w[j]) : o.strictly_prefers(w[i], w[j]);
      }
    if (ok) return true;
  }
  return false;
}

}  // namespace oracle
