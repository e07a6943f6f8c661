#include "efalloc/gen.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <utility>

#include "efalloc/combinatorics.hpp"

namespace efalloc {

namespace {

std::vector<std::string> default_names(std::size_t m, const char* prefix = "h") {
  std::vector<std::string> names;
  for (std::size_t h = 0; h < m; ++h) names.push_back(prefix + std::to_string(h));
  return names;
}

LinearOrder random_order(std::size_t m, std::mt19937_64& rng) {
  std::vector<HouseId> r(m);
  std::iota(r.begin(), r.end(), 0);
  std::shuffle(r.begin(), r.end(), rng);
  return LinearOrder(std::move(r));
}

Prob uniform_weight(std::size_t k) { return reciprocal(k); }

}  // namespace

Instance gen_random(const RandomParams& p) {
  const std::size_t n = p.agents;
  const std::size_t m = p.houses;
  if (n == 0 || m < n) throw Error(ErrorKind::InvalidParams, "need 1 <= agents <= houses");
  std::mt19937_64 rng(p.seed);
  RawInstance raw;
  raw.num_agents = n;
  raw.house_names = default_names(m);

  switch (p.model) {
    case Model::Lottery: {
      if (p.support == 0 || p.support > falling_factorial(m, m))
        throw Error(ErrorKind::InvalidParams, "lottery support must be between 1 and m!");
      LotteryPrefs prefs;
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<WeightedOrder> support;
        std::set<std::vector<HouseId>> seen;
        while (support.size() < p.support) {
          auto o = random_order(m, rng);
          if (seen.insert(o.ranking()).second) support.push_back({uniform_weight(p.support), std::move(o)});
        }
        prefs.agents.push_back(std::move(support));
      }
      raw.prefs = std::move(prefs);
      break;
    }
    case Model::Joint: {
      const std::uint64_t orders = falling_factorial(m, m);
      std::uint64_t profiles = 1;
      for (std::size_t i = 0; i < n && profiles <= p.support; ++i) profiles = profiles > UINT64_MAX / orders ? UINT64_MAX : profiles * orders;
      if (p.support == 0 || p.support > profiles)
        throw Error(ErrorKind::InvalidParams, "joint support must be between 1 and (m!)^n");
      JointPrefs prefs;
      std::set<std::vector<std::vector<HouseId>>> seen;
      while (prefs.profiles.size() < p.support) {
        WeightedProfile prof{uniform_weight(p.support), {}};
        std::vector<std::vector<HouseId>> key;
        for (std::size_t i = 0; i < n; ++i) {
          prof.orders.push_back(random_order(m, rng));
          key.push_back(prof.orders.back().ranking());
        }
        if (seen.insert(std::move(key)).second) prefs.profiles.push_back(std::move(prof));
      }
      raw.prefs = std::move(prefs);
      break;
    }
    case Model::Compact: {
      if (!p.class_sizes.empty()) {
        const auto total = std::accumulate(p.class_sizes.begin(), p.class_sizes.end(), std::size_t{0});
        if (total != m || std::find(p.class_sizes.begin(), p.class_sizes.end(), 0) != p.class_sizes.end())
          throw Error(ErrorKind::InvalidParams, "class sizes must be positive and sum to the house count");
      }
      if (p.tie_percent > 100) throw Error(ErrorKind::InvalidParams, "tie_percent must be at most 100");
      CompactPrefs prefs;
      std::uniform_int_distribution<unsigned> percent(0, 99);
      for (std::size_t i = 0; i < n; ++i) {
        const auto order = random_order(m, rng);
        std::vector<std::vector<HouseId>> classes;
        if (!p.class_sizes.empty()) {
          std::size_t pos = 0;
          for (std::size_t size : p.class_sizes) {
            classes.emplace_back(order.ranking().begin() + static_cast<std::ptrdiff_t>(pos),
                                 order.ranking().begin() + static_cast<std::ptrdiff_t>(pos + size));
            pos += size;
          }
        } else {
          for (std::size_t r = 0; r < m; ++r) {
            if (r == 0 || percent(rng) >= p.tie_percent) classes.emplace_back();
            classes.back().push_back(order[r]);
          }
        }
        prefs.agents.emplace_back(std::move(classes));
      }
      raw.prefs = std::move(prefs);
      break;
    }
    case Model::Pairwise: {
      if (p.pairwise_grid == 0) throw Error(ErrorKind::InvalidParams, "pairwise grid must be positive");
      std::uniform_int_distribution<std::uint32_t> step(0, p.pairwise_grid);
      PairwisePrefs prefs;
      for (std::size_t i = 0; i < n; ++i) {
        PairwiseMatrix pm(m);
        for (HouseId a = 0; a < m; ++a)
          for (HouseId b = a + 1; b < m; ++b) pm.set_pair(a, b, Prob(step(rng), p.pairwise_grid));
        prefs.agents.push_back(std::move(pm));
      }
      raw.prefs = std::move(prefs);
      break;
    }
  }
  return validate_instance(std::move(raw));
}

// ---------------------------------------------------------------------------

HouseId CompactBuilder::add_house(std::string name) {
  names_.push_back(std::move(name));
  return static_cast<HouseId>(names_.size() - 1);
}

AgentId CompactBuilder::add_agent(std::vector<std::vector<HouseId>> partial) {
  partial_.push_back(std::move(partial));
  return static_cast<AgentId>(partial_.size() - 1);
}

RawInstance CompactBuilder::build_raw() const {
  const std::size_t m = names_.size();
  CompactPrefs prefs;
  for (const auto& partial : partial_) {
    std::vector<bool> listed(m, false);
    std::vector<std::vector<HouseId>> classes = partial;
    for (const auto& c : partial)
      for (HouseId h : c) {
        if (h >= m || listed[h]) throw Error(ErrorKind::InvalidParams, "partial list repeats or misnames a house");
        listed[h] = true;
      }
    for (HouseId h = 0; h < m; ++h)
      if (!listed[h]) classes.push_back({h});
    prefs.agents.emplace_back(std::move(classes));
  }
  RawInstance raw;
  raw.num_agents = partial_.size();
  raw.house_names = names_;
  raw.prefs = std::move(prefs);
  return raw;
}

void SinglePenaltyGadget::assign(Allocation& w, bool target_allocated) const {
  w.assigned[agents[0]] = target_allocated ? e[0] : e[2];
  w.assigned[agents[1]] = target_allocated ? e[1] : e[3];
}

SinglePenaltyGadget gen_single_penalty_gadget(CompactBuilder& b, HouseId target, const std::string& tag) {
  SinglePenaltyGadget g{target, {}, {}};
  for (int k = 0; k < 4; ++k) g.e[k] = b.add_house(tag + "_e" + std::to_string(k + 1));
  g.agents[0] = b.add_agent({{g.e[0], g.e[1]}, {target}, {g.e[2]}});
  g.agents[1] = b.add_agent({{g.e[0], g.e[1]}, {target}, {g.e[3]}});
  return g;
}

void DoublePenaltyGadget::assign(Allocation& w, bool any_target_allocated) const {
  for (int k = 0; k < 4; ++k) w.assigned[agents[k]] = any_target_allocated ? e[k] : e[4 + k];
}

DoublePenaltyGadget gen_double_penalty_gadget(CompactBuilder& b, HouseId h1, HouseId h2, const std::string& tag) {
  if (h1 == h2) throw Error(ErrorKind::InvalidParams, "double penalty gadget needs two distinct houses");
  DoublePenaltyGadget g{{h1, h2}, {}, {}};
  for (int k = 0; k < 8; ++k) g.e[k] = b.add_house(tag + "_e" + std::to_string(k + 1));
  const std::vector<HouseId> top{g.e[0], g.e[1], g.e[2], g.e[3]};
  for (int k = 0; k < 4; ++k) g.agents[k] = b.add_agent({top, {k < 2 ? h1 : h2}, {g.e[4 + k]}});
  return g;
}

SinglePenaltyShell gen_single_penalty_shell() {
  CompactBuilder b;
  const HouseId t = b.add_house("t");
  const HouseId f = b.add_house("f");
  const AgentId holder = b.add_agent({{t, f}});
  auto gadget = gen_single_penalty_gadget(b, f, "sp");
  return SinglePenaltyShell{b.build(), holder, t, f, gadget};
}

DoublePenaltyShell gen_double_penalty_shell() {
  CompactBuilder b;
  const HouseId h1 = b.add_house("h1");
  const HouseId g1 = b.add_house("g1");
  const HouseId h2 = b.add_house("h2");
  const HouseId g2 = b.add_house("g2");
  const AgentId x1 = b.add_agent({{h1, g1}});
  const AgentId x2 = b.add_agent({{h2, g2}});
  auto gadget = gen_double_penalty_gadget(b, h1, h2, "dp");
  return DoublePenaltyShell{b.build(), {x1, x2}, {h1, h2}, {g1, g2}, gadget};
}

// ---------------------------------------------------------------------------

void check_graph(const Graph& g) {
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (auto [u, v] : g.edges) {
    if (u >= g.vertices || v >= g.vertices || u == v)
      throw Error(ErrorKind::InvalidParams, "edge endpoints must be distinct vertices in range");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
      throw Error(ErrorKind::InvalidParams, "repeated edge");
  }
}

std::uint64_t GadgetConfig::hardness_alpha(std::uint64_t a, std::uint64_t r, std::size_t vertices, std::size_t edges) {
  return 49 * a * r * r * vertices * edges;
}

Allocation IndependentSetReduction::allocation_for(const std::vector<bool>& chosen) const {
  if (chosen.size() != t.size()) throw Error(ErrorKind::InvalidParams, "one choice per vertex expected");
  Allocation w;
  w.assigned.resize(instance.num_agents());
  w.assigned[guard_agents[0]] = guard_houses[0];
  w.assigned[guard_agents[1]] = guard_houses[1];
  std::vector<bool> allocated(instance.num_houses(), false);
  for (std::size_t v = 0; v < t.size(); ++v) {
    const HouseId h = chosen[v] ? t[v] : f[v];
    w.assigned[vertex_agent[v]] = h;
    allocated[h] = true;
  }
  for (const auto& s : singles) s.assign(w, allocated[s.target]);
  for (const auto& d : doubles) d.assign(w, allocated[d.targets[0]] || allocated[d.targets[1]]);
  return w;
}

IndependentSetReduction gen_independent_set_reduction(const Graph& g, std::size_t k, const GadgetConfig& cfg) {
  check_graph(g);
  if (g.vertices == 0) throw Error(ErrorKind::InvalidParams, "graph must have at least one vertex");
  if (cfg.alpha == 0) throw Error(ErrorKind::InvalidParams, "alpha must be at least 1");

  // Instance has no empty state, so the parts are gathered first.
  struct Parts {
    std::array<AgentId, 2> guard_agents;
    std::array<HouseId, 2> guard_houses;
    std::vector<AgentId> vertex_agent;
    std::vector<HouseId> t, f;
    std::vector<SinglePenaltyGadget> singles;
    std::vector<DoublePenaltyGadget> doubles;
  } red;
  CompactBuilder b;

  // Unlisted houses are appended in index order, so guard houses at 0 and 1
  // sit right below every partial list and above everything else.
  red.guard_houses = {b.add_house("guard_e1"), b.add_house("guard_e2")};
  red.guard_agents = {b.add_agent({{red.guard_houses[0]}}),
                      b.add_agent({{red.guard_houses[1]}, {red.guard_houses[0]}})};

  for (std::size_t v = 0; v < g.vertices; ++v) {
    red.t.push_back(b.add_house("t_" + std::to_string(v)));
    red.f.push_back(b.add_house("f_" + std::to_string(v)));
    red.vertex_agent.push_back(b.add_agent({{red.t[v], red.f[v]}}));
  }
  for (std::size_t v = 0; v < g.vertices; ++v)
    for (std::uint64_t c = 0; c < cfg.alpha; ++c)
      red.singles.push_back(
          gen_single_penalty_gadget(b, red.f[v], "sp_" + std::to_string(v) + "_" + std::to_string(c)));

  const std::uint64_t copies = g.vertices * cfg.alpha;
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [u, v] = g.edges[e];
    const std::array<std::pair<HouseId, HouseId>, 3> pairs{
        {{red.t[u], red.t[v]}, {red.t[u], red.f[v]}, {red.f[u], red.t[v]}}};
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (std::uint64_t c = 0; c < copies; ++c)
        red.doubles.push_back(gen_double_penalty_gadget(
            b, pairs[p].first, pairs[p].second,
            "dp_" + std::to_string(e) + "_" + std::to_string(p) + "_" + std::to_string(c)));
  }

  return IndependentSetReduction{b.build(), k, cfg.alpha, red.guard_agents, red.guard_houses,
                                 std::move(red.vertex_agent), std::move(red.t), std::move(red.f),
                                 std::move(red.singles), std::move(red.doubles)};
}

// ---------------------------------------------------------------------------

void check_r3xc(const R3xcInput& x) {
  if (x.ground_size == 0 || x.ground_size % 3 != 0)
    throw Error(ErrorKind::InvalidParams, "ground set size must be a positive multiple of 3");
  std::vector<int> count(x.ground_size, 0);
  for (const auto& s : x.subsets) {
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2])
      throw Error(ErrorKind::InvalidParams, "subset elements must be distinct");
    for (auto e : s) {
      if (e >= x.ground_size) throw Error(ErrorKind::InvalidParams, "subset element out of range");
      ++count[e];
    }
  }
  for (std::size_t e = 0; e < x.ground_size; ++e)
    if (count[e] != 3)
      throw Error(ErrorKind::InvalidParams, "element " + std::to_string(e) + " lies in " + std::to_string(count[e]) +
                                                " subsets, expected 3");
}

Instance gen_r3xc_reduction(const R3xcInput& x) {
  check_r3xc(x);
  const std::size_t agents = x.ground_size;
  const std::size_t m = 3 * x.subsets.size();

  auto house = [](std::size_t subset, std::uint32_t slot) { return static_cast<HouseId>(3 * subset + slot); };

  RawInstance raw;
  raw.num_agents = agents;
  for (std::size_t j = 0; j < x.subsets.size(); ++j)
    for (int l = 1; l <= 3; ++l) raw.house_names.push_back("h" + std::to_string(j) + "_" + std::to_string(l));

  LotteryPrefs prefs;
  for (std::uint32_t i = 0; i < agents; ++i) {
    // The three subsets holding element i; `own` is i's slot in each (by
    // rank of i within the sorted subset), `rest` the other two ascending.
    std::vector<std::size_t> holding;
    for (std::size_t j = 0; j < x.subsets.size(); ++j)
      if (std::find(x.subsets[j].begin(), x.subsets[j].end(), i) != x.subsets[j].end()) holding.push_back(j);
    std::array<std::uint32_t, 3> own{};
    std::array<std::array<std::uint32_t, 2>, 3> rest{};
    for (int d = 0; d < 3; ++d) {
      auto s = x.subsets[holding[d]];
      std::sort(s.begin(), s.end());
      const auto l = static_cast<std::uint32_t>(std::find(s.begin(), s.end(), i) - s.begin());
      own[d] = l;
      int r = 0;
      for (std::uint32_t slot = 0; slot < 3; ++slot)
        if (slot != l) rest[d][r++] = slot;
    }

    std::vector<WeightedOrder> orders;
    for (int lead = 0; lead < 3; ++lead)
      for (int swap = 0; swap < 2; ++swap) {
        std::vector<HouseId> ranking;
        std::vector<bool> listed(m, false);
        auto push = [&](HouseId h) {
          ranking.push_back(h);
          listed[h] = true;
        };
        push(house(holding[lead], own[lead]));
        push(house(holding[lead], rest[lead][swap]));
        push(house(holding[lead], rest[lead][1 - swap]));
        for (int d = 0; d < 3; ++d) {
          if (d == lead) continue;
          push(house(holding[d], own[d]));
          push(house(holding[d], rest[d][0]));
          push(house(holding[d], rest[d][1]));
        }
        for (HouseId h = 0; h < m; ++h)
          if (!listed[h]) ranking.push_back(h);
        orders.push_back({reciprocal(6), LinearOrder(std::move(ranking))});
      }
    prefs.agents.push_back(std::move(orders));
  }
  raw.prefs = std::move(prefs);
  return validate_instance(std::move(raw));
}

Instance gen_lottery_to_joint(const Instance& lottery) {
  const auto& agents = lottery.lottery().agents;
  for (const auto& support : agents)
    if (support.size() > 6) throw Error(ErrorKind::InvalidParams, "agents may have at most six orders");
  JointPrefs prefs;
  for (std::size_t t = 0; t < 6; ++t) {
    WeightedProfile prof{reciprocal(6), {}};
    for (const auto& support : agents) prof.orders.push_back(support[t < support.size() ? t : 0].order);
    prefs.profiles.push_back(std::move(prof));
  }
  RawInstance raw{lottery.num_agents(), lottery.house_names(), std::move(prefs)};
  return validate_instance(std::move(raw));
}

Instance gen_lottery_to_pairwise(const Instance& lottery) {
  const auto& agents = lottery.lottery().agents;
  const std::size_t m = lottery.num_houses();
  PairwisePrefs prefs;
  for (const auto& support : agents) {
    PairwiseMatrix pm(m);
    for (HouseId a = 0; a < m; ++a)
      for (HouseId b = a + 1; b < m; ++b) {
        std::size_t ahead = 0;
        for (const auto& wo : support)
          if (wo.order.prefers(a, b)) ++ahead;
        const Prob p = ahead == support.size() ? Prob::one() : (ahead == 0 ? Prob::zero() : Prob(1, 2));
        pm.set_pair(a, b, p);
      }
    prefs.agents.push_back(std::move(pm));
  }
  RawInstance raw{lottery.num_agents(), lottery.house_names(), std::move(prefs)};
  return validate_instance(std::move(raw));
}

Instance gen_is_pairwise_reduction(const Graph& g, std::size_t k) {
  check_graph(g);
  if (k == 0 || k > g.vertices) throw Error(ErrorKind::InvalidParams, "need 1 <= k <= |V|");
  const std::size_t m = g.vertices;
  PairwiseMatrix shared(m);
  for (HouseId a = 0; a < m; ++a)
    for (HouseId b = a + 1; b < m; ++b) shared.set_pair(a, b, Prob(1, 2));
  for (auto [u, v] : g.edges) shared.set_pair(std::min(u, v), std::max(u, v), Prob::one());
  RawInstance raw{k, default_names(m, "v"), PairwisePrefs{std::vector<PairwiseMatrix>(k, shared)}};
  return validate_instance(std::move(raw));
}

}  // namespace efalloc
