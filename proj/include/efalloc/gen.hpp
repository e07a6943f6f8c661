#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "efalloc/core.hpp"

namespace efalloc {

// ---------------------------------------------------------------------------
// Random instances

struct RandomParams {
  Model model = Model::Lottery;
  std::size_t agents = 2;
  std::size_t houses = 2;
  /// Lottery: distinct orders per agent. Joint: distinct profiles.
  std::size_t support = 2;
  /// Compact: explicit class sizes shared by all agents (houses shuffled
  /// per agent). Empty selects random ties.
  std::vector<std::size_t> class_sizes;
  /// Compact with random ties: chance (in percent) that two neighbours of
  /// a random ranking share a class.
  unsigned tie_percent = 30;
  /// Pairwise: entries are k / grid for k uniform in 0..grid.
  std::uint32_t pairwise_grid = 4;
  std::uint64_t seed = 0;
};

/// Deterministic given the parameters. Throws Error(InvalidParams) for
/// m < n, zero sizes, support above the number of distinct orders, or
/// class sizes that do not sum to m.
Instance gen_random(const RandomParams& params);

// ---------------------------------------------------------------------------
// Compact instances from partial preference lists

/// Accumulates houses and agents with partial weak lists. Each agent's list
/// is completed by appending every unlisted house as its own class, in
/// ascending house index.
class CompactBuilder {
 public:
  HouseId add_house(std::string name);
  /// `partial` lists tie classes best first; must not repeat a house.
  AgentId add_agent(std::vector<std::vector<HouseId>> partial);

  std::size_t num_agents() const { return partial_.size(); }
  std::size_t num_houses() const { return names_.size(); }

  RawInstance build_raw() const;
  Instance build() const { return validate_instance(build_raw()); }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::vector<HouseId>>> partial_;
};

/// Two agents and four houses around `target`:
///   a1: e1 ~ e2 > target > e3,   a2: e1 ~ e2 > target > e4.
/// Allocating `target` elsewhere costs a factor 1/4.
struct SinglePenaltyGadget {
  HouseId target;
  std::array<AgentId, 2> agents;
  std::array<HouseId, 4> e;  // e1..e4

  /// Best internal assignment: e1, e2 when penalized, else e3, e4.
  void assign(Allocation& w, bool target_allocated) const;
};

SinglePenaltyGadget gen_single_penalty_gadget(CompactBuilder& b, HouseId target, const std::string& tag);

/// Four agents and eight houses around (h1, h2):
///   a1, a2: e1 ~ e2 ~ e3 ~ e4 > h1 > e5 / e6,
///   a3, a4: e1 ~ e2 ~ e3 ~ e4 > h2 > e7 / e8.
/// Allocating either target elsewhere costs a factor 1/256.
struct DoublePenaltyGadget {
  std::array<HouseId, 2> targets;
  std::array<AgentId, 4> agents;
  std::array<HouseId, 8> e;  // e1..e8

  void assign(Allocation& w, bool any_target_allocated) const;
};

/// Throws Error(InvalidParams) if h1 == h2.
DoublePenaltyGadget gen_double_penalty_gadget(CompactBuilder& b, HouseId h1, HouseId h2, const std::string& tag);

/// A single gadget around f, with a holder agent x: t ~ f so the target
/// may or may not be allocated. Houses t, f come first.
struct SinglePenaltyShell {
  Instance instance;
  AgentId holder;
  HouseId t, f;
  SinglePenaltyGadget gadget;
};
SinglePenaltyShell gen_single_penalty_shell();

/// A double gadget around h1, h2, each with a holder agent x_k: h_k ~ g_k.
struct DoublePenaltyShell {
  Instance instance;
  std::array<AgentId, 2> holders;
  std::array<HouseId, 2> targets;
  std::array<HouseId, 2> spares;
  DoublePenaltyGadget gadget;
};
DoublePenaltyShell gen_double_penalty_shell();

// ---------------------------------------------------------------------------
// Reductions

struct Graph {
  std::size_t vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
};

/// Throws Error(InvalidParams) for self-loops, repeated or out-of-range edges.
void check_graph(const Graph& g);

struct GadgetConfig {
  std::uint64_t alpha = 1;
  std::uint64_t a = 1;
  std::uint64_t r = 1;

  /// The penalty multiplicity that defeats an a(n+m)^r approximation:
  /// 49 a r^2 |V| |E|.
  static std::uint64_t hardness_alpha(std::uint64_t a, std::uint64_t r, std::size_t vertices, std::size_t edges);
};

/// Compact instance encoding an independent-set question.
struct IndependentSetReduction {
  Instance instance;
  std::size_t k = 0;
  std::uint64_t alpha = 1;
  std::array<AgentId, 2> guard_agents;
  std::array<HouseId, 2> guard_houses;
  std::vector<AgentId> vertex_agent;
  std::vector<HouseId> t;  // per vertex
  std::vector<HouseId> f;  // per vertex
  std::vector<SinglePenaltyGadget> singles;
  std::vector<DoublePenaltyGadget> doubles;

  /// Vertex v gets t_v if chosen[v] else f_v, guards get their tops, and
  /// every gadget takes its best internal assignment.
  Allocation allocation_for(const std::vector<bool>& chosen) const;
};

/// Guard agents/houses first, then per vertex (t_v, f_v, a_v), then alpha
/// single gadgets per f_v, then per edge uv |V|*alpha double gadgets on each
/// of (t_u, t_v), (t_u, f_v), (f_u, t_v).
/// Throws Error(InvalidParams) for an empty graph or alpha = 0.
IndependentSetReduction gen_independent_set_reduction(const Graph& g, std::size_t k, const GadgetConfig& cfg);

/// Restricted exact cover by 3-sets: every subset has three elements and
/// every element lies in exactly three subsets.
struct R3xcInput {
  std::size_t ground_size = 0;
  std::vector<std::array<std::uint32_t, 3>> subsets;
};

/// Throws Error(InvalidParams) when the restriction does not hold.
void check_r3xc(const R3xcInput& x);

/// Lottery instance with one agent per element and houses h_j^1..h_j^3 per
/// subset (index 3j + l - 1). Each agent gets six equiprobable orders, two
/// per containing subset.
Instance gen_r3xc_reduction(const R3xcInput& x);

/// Joint instance with six equiprobable profiles; profile t takes every
/// agent's t-th order, agents with fewer than six orders repeating their
/// first. Throws Error(InvalidParams) above six orders or for a non-lottery.
Instance gen_lottery_to_joint(const Instance& lottery);

/// Pairwise instance: 1 if a precedes b in every order, 0 if in none,
/// 1/2 otherwise. Throws Error(ModelMismatch) for a non-lottery.
Instance gen_lottery_to_pairwise(const Instance& lottery);

/// k agents with identical pairwise preferences over one house per vertex:
/// p(h_i > h_j) = 1 for edges with i < j, 1/2 otherwise.
/// Throws Error(InvalidParams) unless 1 <= k <= |V|.
Instance gen_is_pairwise_reduction(const Graph& g, std::size_t k);

}  // namespace efalloc
