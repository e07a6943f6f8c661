#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "efalloc/error.hpp"
#include "efalloc/prob.hpp"

namespace efalloc {

using AgentId = std::uint32_t;
using HouseId = std::uint32_t;

/// A strict ranking of all m houses; position 0 is the most preferred.
class LinearOrder {
 public:
  LinearOrder() = default;
  /// Throws Error(NotAPermutation) unless `ranking` is a permutation of 0..m-1.
  explicit LinearOrder(std::vector<HouseId> ranking);

  std::size_t size() const { return ranking_.size(); }
  HouseId operator[](std::size_t rank) const { return ranking_[rank]; }
  const std::vector<HouseId>& ranking() const { return ranking_; }
  std::uint32_t position(HouseId h) const { return position_[h]; }
  bool prefers(HouseId a, HouseId b) const { return position_[a] < position_[b]; }

  friend bool operator==(const LinearOrder& a, const LinearOrder& b) { return a.ranking_ == b.ranking_; }
  friend auto operator<=>(const LinearOrder& a, const LinearOrder& b) { return a.ranking_ <=> b.ranking_; }

 private:
  std::vector<HouseId> ranking_;
  std::vector<std::uint32_t> position_;
};

/// A ranking with ties: an ordered partition of 0..m-1 into indifference
/// classes, best class first. Houses inside a class are kept sorted.
class WeakOrder {
 public:
  WeakOrder() = default;
  /// Throws Error(NotAWeakOrder) unless the classes are nonempty and
  /// partition 0..m-1.
  explicit WeakOrder(std::vector<std::vector<HouseId>> classes);

  std::size_t num_houses() const { return class_of_.size(); }
  std::size_t num_classes() const { return classes_.size(); }
  const std::vector<std::vector<HouseId>>& classes() const { return classes_; }
  std::uint32_t class_of(HouseId h) const { return class_of_[h]; }

  bool strictly_prefers(HouseId a, HouseId b) const { return class_of_[a] < class_of_[b]; }
  bool weakly_prefers(HouseId a, HouseId b) const { return class_of_[a] <= class_of_[b]; }
  bool indifferent(HouseId a, HouseId b) const { return class_of_[a] == class_of_[b]; }

  friend bool operator==(const WeakOrder& a, const WeakOrder& b) { return a.classes_ == b.classes_; }

 private:
  std::vector<std::vector<HouseId>> classes_;
  std::vector<std::uint32_t> class_of_;
};

struct WeightedOrder {
  Prob weight;
  LinearOrder order;
  friend bool operator==(const WeightedOrder&, const WeightedOrder&) = default;
};

struct LotteryPrefs {
  std::vector<std::vector<WeightedOrder>> agents;
  friend bool operator==(const LotteryPrefs&, const LotteryPrefs&) = default;
};

struct CompactPrefs {
  std::vector<WeakOrder> agents;
  friend bool operator==(const CompactPrefs&, const CompactPrefs&) = default;
};

struct WeightedProfile {
  Prob weight;
  std::vector<LinearOrder> orders;  // one per agent
  friend bool operator==(const WeightedProfile&, const WeightedProfile&) = default;
};

struct JointPrefs {
  std::vector<WeightedProfile> profiles;
  friend bool operator==(const JointPrefs&, const JointPrefs&) = default;
};

/// Dense m x m matrix; at(a, b) is the probability of preferring a to b.
class PairwiseMatrix {
 public:
  PairwiseMatrix() = default;
  explicit PairwiseMatrix(std::size_t m) : m_(m), p_(m * m) {}

  std::size_t size() const { return m_; }
  const Prob& at(HouseId a, HouseId b) const { return p_[a * m_ + b]; }
  Prob& at(HouseId a, HouseId b) { return p_[a * m_ + b]; }
  /// Sets at(a, b) = p and at(b, a) = 1 - p.
  void set_pair(HouseId a, HouseId b, const Prob& p);

  friend bool operator==(const PairwiseMatrix&, const PairwiseMatrix&) = default;

 private:
  std::size_t m_ = 0;
  std::vector<Prob> p_;
};

struct PairwisePrefs {
  std::vector<PairwiseMatrix> agents;
  friend bool operator==(const PairwisePrefs&, const PairwisePrefs&) = default;
};

enum class Model { Lottery, Compact, Joint, Pairwise };

std::string_view to_string(Model model);
/// Throws Error(ParseError) for unknown names.
Model parse_model(std::string_view name);

using Preferences = std::variant<LotteryPrefs, CompactPrefs, JointPrefs, PairwisePrefs>;

/// Unvalidated instance data as produced by parsers and generators.
struct RawInstance {
  std::size_t num_agents = 0;
  std::vector<std::string> house_names;
  Preferences prefs;
  friend bool operator==(const RawInstance&, const RawInstance&) = default;
};

/// A validated instance. Immutable; only validate_instance() creates one.
class Instance {
 public:
  std::size_t num_agents() const { return data_.num_agents; }
  std::size_t num_houses() const { return data_.house_names.size(); }
  const std::vector<std::string>& house_names() const { return data_.house_names; }
  const std::string& house_name(HouseId h) const { return data_.house_names[h]; }

  Model model() const { return static_cast<Model>(data_.prefs.index()); }
  /// Lottery, compact and pairwise factor across agents; joint does not.
  bool is_independent() const { return model() != Model::Joint; }

  const Preferences& prefs() const { return data_.prefs; }
  // Each accessor throws Error(ModelMismatch) when the model differs.
  const LotteryPrefs& lottery() const;
  const CompactPrefs& compact() const;
  const JointPrefs& joint() const;
  const PairwisePrefs& pairwise() const;

  const RawInstance& raw() const { return data_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  explicit Instance(RawInstance data) : data_(std::move(data)) {}
  friend Instance validate_instance(RawInstance raw);

  RawInstance data_;
};

/// Checks every model invariant and canonicalizes: zero-weight support
/// entries are dropped, duplicate lottery orders and joint profiles are
/// merged by summing weights (first occurrence keeps its position), and
/// the unused pairwise diagonal is zeroed.
///
/// Throws Error with kind NonProbability, NotAPermutation,
/// PairwiseInconsistent, TooFewHouses, EmptySupport or InvalidParams.
Instance validate_instance(RawInstance raw);

/// Injective map from agents to houses.
struct Allocation {
  std::vector<HouseId> assigned;

  std::size_t size() const { return assigned.size(); }
  HouseId operator[](AgentId i) const { return assigned[i]; }

  friend bool operator==(const Allocation&, const Allocation&) = default;
  friend auto operator<=>(const Allocation&, const Allocation&) = default;
};

/// Throws Error(ModelMismatch) if the length differs from the agent count
/// and Error(InvalidAllocation) if a house repeats or is out of range.
void check_allocation(const Instance& inst, const Allocation& w);

/// Marks which houses `w` uses.
std::vector<bool> allocated_mask(std::size_t num_houses, const Allocation& w);

/// Every linear order consistent with `w`, ties broken in all ways. The
/// result is in lexicographic order of rankings.
///
/// Throws Error(CapExceeded) when the product of class-size factorials is
/// above `cap`.
std::vector<LinearOrder> linear_extensions(const WeakOrder& w, std::uint64_t cap = 1'000'000);

/// Number of linear extensions, saturating at UINT64_MAX.
std::uint64_t count_linear_extensions(const WeakOrder& w);

}  // namespace efalloc
