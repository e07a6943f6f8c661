#include "efalloc/core.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace efalloc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonProbability: return "NonProbability";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::NotAWeakOrder: return "NotAWeakOrder";
    case ErrorKind::PairwiseInconsistent: return "PairwiseInconsistent";
    case ErrorKind::TooFewHouses: return "TooFewHouses";
    case ErrorKind::EmptySupport: return "EmptySupport";
    case ErrorKind::InvalidAllocation: return "InvalidAllocation";
    case ErrorKind::ModelMismatch: return "ModelMismatch";
    case ErrorKind::NotIndependentModel: return "NotIndependentModel";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorKind::MatrixEnumerationCapExceeded: return "MatrixEnumerationCapExceeded";
    case ErrorKind::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorKind::NoViolator: return "NoViolator";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::MethodModelMismatch: return "MethodModelMismatch";
  }
  return "Unknown";
}

LinearOrder::LinearOrder(std::vector<HouseId> ranking)
    : ranking_(std::move(ranking)), position_(ranking_.size(), std::numeric_limits<std::uint32_t>::max()) {
  for (std::size_t r = 0; r < ranking_.size(); ++r) {
    const HouseId h = ranking_[r];
    if (h >= ranking_.size() || position_[h] != std::numeric_limits<std::uint32_t>::max())
      throw Error(ErrorKind::NotAPermutation, "ranking is not a permutation of 0..m-1");
    position_[h] = static_cast<std::uint32_t>(r);
  }
}

WeakOrder::WeakOrder(std::vector<std::vector<HouseId>> classes) : classes_(std::move(classes)) {
  std::size_t total = 0;
  for (const auto& c : classes_) {
    if (c.empty()) throw Error(ErrorKind::NotAWeakOrder, "empty indifference class");
    total += c.size();
  }
  class_of_.assign(total, std::numeric_limits<std::uint32_t>::max());
  for (std::size_t k = 0; k < classes_.size(); ++k) {
    auto& c = classes_[k];
    std::sort(c.begin(), c.end());
    for (HouseId h : c) {
      if (h >= total || class_of_[h] != std::numeric_limits<std::uint32_t>::max())
        throw Error(ErrorKind::NotAWeakOrder, "classes do not partition 0..m-1");
      class_of_[h] = static_cast<std::uint32_t>(k);
    }
  }
}

void PairwiseMatrix::set_pair(HouseId a, HouseId b, const Prob& p) {
  at(a, b) = p;
  at(b, a) = Prob::one() - p;
}

std::string_view to_string(Model model) {
  switch (model) {
    case Model::Lottery: return "lottery";
    case Model::Compact: return "compact";
    case Model::Joint: return "joint";
    case Model::Pairwise: return "pairwise";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "lottery") return Model::Lottery;
  if (name == "compact") return Model::Compact;
  if (name == "joint") return Model::Joint;
  if (name == "pairwise") return Model::Pairwise;
  throw Error(ErrorKind::ParseError, "unknown model '" + std::string(name) + "'");
}

const LotteryPrefs& Instance::lottery() const {
  if (const auto* p = std::get_if<LotteryPrefs>(&data_.prefs)) return *p;
  throw Error(ErrorKind::ModelMismatch, "instance is not a lottery instance");
}

const CompactPrefs& Instance::compact() const {
  if (const auto* p = std::get_if<CompactPrefs>(&data_.prefs)) return *p;
  throw Error(ErrorKind::ModelMismatch, "instance is not a compact instance");
}

const JointPrefs& Instance::joint() const {
  if (const auto* p = std::get_if<JointPrefs>(&data_.prefs)) return *p;
  throw Error(ErrorKind::ModelMismatch, "instance is not a joint instance");
}

const PairwisePrefs& Instance::pairwise() const {
  if (const auto* p = std::get_if<PairwisePrefs>(&data_.prefs)) return *p;
  throw Error(ErrorKind::ModelMismatch, "instance is not a pairwise instance");
}

namespace {

void check_probability(const Prob& p, const std::string& where) {
  if (!p.is_probability()) throw Error(ErrorKind::NonProbability, where + ": weight " + p.str() + " exceeds 1");
}

void check_order_length(const LinearOrder& o, std::size_t m, const std::string& where) {
  if (o.size() != m)
    throw Error(ErrorKind::NotAPermutation, where + ": order ranks " + std::to_string(o.size()) + " houses, expected " +
                                                std::to_string(m));
}

// Drops zero weights, merges equal keys in first-occurrence order, checks the
// weights sum to one.
template <typename Entry, typename KeyEq>
std::vector<Entry> normalize_support(std::vector<Entry> entries, KeyEq same_key, const std::string& where) {
  std::vector<Entry> merged;
  Prob total;
  for (auto& e : entries) {
    check_probability(e.weight, where);
    total += e.weight;
    if (e.weight.is_zero()) continue;
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Entry& x) { return same_key(x, e); });
    if (it == merged.end())
      merged.push_back(std::move(e));
    else
      it->weight += e.weight;
  }
  if (merged.empty()) throw Error(ErrorKind::EmptySupport, where + ": no support entry with positive weight");
  if (!total.is_one()) throw Error(ErrorKind::NonProbability, where + ": weights sum to " + total.str());
  return merged;
}

struct Validator {
  std::size_t n;
  std::size_t m;

  void operator()(LotteryPrefs& prefs) const {
    if (prefs.agents.size() != n)
      throw Error(ErrorKind::InvalidParams, "lottery prefs list " + std::to_string(prefs.agents.size()) + " agents");
    for (std::size_t i = 0; i < n; ++i) {
      const std::string where = "agent " + std::to_string(i);
      if (prefs.agents[i].empty()) throw Error(ErrorKind::EmptySupport, where + ": empty lottery");
      for (const auto& wo : prefs.agents[i]) check_order_length(wo.order, m, where);
      prefs.agents[i] = normalize_support(
          std::move(prefs.agents[i]), [](const WeightedOrder& a, const WeightedOrder& b) { return a.order == b.order; },
          where);
    }
  }

  void operator()(CompactPrefs& prefs) const {
    if (prefs.agents.size() != n)
      throw Error(ErrorKind::InvalidParams, "compact prefs list " + std::to_string(prefs.agents.size()) + " agents");
    for (std::size_t i = 0; i < n; ++i)
      if (prefs.agents[i].num_houses() != m)
        throw Error(ErrorKind::NotAWeakOrder, "agent " + std::to_string(i) + ": weak order does not cover all houses");
  }

  void operator()(JointPrefs& prefs) const {
    if (prefs.profiles.empty()) throw Error(ErrorKind::EmptySupport, "joint distribution has no profiles");
    for (std::size_t t = 0; t < prefs.profiles.size(); ++t) {
      const std::string where = "profile " + std::to_string(t);
      const auto& prof = prefs.profiles[t];
      if (prof.orders.size() != n)
        throw Error(ErrorKind::InvalidParams, where + ": has " + std::to_string(prof.orders.size()) + " orders");
      for (const auto& o : prof.orders) check_order_length(o, m, where);
    }
    prefs.profiles = normalize_support(
        std::move(prefs.profiles),
        [](const WeightedProfile& a, const WeightedProfile& b) { return a.orders == b.orders; }, "joint distribution");
  }

  void operator()(PairwisePrefs& prefs) const {
    if (prefs.agents.size() != n)
      throw Error(ErrorKind::InvalidParams, "pairwise prefs list " + std::to_string(prefs.agents.size()) + " agents");
    for (std::size_t i = 0; i < n; ++i) {
      auto& p = prefs.agents[i];
      const std::string where = "agent " + std::to_string(i);
      if (p.size() != m) throw Error(ErrorKind::InvalidParams, where + ": pairwise matrix has wrong size");
      for (HouseId a = 0; a < m; ++a) {
        p.at(a, a) = Prob::zero();
        for (HouseId b = a + 1; b < m; ++b) {
          check_probability(p.at(a, b), where);
          check_probability(p.at(b, a), where);
          if (!(p.at(a, b) + p.at(b, a)).is_one())
            throw Error(ErrorKind::PairwiseInconsistent,
                        where + ": p[" + std::to_string(a) + "][" + std::to_string(b) + "] + p[" + std::to_string(b) +
                            "][" + std::to_string(a) + "] != 1");
        }
      }
    }
  }
};

}  // namespace

Instance validate_instance(RawInstance raw) {
  const std::size_t n = raw.num_agents;
  const std::size_t m = raw.house_names.size();
  if (n == 0) throw Error(ErrorKind::InvalidParams, "instance has no agents");
  if (m < n)
    throw Error(ErrorKind::TooFewHouses, std::to_string(m) + " houses for " + std::to_string(n) + " agents");
  std::set<std::string_view> seen;
  for (const auto& name : raw.house_names) {
    if (name.empty()) throw Error(ErrorKind::InvalidParams, "empty house name");
    if (!seen.insert(name).second) throw Error(ErrorKind::InvalidParams, "duplicate house name '" + name + "'");
  }
  std::visit(Validator{n, m}, raw.prefs);
  return Instance(std::move(raw));
}

void check_allocation(const Instance& inst, const Allocation& w) {
  if (w.size() != inst.num_agents())
    throw Error(ErrorKind::ModelMismatch, "allocation has " + std::to_string(w.size()) + " entries for " +
                                              std::to_string(inst.num_agents()) + " agents");
  std::vector<bool> used(inst.num_houses(), false);
  for (HouseId h : w.assigned) {
    if (h >= inst.num_houses()) throw Error(ErrorKind::InvalidAllocation, "house index out of range");
    if (used[h]) throw Error(ErrorKind::InvalidAllocation, "house '" + inst.house_name(h) + "' assigned twice");
    used[h] = true;
  }
}

std::vector<bool> allocated_mask(std::size_t num_houses, const Allocation& w) {
  std::vector<bool> mask(num_houses, false);
  for (HouseId h : w.assigned) mask[h] = true;
  return mask;
}

std::uint64_t count_linear_extensions(const WeakOrder& w) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t count = 1;
  for (const auto& c : w.classes())
    for (std::uint64_t k = 2; k <= c.size(); ++k) {
      if (count > kMax / k) return kMax;
      count *= k;
    }
  return count;
}

std::vector<LinearOrder> linear_extensions(const WeakOrder& w, std::uint64_t cap) {
  const std::uint64_t count = count_linear_extensions(w);
  if (count > cap)
    throw Error(ErrorKind::CapExceeded,
                std::to_string(count) + " linear extensions exceed the cap of " + std::to_string(cap));

  // Odometer over per-class permutations; the last class varies fastest so
  // the output is lexicographic.
  std::vector<std::vector<HouseId>> perms = w.classes();
  std::vector<LinearOrder> out;
  out.reserve(count);
  while (true) {
    std::vector<HouseId> ranking;
    ranking.reserve(w.num_houses());
    for (const auto& p : perms) ranking.insert(ranking.end(), p.begin(), p.end());
    out.emplace_back(std::move(ranking));

    std::size_t k = perms.size();
    while (k > 0 && !std::next_permutation(perms[k - 1].begin(), perms[k - 1].end())) --k;
    if (k == 0) break;
  }
  return out;
}

}  // namespace efalloc
