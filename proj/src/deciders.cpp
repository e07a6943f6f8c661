#include "efalloc/deciders.hpp"

#include <atomic>
#include <boost/dynamic_bitset.hpp>
#include <stdexcept>

#include "efalloc/compact.hpp"
#include "efalloc/efprob.hpp"
#include "efalloc/matching.hpp"

namespace efalloc {

std::string_view to_string(Method method) {
  return method == Method::Polynomial ? "polynomial" : "exhaustive";
}

namespace {

using Bits = boost::dynamic_bitset<>;

enum class Sense { Possibly, Certainly };

// How a partial allocation is checked beyond the pairwise relation.
enum class Exactness {
  Pairwise,        // the relation alone decides (certainly-EF, pairwise and compact possibly-EF)
  PerAgentOrders,  // lottery possibly-EF: every agent keeps some order where it tops the allocated houses
  SharedProfiles,  // joint possibly-EF: some single profile keeps everybody envy-free
};

struct SearchSpec {
  std::size_t n = 0;
  std::size_t m = 0;
  // ok[i][a] = houses b such that agent i holding a can coexist with b
  // allocated. Exact under Exactness::Pairwise, otherwise a necessary
  // condition.
  std::vector<std::vector<Bits>> ok;
  // rev[i][b] = houses a such that ok[i][a] contains b.
  std::vector<std::vector<Bits>> rev;
  Exactness exactness = Exactness::Pairwise;
  // before[i][a * m + b] = support entries (orders or profiles) in which
  // agent i ranks a above b. Only for the non-pairwise modes.
  std::vector<std::vector<Bits>> before;
  std::size_t support = 0;
};

void finish_relation(SearchSpec& s) {
  s.rev.assign(s.n, std::vector<Bits>(s.m, Bits(s.m)));
  for (std::size_t i = 0; i < s.n; ++i)
    for (std::size_t a = 0; a < s.m; ++a)
      for (auto b = s.ok[i][a].find_first(); b != Bits::npos; b = s.ok[i][a].find_next(b)) s.rev[i][b].set(a);
}

template <typename Pred>
void fill_relation(SearchSpec& s, Pred ok) {
  s.ok.assign(s.n, std::vector<Bits>(s.m, Bits(s.m)));
  for (std::size_t i = 0; i < s.n; ++i)
    for (HouseId a = 0; a < s.m; ++a)
      for (HouseId b = 0; b < s.m; ++b)
        if (a != b && ok(static_cast<AgentId>(i), a, b)) s.ok[i][a].set(b);
  finish_relation(s);
}

// Builds before[i] from a list of orders per agent (each agent indexes the
// same support entries), then the relation "a before b in all / some".
void fill_from_orders(SearchSpec& s, const std::vector<std::vector<const LinearOrder*>>& orders, Sense sense) {
  s.support = orders.empty() ? 0 : orders.front().size();
  s.before.assign(s.n, std::vector<Bits>(s.m * s.m));
  for (std::size_t i = 0; i < s.n; ++i) {
    const std::size_t k = orders[i].size();
    for (auto& bits : s.before[i]) bits.resize(k);
    for (std::size_t t = 0; t < k; ++t) {
      const LinearOrder& o = *orders[i][t];
      for (HouseId a = 0; a < s.m; ++a)
        for (HouseId b = 0; b < s.m; ++b)
          if (a != b && o.prefers(a, b)) s.before[i][a * s.m + b].set(t);
    }
  }
  fill_relation(s, [&](AgentId i, HouseId a, HouseId b) {
    const Bits& bits = s.before[i][a * s.m + b];
    return sense == Sense::Certainly ? bits.all() : bits.any();
  });
}

SearchSpec make_spec(const Instance& inst, Sense sense) {
  SearchSpec s;
  s.n = inst.num_agents();
  s.m = inst.num_houses();
  switch (inst.model()) {
    case Model::Compact: {
      const auto& prefs = inst.compact();
      fill_relation(s, [&](AgentId i, HouseId a, HouseId b) {
        return sense == Sense::Certainly ? prefs.agents[i].strictly_prefers(a, b) : prefs.agents[i].weakly_prefers(a, b);
      });
      break;
    }
    case Model::Pairwise: {
      const auto& prefs = inst.pairwise();
      fill_relation(s, [&](AgentId i, HouseId a, HouseId b) {
        const Prob& p = prefs.agents[i].at(a, b);
        return sense == Sense::Certainly ? p.is_one() : !p.is_zero();
      });
      break;
    }
    case Model::Lottery: {
      std::vector<std::vector<const LinearOrder*>> orders(s.n);
      for (std::size_t i = 0; i < s.n; ++i)
        for (const auto& wo : inst.lottery().agents[i]) orders[i].push_back(&wo.order);
      fill_from_orders(s, orders, sense);
      if (sense == Sense::Possibly) s.exactness = Exactness::PerAgentOrders;
      break;
    }
    case Model::Joint: {
      std::vector<std::vector<const LinearOrder*>> orders(s.n);
      for (const auto& prof : inst.joint().profiles)
        for (std::size_t i = 0; i < s.n; ++i) orders[i].push_back(&prof.orders[i]);
      fill_from_orders(s, orders, sense);
      if (sense == Sense::Possibly) s.exactness = Exactness::SharedProfiles;
      break;
    }
  }
  return s;
}

class BudgetExceeded : public std::exception {};

// Depth-first search over agents in index order, houses ascending, with
// forward checking of domains and a matching test on the remaining agents.
class Search {
 public:
  Search(const SearchSpec& spec, std::uint64_t budget, const std::atomic<std::int64_t>* stop_before)
      : s_(spec), budget_(budget), stop_before_(stop_before) {
    assign_.resize(s_.n);
  }

  // Explores only the branch where agent 0 receives `first`.
  std::optional<Allocation> run_branch(HouseId first, std::int64_t branch_index) {
    branch_ = branch_index;
    std::vector<Bits> domains(s_.n, Bits(s_.m));
    for (auto& d : domains) d.set();
    std::vector<Bits> alive;
    if (s_.exactness == Exactness::PerAgentOrders) {
      alive.resize(s_.n);
    } else if (s_.exactness == Exactness::SharedProfiles) {
      alive.assign(1, Bits(s_.support));
      alive[0].set();
    }
    if (!try_assign(0, first, domains, alive)) return std::nullopt;
    return Allocation{assign_};
  }

 private:
  bool try_assign(std::size_t k, HouseId h, const std::vector<Bits>& domains, const std::vector<Bits>& alive) {
    if (++nodes_ > budget_) throw BudgetExceeded{};
    if (stop_before_ && (nodes_ & 1023u) == 0 && stop_before_->load(std::memory_order_relaxed) < branch_)
      return false;

    std::vector<Bits> next_alive;
    if (!update_alive(k, h, alive, next_alive)) return false;

    assign_[k] = static_cast<HouseId>(h);
    if (k + 1 == s_.n) return true;

    std::vector<Bits> next(domains);
    for (std::size_t f = k + 1; f < s_.n; ++f) {
      next[f] &= s_.ok[k][h];
      next[f] &= s_.rev[f][h];
      next[f].reset(h);
      if (next[f].none()) return false;
    }
    if (!remaining_matchable(k + 1, next)) return false;

    for (auto x = next[k + 1].find_first(); x != Bits::npos; x = next[k + 1].find_next(x))
      if (try_assign(k + 1, static_cast<HouseId>(x), next, next_alive)) return true;
    return false;
  }

  bool update_alive(std::size_t k, HouseId h, const std::vector<Bits>& alive, std::vector<Bits>& out) const {
    switch (s_.exactness) {
      case Exactness::Pairwise:
        return true;
      case Exactness::PerAgentOrders: {
        out = alive;
        out[k] = Bits(s_.before[k][0].size());
        out[k].set();
        for (std::size_t j = 0; j < k; ++j) {
          out[j] &= s_.before[j][assign_[j] * s_.m + h];
          if (out[j].none()) return false;
          out[k] &= s_.before[k][h * s_.m + assign_[j]];
        }
        return out[k].any();
      }
      case Exactness::SharedProfiles: {
        out = alive;
        for (std::size_t j = 0; j < k; ++j) {
          out[0] &= s_.before[j][assign_[j] * s_.m + h];
          out[0] &= s_.before[k][h * s_.m + assign_[j]];
        }
        return out[0].any();
      }
    }
    return false;
  }

  bool remaining_matchable(std::size_t from, const std::vector<Bits>& domains) const {
    UnweightedBipartite g(s_.n - from, s_.m);
    for (std::size_t f = from; f < s_.n; ++f)
      for (auto x = domains[f].find_first(); x != Bits::npos; x = domains[f].find_next(x))
        g.add_edge(static_cast<Vertex>(f - from), static_cast<Vertex>(x));
    return std::holds_alternative<Matching>(max_cardinality_matching(g));
  }

  const SearchSpec& s_;
  std::uint64_t budget_;
  const std::atomic<std::int64_t>* stop_before_;
  std::int64_t branch_ = 0;
  std::uint64_t nodes_ = 0;
  std::vector<HouseId> assign_;
};

[[noreturn]] void over_budget(std::uint64_t cap) {
  throw Error(ErrorKind::SearchCapExceeded, "search branch exceeded " + std::to_string(cap) + " nodes");
}

std::optional<Allocation> search_serial(const SearchSpec& spec, std::uint64_t cap) {
  for (HouseId h = 0; h < spec.m; ++h) {
    Search search(spec, cap, nullptr);
    try {
      if (auto w = search.run_branch(h, h)) return w;
    } catch (const BudgetExceeded&) {
      over_budget(cap);
    }
  }
  return std::nullopt;
}

// One task per house for agent 0. A branch may stop early once a
// lower-indexed branch has succeeded; the lowest successful branch wins, so
// the answer matches the serial order.
std::optional<Allocation> search_parallel(const SearchSpec& spec, std::uint64_t cap, int threads) {
  const auto branches = static_cast<std::int64_t>(spec.m);
  std::atomic<std::int64_t> first_success{branches};
  std::vector<std::optional<Allocation>> found(spec.m);
  std::vector<char> exceeded(spec.m, 0);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t b = 0; b < branches; ++b) {
    if (first_success.load() < b) continue;
    Search search(spec, cap, &first_success);
    try {
      found[b] = search.run_branch(static_cast<HouseId>(b), b);
    } catch (const BudgetExceeded&) {
      exceeded[b] = 1;
    }
    if (found[b]) {
      std::int64_t cur = first_success.load();
      while (b < cur && !first_success.compare_exchange_weak(cur, b)) {
      }
    }
  }

  for (std::size_t b = 0; b < spec.m; ++b) {
    if (exceeded[b]) over_budget(cap);
    if (found[b]) return found[b];
  }
  return std::nullopt;
}

Decision exhaustive(const Instance& inst, Sense sense, const DecideOptions& opts) {
  const SearchSpec spec = make_spec(inst, sense);
  auto w = opts.exec.threads <= 1 ? search_serial(spec, opts.cap) : search_parallel(spec, opts.cap, opts.exec.threads);
  return Decision{w.has_value(), std::move(w), Method::Exhaustive};
}

Decision verified(const Instance& inst, Decision d, Sense sense) {
  if (d.answer) {
    const Prob p = ef_prob(inst, *d.witness);
    const bool ok = sense == Sense::Certainly ? p.is_one() : !p.is_zero();
    if (!ok) throw std::logic_error("decider produced an invalid witness with EF-probability " + p.str());
  }
  return d;
}

Decision polynomial(std::optional<Allocation> w) { return Decision{w.has_value(), std::move(w), Method::Polynomial}; }

// Strict orders are weak orders with singleton classes.
CompactPrefs as_weak(const std::vector<LinearOrder>& orders) {
  CompactPrefs prefs;
  for (const auto& o : orders) {
    std::vector<std::vector<HouseId>> classes;
    for (HouseId h : o.ranking()) classes.push_back({h});
    prefs.agents.emplace_back(std::move(classes));
  }
  return prefs;
}

}  // namespace

Decision exhaustive_possibly_ef(const Instance& inst, const DecideOptions& opts) {
  return verified(inst, exhaustive(inst, Sense::Possibly, opts), Sense::Possibly);
}

Decision exhaustive_certainly_ef(const Instance& inst, const DecideOptions& opts) {
  return verified(inst, exhaustive(inst, Sense::Certainly, opts), Sense::Certainly);
}

Decision decide_possibly_ef(const Instance& inst, const DecideOptions& opts) {
  switch (inst.model()) {
    case Model::Compact:
      return verified(inst, polynomial(exists_possibly_ef_compact(inst.compact())), Sense::Possibly);
    case Model::Joint:
      for (const auto& prof : inst.joint().profiles)
        if (auto w = exists_possibly_ef_compact(as_weak(prof.orders)))
          return verified(inst, polynomial(std::move(w)), Sense::Possibly);
      return polynomial(std::nullopt);
    case Model::Lottery:
    case Model::Pairwise:
      break;
  }
  return exhaustive_possibly_ef(inst, opts);
}

Decision decide_certainly_ef(const Instance& inst, const DecideOptions& opts) {
  if (inst.model() == Model::Compact)
    return verified(inst, polynomial(exists_certainly_ef_compact(inst.compact())), Sense::Certainly);
  return exhaustive_certainly_ef(inst, opts);
}

}  // namespace efalloc
