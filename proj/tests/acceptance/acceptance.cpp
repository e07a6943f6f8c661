// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if
// any criterion fails or runs over its time budget.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "efalloc/compact.hpp"
#include "efalloc/deciders.hpp"
#include "efalloc/efprob.hpp"
#include "efalloc/gen.hpp"
#include "efalloc/solvers.hpp"
#include "io.hpp"
#include "oracles.hpp"

using namespace efalloc;

namespace {

// Collects the first few mismatches of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (++failures_ <= 3) notes_ += (notes_.empty() ? "" : "; ") + what;
  }
  bool ok() const { return failures_ == 0; }
  std::string summary() const {
    return failures_ == 0 ? "" : std::to_string(failures_) + " violation(s): " + notes_;
  }

 private:
  int failures_ = 0;
  std::string notes_;
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Check&, std::string&)> body;
};

// Sizes drawn from the seed; n in [1, max_n], m in [n, max(n, max_m)].
Instance random_instance(Model model, std::uint64_t seed, std::size_t max_n, std::size_t max_m,
                         std::size_t max_support) {
  std::mt19937_64 rng(seed * 104729 + 7);
  RandomParams p;
  p.model = model;
  p.agents = std::uniform_int_distribution<std::size_t>(1, max_n)(rng);
  p.houses = std::uniform_int_distribution<std::size_t>(p.agents, std::max(p.agents, max_m))(rng);
  p.support = std::min<std::uint64_t>(std::uniform_int_distribution<std::size_t>(1, max_support)(rng),
                                      falling_factorial(p.houses, p.houses));
  p.tie_percent = std::uniform_int_distribution<unsigned>(0, 90)(rng);
  p.pairwise_grid = std::uniform_int_distribution<std::uint32_t>(1, 4)(rng);
  p.seed = seed;
  return gen_random(p);
}

std::string str(const mpq_class& q) { return q.get_str(); }

void gadget_values(Check& c, std::string& info) {
  const auto single = gen_single_penalty_shell();
  Allocation w{std::vector<HouseId>(single.instance.num_agents())};
  w.assigned[single.holder] = single.t;
  single.gadget.assign(w, false);
  const Prob free = ef_prob(single.instance, w);
  w.assigned[single.holder] = single.f;
  single.gadget.assign(w, true);
  const Prob penalized = ef_prob(single.instance, w);
  c.expect(free == Prob::one(), "single gadget untouched gives " + free.str());
  c.expect(penalized / free == Prob(1, 4), "single factor " + (penalized / free).str());

  const auto dbl = gen_double_penalty_shell();
  Prob factors[4];
  for (int mask = 0; mask < 4; ++mask) {
    Allocation v{std::vector<HouseId>(dbl.instance.num_agents())};
    for (int k = 0; k < 2; ++k) v.assigned[dbl.holders[k]] = (mask >> k & 1) ? dbl.targets[k] : dbl.spares[k];
    dbl.gadget.assign(v, mask != 0);
    factors[mask] = ef_prob(dbl.instance, v);
  }
  c.expect(factors[0] == Prob::one(), "double gadget untouched gives " + factors[0].str());
  for (int mask = 1; mask < 4; ++mask)
    c.expect(factors[mask] == Prob(1, 256), "double factor " + factors[mask].str());
  info = "single " + penalized.str() + ", double " + factors[1].str() + "/" + factors[2].str() + "/" +
         factors[3].str();
}

void lemma8(Check& c, std::string& info) {
  std::size_t weak_ef = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Instance inst = random_instance(Model::Compact, seed, 5, 6, 1);
    for (const auto& w : oracle::all_allocations(inst.num_agents(), inst.num_houses())) {
      const Prob p = ef_prob(inst, w);
      const auto a = envy_matrix_of(inst.compact(), w);
      if (!a) {
        c.expect(p.is_zero(), "seed " + std::to_string(seed) + ": envious allocation has " + p.str());
        continue;
      }
      ++weak_ef;
      c.expect(matrix_ef_prob(*a) == p, "seed " + std::to_string(seed) + ": row sums vs " + p.str());
      for (std::uint64_t inv : {1, 2, 4})
        if (p >= Prob(1, inv))
          c.expect(a->off_diagonal_ones() <= inv, "seed " + std::to_string(seed) + ": too many ones for 1/" +
                                                      std::to_string(inv));
    }
  }
  info = std::to_string(weak_ef) + " weak-EF allocations";
}

void oracle_equivalence(Check& c, std::string& info) {
  std::size_t positive = 0;
  for (auto model : {Model::Lottery, Model::Compact, Model::Pairwise})
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Instance inst = random_instance(model, 10'000 + seed, 5, 7, 4);
      const auto fast = solve_max_prob_ef_enumerate(inst);
      const auto brute = brute_force_max_prob_ef(inst);
      c.expect(fast.prob == brute.prob, std::string(to_string(model)) + " seed " + std::to_string(seed) + ": " +
                                            fast.prob.str() + " vs " + brute.prob.str());
      c.expect(fast == brute, std::string(to_string(model)) + " seed " + std::to_string(seed) + ": tie-break differs");
      positive += !fast.zero_probability;
    }
  info = "600 instances, " + std::to_string(positive) + " with OPT > 0";
}

void dichotomy(Check& c, std::string& info) {
  std::size_t optimal = 0, certified = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = random_instance(Model::Compact, 20'000 + seed, 6, 6, 1);
    const auto opt = oracle::optimum(inst);
    for (const Prob& eps : {Prob::one(), Prob(1, 2), Prob(1, 4)}) {
      const auto r = max_prob_ef_compact(inst.compact(), eps);
      const std::string where = "seed " + std::to_string(seed) + " eps " + eps.str();
      if (const auto* got = std::get_if<CompactOptimal>(&r)) {
        ++optimal;
        c.expect(opt.value >= eps.value(), where + ": answer although OPT = " + str(opt.value));
        c.expect(got->prob.value() == opt.value, where + ": " + got->prob.str() + " vs OPT " + str(opt.value));
        c.expect(ef_prob(inst, got->allocation) == got->prob, where + ": reported prob is not the allocation's");
      } else {
        ++certified;
        c.expect(opt.value < eps.value(), where + ": certificate although OPT = " + str(opt.value));
      }
    }
  }
  info = std::to_string(optimal) + " optima, " + std::to_string(certified) + " certificates";
}

void deciders(Check& c, std::string& info) {
  std::size_t yes_possible = 0, yes_certain = 0;
  for (auto model : {Model::Lottery, Model::Compact, Model::Joint, Model::Pairwise})
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Instance inst = random_instance(model, 30'000 + seed, 5, 6, 3);
      const std::string where = std::string(to_string(model)) + " seed " + std::to_string(seed);
      const Prob opt = brute_force_max_prob_ef(inst).prob;
      const Decision ep = exhaustive_possibly_ef(inst), ec = exhaustive_certainly_ef(inst);
      const Decision dp = decide_possibly_ef(inst), dc = decide_certainly_ef(inst);
      c.expect(ep.answer == !opt.is_zero(), where + ": exhaustive possible vs OPT " + opt.str());
      c.expect(ec.answer == opt.is_one(), where + ": exhaustive certain vs OPT " + opt.str());
      c.expect(dp.answer == ep.answer, where + ": possible deciders disagree");
      c.expect(dc.answer == ec.answer, where + ": certain deciders disagree");
      for (const Decision* d : {&ep, &ec, &dp, &dc})
        if (d->answer) {
          const Prob p = ef_prob(inst, *d->witness);
          c.expect((d == &ec || d == &dc) ? p.is_one() : !p.is_zero(), where + ": bad witness");
        }
      yes_possible += ep.answer;
      yes_certain += ec.answer;
    }
  info = "800 instances, " + std::to_string(yes_possible) + " possibly / " + std::to_string(yes_certain) +
         " certainly EF";
}

void reductions(Check& c, std::string& info) {
  // (a) R3XC
  const R3xcInput toy{3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}};
  const R3xcInput no{6, {{0, 1, 2}, {0, 1, 3}, {0, 4, 5}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}}};
  c.expect(oracle::has_exact_cover(toy) && !oracle::has_exact_cover(no), "R3XC inputs mislabeled");
  c.expect(exhaustive_certainly_ef(gen_r3xc_reduction(toy)).answer, "toy R3XC instance not certainly EF");
  c.expect(!exhaustive_certainly_ef(gen_r3xc_reduction(no)).answer, "no-instance R3XC is certainly EF");

  // (b) lottery -> joint gap
  std::size_t certain_sources = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance lot = random_instance(Model::Lottery, 40'000 + seed, 3, 4, 3);
    const bool certain = oracle::optimum(lot).value == 1;
    certain_sources += certain;
    const mpq_class joint_opt = oracle::optimum(gen_lottery_to_joint(lot)).value;
    const std::string where = "lottery seed " + std::to_string(seed);
    if (certain) c.expect(joint_opt == 1, where + ": joint OPT " + str(joint_opt));
    else c.expect(joint_opt <= mpq_class(5, 6), where + ": joint OPT " + str(joint_opt) + " above 5/6");
  }

  // (c) pairwise reductions
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance lot = random_instance(Model::Lottery, 50'000 + seed, 3, 4, 3);
    const bool source = oracle::optimum(lot).value == 1;
    c.expect(exhaustive_certainly_ef(gen_lottery_to_pairwise(lot)).answer == source,
             "lottery->pairwise seed " + std::to_string(seed));
  }
  std::mt19937_64 rng(8);
  std::size_t graphs = 0;
  for (int trial = 0; trial < 40; ++trial) {
    Graph g{static_cast<std::size_t>(2 + trial % 4), {}};
    for (std::uint32_t u = 0; u < g.vertices; ++u)
      for (std::uint32_t v = u + 1; v < g.vertices; ++v)
        if (rng() % 2) g.edges.emplace_back(u, v);
    ++graphs;
    for (std::size_t k = 1; k <= g.vertices; ++k)
      c.expect(exhaustive_possibly_ef(gen_is_pairwise_reduction(g, k)).answer == oracle::has_independent_set(g, k),
               "IS->pairwise trial " + std::to_string(trial) + " k " + std::to_string(k));
  }
  info = "R3XC yes/no, 50 lottery->joint (" + std::to_string(certain_sources) +
         " certain), 50 lottery->pairwise, " + std::to_string(graphs) + " graphs";
}

void claim_two(Check& c, std::string& info) {
  const Graph g{2, {{0, 1}}};
  const auto red = gen_independent_set_reduction(g, 2, {1, 1, 1});
  const std::uint64_t v = 2, e = 1, alpha = 1;
  c.expect(red.instance.num_agents() == 2 + v + 2 * v * alpha + 12 * v * e * alpha, "agent count");
  c.expect(red.instance.num_houses() == 2 + 2 * v + 4 * v * alpha + 24 * v * e * alpha, "house count");
  c.expect(red.instance.num_agents() == 32 && red.instance.num_houses() == 62,
           "counts " + std::to_string(red.instance.num_agents()) + "/" + std::to_string(red.instance.num_houses()));
  const std::vector<std::vector<bool>> picks{{false, false}, {true, false}, {true, true}};
  const std::uint64_t ells[] = {0, 1, 2}, os[] = {0, 0, 1};
  for (int k = 0; k < 3; ++k) {
    const Prob expected = pow(Prob(1, 256), static_cast<unsigned>(2 * e * v * alpha + os[k] * v * alpha)) *
                          pow(Prob(1, 4), static_cast<unsigned>((v - ells[k]) * alpha));
    const Prob got = ef_prob(red.instance, red.allocation_for(picks[k]));
    c.expect(got == expected, "(l, o) = (" + std::to_string(ells[k]) + ", " + std::to_string(os[k]) + "): " +
                                  got.str() + " vs " + expected.str());
  }
  info = "n = " + std::to_string(red.instance.num_agents()) + ", m = " + std::to_string(red.instance.num_houses());
}

void performance(Check& c, std::string& info) {
  namespace fs = std::filesystem;
  const fs::path path = fs::temp_directory_path() / ("efalloc_accept_" + std::to_string(::getpid()) + ".json");
  // Default ties usually leave OPT = 0; two coarse classes force every
  // subset through full rational matchings.
  const std::vector<std::vector<std::size_t>> shapes = {{}, {16, 16}};
  for (const auto& shape : shapes) {
    RandomParams p;
    p.model = Model::Compact;
    p.agents = 30;
    p.houses = 32;
    p.seed = 2024;
    p.class_sizes = shape;
    io::write_text(path, io::dump_instance(gen_random(p)));

    cli::RunOptions opts;
    opts.timing = false;
    const auto t0 = std::chrono::steady_clock::now();
    const std::string one = cli::cmd_solve(path.string(), "enumerate", std::nullopt, opts).dump();
    const double serial_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    opts.threads = 4;
    const auto t1 = std::chrono::steady_clock::now();
    const std::string four = cli::cmd_solve(path.string(), "enumerate", std::nullopt, opts).dump();
    const double parallel_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    fs::remove(path);

    const std::string label = shape.empty() ? "default ties" : "two classes";
    c.expect(serial_s < 60.0, label + ": single-threaded run took " + std::to_string(serial_s) + " s");
    // The parameters block records the thread count; everything else must match.
    auto strip = [](std::string s) {
      const auto at = s.find("\"threads\":");
      return s.erase(at, s.find(',', at) - at);
    };
    c.expect(strip(one) == strip(four), label + ": 4-thread output differs");
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s: 1 thread %.2f s, 4 threads %.2f s, ", label.c_str(), serial_s, parallel_s);
    const auto prob_at = one.find("\"prob\":");
    const std::string prob = one.substr(prob_at, one.find(',', prob_at) - prob_at);
    info += (info.empty() ? "" : "; ") + (buf + (prob.size() > 32 ? prob.substr(0, 29) + "...\"" : prob));
  }
}

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "gadget values 1/4 and 1/256", 1, gadget_values},
      {2, "envy-matrix product and ones bound", 60, lemma8},
      {3, "enumeration equals brute force", 300, oracle_equivalence},
      {4, "epsilon dichotomy against oracle OPT", 300, dichotomy},
      {5, "decider agreement", 300, deciders},
      {6, "reduction validation", 600, reductions},
      {7, "independent-set counts and closed form", 60, claim_two},
      {8, "n=30 m=32 enumeration time and thread determinism", 600, performance},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check check;
    std::string info;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check, info);
    } catch (const std::exception& e) {
      check.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    check.expect(secs < cr.budget_s, "over the " + std::to_string(static_cast<int>(cr.budget_s)) + " s budget");
    const bool pass = check.ok();
    failed += !pass;
    std::printf("[%s] criterion %d: %s (%.2f s) %s\n", pass ? "PASS" : "FAIL", cr.id, cr.title, secs,
                pass ? info.c_str() : check.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
