#include "efalloc/compact.hpp"

#include <algorithm>
#include <stdexcept>

#include "efalloc/matching.hpp"

namespace efalloc {

EnvyMatrix EnvyMatrix::all_ones(std::size_t n) {
  EnvyMatrix a(n);
  std::fill(a.a_.begin(), a.a_.end(), 1);
  return a;
}

void EnvyMatrix::set(std::size_t i, std::size_t j, bool value) {
  if (i == j && !value) throw std::invalid_argument("envy matrix diagonal must stay 1");
  a_[i * n_ + j] = value ? 1 : 0;
}

std::size_t EnvyMatrix::row_sum(std::size_t i) const {
  std::size_t s = 0;
  for (std::size_t j = 0; j < n_; ++j) s += a_[i * n_ + j];
  return s;
}

std::size_t EnvyMatrix::off_diagonal_ones() const {
  std::size_t total = 0;
  for (auto x : a_) total += x;
  return total - n_;
}

bool EnvyMatrix::dominated_by(const EnvyMatrix& b) const {
  for (std::size_t k = 0; k < a_.size(); ++k)
    if (a_[k] > b.a_[k]) return false;
  return true;
}

std::optional<EnvyMatrix> envy_matrix_of(const CompactPrefs& prefs, const Allocation& w) {
  const std::size_t n = w.size();
  EnvyMatrix a(n);
  for (AgentId i = 0; i < n; ++i) {
    const WeakOrder& order = prefs.agents[i];
    for (AgentId j = 0; j < n; ++j) {
      if (i == j) continue;
      if (order.strictly_prefers(w[j], w[i])) return std::nullopt;
      a.set(i, j, order.indifferent(w[i], w[j]));
    }
  }
  return a;
}

Prob matrix_ef_prob(const EnvyMatrix& a) {
  // Multiply the integer row sums first; one reduction at the end.
  mpz_class den = 1;
  for (std::size_t i = 0; i < a.size(); ++i) den *= static_cast<unsigned long>(a.row_sum(i));
  return Prob(mpq_class(1, den));
}

std::optional<Allocation> alloc_satisfying_envy_matrix(const CompactPrefs& prefs, const EnvyMatrix& a) {
  const std::size_t n = prefs.agents.size();
  if (n == 0) return Allocation{};
  const std::size_t m = prefs.agents.front().num_houses();
  if (a.size() != n) throw Error(ErrorKind::InvalidParams, "envy matrix size differs from the agent count");

  std::vector<bool> live(m, true);
  std::size_t live_count = m;
  std::vector<std::vector<HouseId>> tops(n);
  std::vector<std::vector<AgentId>> top_for(m);  // agents whose favourites include h

  while (live_count >= n) {
    for (auto& v : top_for) v.clear();
    for (AgentId i = 0; i < n; ++i) {
      tops[i].clear();
      for (const auto& cls : prefs.agents[i].classes()) {
        for (HouseId h : cls)
          if (live[h]) tops[i].push_back(h);
        if (!tops[i].empty()) break;
      }
      for (HouseId h : tops[i]) top_for[h].push_back(i);
    }

    UnweightedBipartite g(n, m);
    for (AgentId i = 0; i < n; ++i)
      for (HouseId h : tops[i]) {
        const bool blocked = std::any_of(top_for[h].begin(), top_for[h].end(),
                                         [&](AgentId j) { return j != i && !a.at(j, i); });
        if (!blocked) g.add_edge(i, h);
      }

    auto outcome = max_cardinality_matching(g);
    if (auto* mt = std::get_if<Matching>(&outcome)) return Allocation{std::move(mt->assignment)};

    for (Vertex i : std::get<HallViolator>(outcome).agents)
      for (HouseId h : tops[i])
        if (live[h]) {
          live[h] = false;
          --live_count;
        }
  }
  return std::nullopt;
}

namespace {

std::uint64_t floor_inverse(const Prob& epsilon) {
  if (epsilon.is_zero() || !epsilon.is_probability())
    throw Error(ErrorKind::InvalidParams, "epsilon must satisfy 0 < epsilon <= 1, got " + epsilon.str());
  mpz_class q = epsilon.denominator() / epsilon.numerator();
  return q.get_ui();
}

struct MatrixSpace {
  std::size_t n;
  std::uint64_t max_ones;
  std::uint32_t cells;                    // n^2 - n off-diagonal cells
  std::vector<std::uint64_t> layer_start;  // first global rank with t ones
  std::uint64_t total;

  MatrixSpace(std::size_t agents, const Prob& epsilon)
      : n(agents), max_ones(floor_inverse(epsilon)), cells(static_cast<std::uint32_t>(agents * agents - agents)) {
    max_ones = std::min<std::uint64_t>(max_ones, cells);
    total = 0;
    for (std::uint64_t t = 0; t <= max_ones; ++t) {
      layer_start.push_back(total);
      const auto c = binomial(cells, t);
      total = (total > UINT64_MAX - c) ? UINT64_MAX : total + c;
    }
  }

  EnvyMatrix build(const std::vector<std::uint32_t>& chosen) const {
    EnvyMatrix a(n);
    for (auto cell : chosen) {
      const std::size_t i = cell / (n - 1);
      std::size_t j = cell % (n - 1);
      if (j >= i) ++j;  // skip the diagonal
      a.set(i, j, true);
    }
    return a;
  }
};

struct Candidate {
  Allocation allocation;
  Prob prob;
};

bool better(const Candidate& a, const Candidate& b) {
  if (a.prob != b.prob) return a.prob > b.prob;
  return a.allocation < b.allocation;
}

void offer(std::optional<Candidate>& best, Candidate c) {
  if (!best || better(c, *best)) best = std::move(c);
}

// Candidates from global ranks [begin, end): layers by number of ones, each
// layer in lexicographic order of the chosen cells.
std::optional<Candidate> best_in_matrix_range(const CompactPrefs& prefs, const Prob& epsilon, const MatrixSpace& space,
                                              std::uint64_t begin, std::uint64_t end) {
  std::optional<Candidate> best;
  std::uint64_t rank = begin;
  while (rank < end) {
    const auto t = static_cast<std::uint32_t>(
        std::upper_bound(space.layer_start.begin(), space.layer_start.end(), rank) - space.layer_start.begin() - 1);
    const std::uint64_t layer_end =
        (t + 1 < space.layer_start.size()) ? space.layer_start[t + 1] : space.total;
    auto chosen = unrank_combination(space.cells, t, rank - space.layer_start[t]);
    const std::uint64_t stop = std::min(end, layer_end);
    for (; rank < stop; ++rank) {
      const EnvyMatrix a = space.build(chosen);
      if (matrix_ef_prob(a) >= epsilon) {
        if (auto w = alloc_satisfying_envy_matrix(prefs, a)) {
          // A satisfying allocation is weak-EF, so its own envy matrix exists.
          Prob p = matrix_ef_prob(*envy_matrix_of(prefs, *w));
          offer(best, Candidate{std::move(*w), std::move(p)});
        }
      }
      if (rank + 1 < stop) next_combination(chosen, space.cells);
    }
  }
  return best;
}

MatrixSpace checked_space(const CompactPrefs& prefs, const Prob& epsilon, std::uint64_t cap) {
  MatrixSpace space(prefs.agents.size(), epsilon);
  if (space.total > cap)
    throw Error(ErrorKind::MatrixEnumerationCapExceeded,
                std::to_string(space.total) + " envy matrices exceed the cap of " + std::to_string(cap));
  return space;
}

CompactSolveResult finish(std::optional<Candidate> best, const Prob& epsilon) {
  if (!best) return BelowEpsilon{epsilon};
  return CompactOptimal{std::move(best->allocation), std::move(best->prob)};
}

}  // namespace

std::uint64_t envy_matrix_count(std::size_t n, const Prob& epsilon) { return MatrixSpace(n, epsilon).total; }

CompactSolveResult max_prob_ef_compact_serial(const CompactPrefs& prefs, const Prob& epsilon, std::uint64_t cap) {
  const MatrixSpace space = checked_space(prefs, epsilon, cap);
  return finish(best_in_matrix_range(prefs, epsilon, space, 0, space.total), epsilon);
}

CompactSolveResult max_prob_ef_compact_parallel(const CompactPrefs& prefs, const Prob& epsilon, int threads,
                                                std::uint64_t cap) {
  const MatrixSpace space = checked_space(prefs, epsilon, cap);
  constexpr std::uint64_t kBlock = 256;
  const std::uint64_t blocks = (space.total + kBlock - 1) / kBlock;
  std::vector<std::optional<Candidate>> partial(blocks);

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(blocks); ++b) {
    const auto begin = static_cast<std::uint64_t>(b) * kBlock;
    partial[b] = best_in_matrix_range(prefs, epsilon, space, begin, std::min(space.total, begin + kBlock));
  }

  std::optional<Candidate> best;
  for (auto& c : partial)
    if (c) offer(best, std::move(*c));
  return finish(std::move(best), epsilon);
}

CompactSolveResult max_prob_ef_compact(const CompactPrefs& prefs, const Prob& epsilon,
                                       const CompactSolveOptions& opts) {
  if (opts.exec.threads <= 1) return max_prob_ef_compact_serial(prefs, epsilon, opts.cap);
  return max_prob_ef_compact_parallel(prefs, epsilon, opts.exec.threads, opts.cap);
}

std::optional<Allocation> exists_certainly_ef_compact(const CompactPrefs& prefs) {
  return alloc_satisfying_envy_matrix(prefs, EnvyMatrix::identity(prefs.agents.size()));
}

std::optional<Allocation> exists_possibly_ef_compact(const CompactPrefs& prefs) {
  return alloc_satisfying_envy_matrix(prefs, EnvyMatrix::all_ones(prefs.agents.size()));
}

}  // namespace efalloc
