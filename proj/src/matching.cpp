#include "efalloc/matching.hpp"

#include <algorithm>
#include <stdexcept>

#include "efalloc/error.hpp"

namespace efalloc {

WeightedBipartite::WeightedBipartite(std::size_t left_size, std::size_t right_size)
    : left_size_(left_size), right_size_(right_size), index_(left_size * right_size, -1) {}

void WeightedBipartite::add_edge(Vertex left, Vertex right, Prob weight) {
  if (left >= left_size_ || right >= right_size_) throw std::invalid_argument("edge endpoint out of range");
  if (weight.is_zero()) throw std::invalid_argument("edge weight must be positive");
  auto& slot = index_[left * right_size_ + right];
  if (slot >= 0) throw std::invalid_argument("duplicate edge");
  slot = static_cast<std::int32_t>(edges_.size());
  edges_.push_back({left, right, std::move(weight)});
}

const Prob* WeightedBipartite::weight(Vertex left, Vertex right) const {
  const auto slot = index_[left * right_size_ + right];
  return slot < 0 ? nullptr : &edges_[slot].weight;
}

void UnweightedBipartite::add_edge(Vertex left, Vertex right) {
  if (left >= adj_.size() || right >= right_size_) throw std::invalid_argument("edge endpoint out of range");
  auto& nb = adj_[left];
  auto it = std::lower_bound(nb.begin(), nb.end(), right);
  if (it == nb.end() || *it != right) nb.insert(it, right);
}

std::size_t UnweightedBipartite::neighbourhood_size(const std::vector<Vertex>& subset) const {
  std::vector<bool> hit(right_size_, false);
  std::size_t count = 0;
  for (Vertex l : subset)
    for (Vertex r : adj_[l])
      if (!hit[r]) {
        hit[r] = true;
        ++count;
      }
  return count;
}

namespace {

constexpr Vertex kFree = static_cast<Vertex>(-1);

// Square cost matrix for the multiplicative Hungarian method; 1-indexed to
// keep the virtual column 0 of the classic formulation.
struct CostMatrix {
  std::size_t n;
  std::vector<std::optional<Prob>> cost;  // (n+1) x (n+1)
  const std::optional<Prob>& at(std::size_t i, std::size_t j) const { return cost[i * (n + 1) + j]; }
  std::optional<Prob>& at(std::size_t i, std::size_t j) { return cost[i * (n + 1) + j]; }
};

struct Duals {
  std::vector<Prob> row;
  std::vector<Prob> col;
  std::vector<std::size_t> row_of_col;  // p[j]: row matched to column j
};

// Minimizes the product of costs over perfect matchings. Costs must be
// >= 1 so the all-ones potentials start feasible.
std::optional<Duals> hungarian_product(const CostMatrix& c) {
  const std::size_t n = c.n;
  Duals d{std::vector<Prob>(n + 1, Prob::one()), std::vector<Prob>(n + 1, Prob::one()),
          std::vector<std::size_t>(n + 1, 0)};
  auto& u = d.row;
  auto& v = d.col;
  auto& p = d.row_of_col;
  std::vector<std::size_t> way(n + 1, 0);
  std::vector<Prob> minv(n + 1);
  std::vector<bool> finite(n + 1);
  std::vector<bool> used(n + 1);

  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(finite.begin(), finite.end(), false);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      const Prob* delta = nullptr;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        if (const auto& cij = c.at(i0, j)) {
          Prob reduced = *cij / (u[i0] * v[j]);
          if (!finite[j] || reduced < minv[j]) {
            minv[j] = std::move(reduced);
            finite[j] = true;
            way[j] = j0;
          }
        }
        if (finite[j] && (delta == nullptr || minv[j] < *delta)) {
          delta = &minv[j];
          j1 = j;
        }
      }
      // The tree's rows see only tree columns: Hall's condition fails.
      if (delta == nullptr) return std::nullopt;
      const Prob step = *delta;
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] *= step;
          v[j] /= step;
        } else if (finite[j]) {
          minv[j] /= step;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  return d;
}

// Rewrites `match` (row -> column, 0-indexed) into the lexicographically
// smallest perfect matching of the tight subgraph. Every perfect matching
// of the tight subgraph is optimal, so this only changes tie-breaking.
void lexicographic_tight(const std::vector<std::vector<Vertex>>& tight, std::vector<Vertex>& match) {
  const std::size_t n = match.size();
  std::vector<Vertex> row_of(n);
  for (Vertex r = 0; r < n; ++r) row_of[match[r]] = r;
  std::vector<bool> col_fixed(n, false);
  std::vector<bool> seen(n);

  // Alternating search from `row` to the single free column `target`,
  // through unfixed rows and columns only.
  auto augment = [&](auto&& self, Vertex row, Vertex target) -> bool {
    for (Vertex c : tight[row]) {
      if (col_fixed[c] || seen[c]) continue;
      seen[c] = true;
      if (c == target || self(self, row_of[c], target)) {
        match[row] = c;
        row_of[c] = row;
        return true;
      }
    }
    return false;
  };

  for (Vertex i = 0; i < n; ++i) {
    for (Vertex h : tight[i]) {
      if (col_fixed[h]) continue;
      if (match[i] == h) break;
      const Vertex freed = match[i];
      const Vertex displaced = row_of[h];
      const auto saved_match = match;
      const auto saved_row_of = row_of;
      match[i] = h;
      row_of[h] = i;
      col_fixed[h] = true;  // provisional: keeps the search off h
      std::fill(seen.begin(), seen.end(), false);
      if (augment(augment, displaced, freed)) break;
      col_fixed[h] = false;
      match = saved_match;
      row_of = saved_row_of;
    }
    col_fixed[match[i]] = true;
  }
}

}  // namespace

std::optional<ProductMatching> max_product_perfect_matching(const WeightedBipartite& g) {
  const std::size_t n_left = g.left_size();
  const std::size_t n_right = g.right_size();
  if (n_left > n_right) return std::nullopt;
  if (n_left == 0) return ProductMatching{Matching{}, Prob::one()};

  Prob wmax;
  for (const auto& e : g.edges())
    if (e.weight > wmax) wmax = e.weight;
  if (wmax.is_zero()) return std::nullopt;

  // Pad with free rows (cost 1 everywhere) to a square problem. Padding rows
  // come last, so they cannot affect the lexicographic order of real rows.
  const std::size_t n = n_right;
  CostMatrix c{n, std::vector<std::optional<Prob>>((n + 1) * (n + 1))};
  for (const auto& e : g.edges()) c.at(e.left + 1, e.right + 1) = wmax / e.weight;
  for (std::size_t i = n_left + 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) c.at(i, j) = Prob::one();

  auto duals = hungarian_product(c);
  if (!duals) return std::nullopt;

  std::vector<Vertex> match(n, kFree);
  for (std::size_t j = 1; j <= n; ++j) match[duals->row_of_col[j] - 1] = static_cast<Vertex>(j - 1);

  std::vector<std::vector<Vertex>> tight(n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (const auto& cij = c.at(i, j); cij && *cij == duals->row[i] * duals->col[j])
        tight[i - 1].push_back(static_cast<Vertex>(j - 1));
  lexicographic_tight(tight, match);

  ProductMatching result;
  result.product = Prob::one();
  result.matching.assignment.assign(match.begin(), match.begin() + static_cast<std::ptrdiff_t>(n_left));
  for (Vertex l = 0; l < n_left; ++l) result.product *= *g.weight(l, match[l]);
  return result;
}

namespace {

struct MaxMatching {
  std::vector<Vertex> right_of;  // per left, kFree if exposed
  std::vector<Vertex> left_of;   // per right
};

MaxMatching kuhn(const UnweightedBipartite& g) {
  MaxMatching mm{std::vector<Vertex>(g.left_size(), kFree), std::vector<Vertex>(g.right_size(), kFree)};
  std::vector<bool> seen(g.right_size());
  auto try_augment = [&](auto&& self, Vertex l) -> bool {
    for (Vertex r : g.neighbours(l)) {
      if (seen[r]) continue;
      seen[r] = true;
      if (mm.left_of[r] == kFree || self(self, mm.left_of[r])) {
        mm.left_of[r] = l;
        mm.right_of[l] = r;
        return true;
      }
    }
    return false;
  };
  for (Vertex l = 0; l < g.left_size(); ++l) {
    std::fill(seen.begin(), seen.end(), false);
    try_augment(try_augment, l);
  }
  return mm;
}

// Alternating tree from an exposed left vertex of a maximum matching. Every
// reached column is matched (else the matching would augment), so the tree
// has exactly one more row than columns. Any proper subset Z' keeps the
// matched column of some dropped row whose tree parent it retains, so Z' has
// at least |Z'| neighbours: the tree is an inclusion-minimal violator.
std::vector<Vertex> violator_from(const UnweightedBipartite& g, const MaxMatching& mm, Vertex root) {
  std::vector<bool> row_in(g.left_size(), false);
  std::vector<bool> col_in(g.right_size(), false);
  std::vector<Vertex> stack{root};
  row_in[root] = true;
  while (!stack.empty()) {
    const Vertex l = stack.back();
    stack.pop_back();
    for (Vertex r : g.neighbours(l)) {
      if (col_in[r]) continue;
      col_in[r] = true;
      const Vertex next = mm.left_of[r];
      if (next != kFree && !row_in[next]) {
        row_in[next] = true;
        stack.push_back(next);
      }
    }
  }
  std::vector<Vertex> z;
  for (Vertex l = 0; l < g.left_size(); ++l)
    if (row_in[l]) z.push_back(l);
  return z;
}

}  // namespace

MatchOutcome max_cardinality_matching(const UnweightedBipartite& g) {
  const MaxMatching mm = kuhn(g);
  for (Vertex l = 0; l < g.left_size(); ++l)
    if (mm.right_of[l] == kFree) return HallViolator{violator_from(g, mm, l)};
  return Matching{mm.right_of};
}

std::vector<Vertex> minimal_hall_violator(const UnweightedBipartite& g) {
  auto outcome = max_cardinality_matching(g);
  if (auto* z = std::get_if<HallViolator>(&outcome)) return std::move(z->agents);
  throw Error(ErrorKind::NoViolator, "graph has a left-saturating matching");
}

}  // namespace efalloc
