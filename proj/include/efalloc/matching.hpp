#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "efalloc/prob.hpp"

namespace efalloc {

using Vertex = std::uint32_t;

struct WeightedEdge {
  Vertex left;
  Vertex right;
  Prob weight;
};

/// Bipartite graph with strictly positive multiplicative edge weights.
/// Missing (left, right) pairs are forbidden assignments.
class WeightedBipartite {
 public:
  WeightedBipartite(std::size_t left_size, std::size_t right_size);

  /// Throws std::invalid_argument for out-of-range endpoints, a zero
  /// weight, or a repeated pair.
  void add_edge(Vertex left, Vertex right, Prob weight);

  std::size_t left_size() const { return left_size_; }
  std::size_t right_size() const { return right_size_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }
  /// nullptr when the pair is not an edge.
  const Prob* weight(Vertex left, Vertex right) const;

 private:
  std::size_t left_size_;
  std::size_t right_size_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::int32_t> index_;  // left * right_size + right -> edge, or -1
};

class UnweightedBipartite {
 public:
  UnweightedBipartite(std::size_t left_size, std::size_t right_size)
      : right_size_(right_size), adj_(left_size) {}

  /// Duplicate edges are ignored. Throws std::invalid_argument when out of range.
  void add_edge(Vertex left, Vertex right);

  std::size_t left_size() const { return adj_.size(); }
  std::size_t right_size() const { return right_size_; }
  /// Neighbours in ascending order.
  const std::vector<Vertex>& neighbours(Vertex left) const { return adj_[left]; }

  /// |N(subset)| for a set of left vertices.
  std::size_t neighbourhood_size(const std::vector<Vertex>& subset) const;

 private:
  std::size_t right_size_;
  std::vector<std::vector<Vertex>> adj_;
};

/// assignment[left] = matched right vertex.
struct Matching {
  std::vector<Vertex> assignment;
  friend bool operator==(const Matching&, const Matching&) = default;
};

/// A set Z of left vertices with |Z| > |N(Z)|, sorted ascending.
struct HallViolator {
  std::vector<Vertex> agents;
  friend bool operator==(const HallViolator&, const HallViolator&) = default;
};

using MatchOutcome = std::variant<Matching, HallViolator>;

struct ProductMatching {
  Matching matching;
  Prob product;
};

/// Left-perfect matching maximizing the product of edge weights, with the
/// exact product. Among optimal matchings returns the lexicographically
/// smallest assignment vector. std::nullopt if no left-perfect matching
/// exists.
///
/// Runs the Hungarian method in the multiplicative group of positive
/// rationals: reduced costs are quotients, potentials are scaled rather
/// than shifted, so no logarithms or floating point are involved.
std::optional<ProductMatching> max_product_perfect_matching(const WeightedBipartite& g);

/// Left-saturating matching if one exists, otherwise a minimal Hall violator.
MatchOutcome max_cardinality_matching(const UnweightedBipartite& g);

/// Inclusion-minimal Hall violator: grown by alternating reachability from
/// the smallest left vertex left exposed by a maximum matching. Throws
/// Error(NoViolator) if a left-saturating matching exists.
std::vector<Vertex> minimal_hall_violator(const UnweightedBipartite& g);

}  // namespace efalloc
