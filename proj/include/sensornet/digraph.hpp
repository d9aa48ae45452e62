#pragma once

#include <vector>

#include "sensornet/structured_matrix.hpp"

namespace sensornet {

using Arc = std::pair<Index, Index>;  // (from, to)

/// Unweighted digraph with sorted, unique edges and cached out-adjacency.
class Digraph {
 public:
  Digraph() = default;
  Digraph(Index node_count, std::vector<Arc> edges);

  Index node_count() const noexcept { return node_count_; }
  const std::vector<Arc>& edges() const noexcept { return edges_; }
  const std::vector<Index>& successors(Index node) const { return out_[node]; }

  bool has_edge(Index from, Index to) const;
  Digraph reversed() const;

 private:
  Index node_count_ = 0;
  std::vector<Arc> edges_;
  std::vector<std::vector<Index>> out_;
};

/// State digraph of a square pattern: a nonzero (i, j) becomes the edge j -> i.
/// Throws Error(shape) for non-square patterns.
Digraph digraph_from_pattern(const StructuredMatrix& pattern);

/// Inverse of digraph_from_pattern.
StructuredMatrix pattern_from_digraph(const Digraph& graph);

using CostedArc = std::pair<Arc, double>;

/// Digraph whose arcs carry nonnegative finite costs. An absent arc is a
/// forbidden link. Arcs are kept in one vector sorted by (from, to).
class WeightedDigraph {
 public:
  WeightedDigraph() = default;
  explicit WeightedDigraph(Index node_count) : node_count_(node_count) {}
  /// Throws Error(validation) on bad endpoints, self-arcs, invalid costs, or
  /// a repeated arc.
  WeightedDigraph(Index node_count, std::vector<CostedArc> arcs);

  Index node_count() const noexcept { return node_count_; }
  const std::vector<CostedArc>& arcs() const noexcept { return arcs_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }

  bool has_arc(Index from, Index to) const { return find(from, to) != nullptr; }
  double cost(Index from, Index to) const;
  /// Cost of the arc, or nullptr if absent.
  const double* find(Index from, Index to) const;

  /// Inserts or overwrites. Appending in sorted order is O(1).
  void set_arc(Index from, Index to, double cost);

  /// True if every arc has an equal-cost reverse arc.
  bool symmetric() const;
  Digraph topology() const;
  WeightedDigraph reversed() const;

  friend bool operator==(const WeightedDigraph&, const WeightedDigraph&) = default;

 private:
  Index node_count_ = 0;
  std::vector<CostedArc> arcs_;
};

/// Sum of arc costs over `arcs`, each counted once.
double arc_set_cost(const WeightedDigraph& net, const std::vector<Arc>& arcs);

}  // namespace sensornet
