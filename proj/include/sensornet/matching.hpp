#pragma once

#include <optional>
#include <vector>

#include "sensornet/structured_matrix.hpp"

namespace sensornet {

/// Maximum cardinality matching in a bipartite graph (Hopcroft-Karp).
/// `adjacency[left]` lists the right vertices adjacent to `left`.
struct BipartiteMatching {
  std::vector<std::optional<Index>> right_of_left;
  std::vector<std::optional<Index>> left_of_right;
  std::size_t size = 0;
};

BipartiteMatching maximum_matching(const std::vector<std::vector<Index>>& adjacency,
                                   Index right_count);

/// A set of left vertices whose joint neighbourhood is smaller than the set,
/// or nullopt if every left vertex can be matched.
std::optional<std::vector<Index>> hall_violator(const std::vector<std::vector<Index>>& adjacency,
                                                Index right_count);

/// True iff the rows x cols bipartite graph of the nonzeros has a perfect
/// matching, i.e. a family of disjoint cycles spans every state node.
/// Throws Error(shape) for non-square patterns.
bool is_structurally_full_rank(const StructuredMatrix& pattern);

}  // namespace sensornet
