#pragma once

#include <vector>

#include "sensornet/digraph.hpp"

namespace sensornet {

enum class BranchingDirection {
  in,   // every node has a directed path to the root
  out,  // the root has a directed path to every node
};

enum class BranchingStrategy {
  automatic,  // dense when at least a quarter of all ordered pairs are arcs
  heap,       // mergeable heaps, O(E log V)
  dense,      // per-supernode rows, O(V^2)
};

struct Branching {
  std::vector<Arc> arcs;  // sorted
  double cost = 0.0;
};

/// Minimum-cost spanning branching rooted at `root` (Chu-Liu/Edmonds with
/// union-find contraction). Both strategies pick the cheapest entering arc by
/// (reduced cost, lexicographic arc order) and return the same arcs on
/// integer costs.
/// Throws Error(infeasible) naming a node that cannot reach / be reached from the root.
Branching min_branching(const WeightedDigraph& net, Index root, BranchingDirection direction,
                        BranchingStrategy strategy = BranchingStrategy::automatic);

}  // namespace sensornet
