#pragma once

#include <optional>
#include <vector>

#include "sensornet/digraph.hpp"

namespace sensornet {

enum class NetworkMethod { mst, branching_union, brute_force };

const char* to_string(NetworkMethod method);

struct NetworkDesign {
  std::vector<Arc> selected_arcs;  // sorted, subset of the candidate network
  double total_cost = 0.0;         // each directed arc counted once
  NetworkMethod method = NetworkMethod::mst;
  std::optional<Index> root;
  double gap_bound = 0.0;          // 0 exact, 1 for the branching union
  std::optional<double> tree_cost; // mst only: each undirected edge counted once

  Digraph topology(Index node_count) const { return Digraph(node_count, selected_arcs); }
};

/// Prim's algorithm on a symmetric network. The tree is returned with both
/// directions of every edge, so total_cost = 2 * tree_cost.
/// Throws Error(precondition) for asymmetric networks and Error(infeasible)
/// with a separating cut if the network is disconnected.
NetworkDesign mst_solve(const WeightedDigraph& net);

/// Union of the minimum out- and in-branchings at `root`. Cost is at most
/// twice the optimal strongly connected spanning subgraph.
/// Throws Error(precondition) if the network is not strongly connected.
NetworkDesign msss_2approx(const WeightedDigraph& net, Index root);

/// msss_2approx at every root; the cheapest union wins, lowest root on ties.
NetworkDesign msss_best_root(const WeightedDigraph& net);

inline constexpr std::size_t kBruteForceArcLimit = 20;

/// Exact minimum-cost strongly connected spanning arc subset by branch and
/// bound over arc subsets. Ties go to the lexicographically smallest arc set.
/// Throws Error(guard) above kBruteForceArcLimit arcs, Error(infeasible) if
/// no strongly connected subset exists.
NetworkDesign brute_force_msss(const WeightedDigraph& net);

/// Exact minimum spanning tree of a symmetric network by enumerating edge
/// subsets; returned in the same directed form as mst_solve.
/// Throws Error(guard) above kBruteForceArcLimit undirected edges.
NetworkDesign brute_force_spanning_tree(const WeightedDigraph& net);

/// (heuristic - optimum) / optimum, with 0/0 taken as 0.
double approximation_gap(double heuristic_cost, double optimal_cost);

}  // namespace sensornet
