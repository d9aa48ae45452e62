#pragma once

#include <string>
#include <vector>

#include "sensornet/digraph.hpp"

namespace sensornet {

enum class SccKind { parent, child };

/// Strongly connected components of a digraph and their condensation.
///
/// Components are ordered by their smallest member and each member list is
/// sorted, so the partition of a given graph is unique. A component is a
/// parent when it has no outgoing edge in the condensation.
struct SccPartition {
  std::vector<std::vector<Index>> components;
  std::vector<SccKind> kinds;
  std::vector<Index> component_of;  // node -> component
  std::vector<Arc> condensation;    // sorted, unique arcs between components

  std::size_t size() const noexcept { return components.size(); }
  bool is_parent(Index component) const { return kinds[component] == SccKind::parent; }
  /// Parent components in component order.
  std::vector<Index> parents() const;
  std::string to_json() const;
};

/// Iterative Tarjan decomposition.
SccPartition scc_decompose(const Digraph& graph);

bool is_strongly_connected(const Digraph& graph);

}  // namespace sensornet
