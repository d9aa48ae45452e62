#pragma once

#include <string>
#include <vector>

#include "sensornet/digraph.hpp"

namespace sensornet {

/// Graphviz DOT text. Node names default to 1-based numbers when `labels` is empty.
std::string export_dot(const Digraph& graph, const std::vector<std::string>& labels = {});

/// As above; arc costs are rendered as edge labels.
std::string export_dot(const WeightedDigraph& graph, const std::vector<std::string>& labels = {});

}  // namespace sensornet
