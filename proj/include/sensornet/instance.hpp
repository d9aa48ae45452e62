#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "sensornet/digraph.hpp"
#include "sensornet/structured_matrix.hpp"

namespace sensornet {

/// Sensor x state measurement costs. Absent entries are forbidden measurements.
using SensingCosts = std::map<Entry, double>;

struct ProblemInstance {
  Index n = 0;  // states
  Index m = 0;  // sensors
  StructuredMatrix system_pattern;
  SensingCosts sensing_cost;
  WeightedDigraph network;
  bool network_undirected = false;

  /// Throws Error(validation) with a field path if any invariant fails.
  void validate() const;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

enum class NetworkOptimality { exact, two_approx };

struct DesignResult {
  StructuredMatrix measurement_pattern;  // m x n
  StructuredMatrix network_pattern;      // m x m, (i, j) set for a selected link i -> j
  double sensing_cost = 0.0;
  double networking_cost = 0.0;
  NetworkOptimality network_optimality = NetworkOptimality::exact;
  /// Undirected networks only: cost of the spanning tree counting each edge once.
  std::optional<double> tree_cost;

  double total_cost() const { return sensing_cost + networking_cost; }
};

// JSON documents use 1-based indices; everything in memory is 0-based.

ProblemInstance parse_instance(std::string_view text);
std::string serialize_instance(const ProblemInstance& instance);

/// Dimensions come from the instance the design was computed for.
DesignResult parse_design(std::string_view text, Index m, Index n);
std::string serialize_design(const DesignResult& design);

}  // namespace sensornet
