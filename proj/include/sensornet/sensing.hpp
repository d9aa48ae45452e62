#pragma once

#include <optional>
#include <vector>

#include "sensornet/instance.hpp"
#include "sensornet/scc.hpp"

namespace sensornet {

/// Square assignment cost matrix; a missing entry is a forbidden pairing.
class CostMatrix {
 public:
  CostMatrix() = default;
  explicit CostMatrix(Index size) : size_(size), entries_(size * size) {}
  /// Dense construction, every entry allowed.
  static CostMatrix dense(const std::vector<std::vector<double>>& rows);

  Index size() const noexcept { return size_; }
  const std::optional<double>& at(Index row, Index col) const { return entries_[row * size_ + col]; }
  void set(Index row, Index col, std::optional<double> cost) { entries_[row * size_ + col] = cost; }
  bool allowed(Index row, Index col) const { return at(row, col).has_value(); }

  std::vector<std::vector<Index>> allowed_columns() const;

 private:
  Index size_ = 0;
  std::vector<std::optional<double>> entries_;
};

/// Sensor x parent-SCC costs: entry (i, j) is the cheapest measurement sensor
/// i can take inside parent SCC j.
struct ParentCostMatrix {
  CostMatrix cost;
  /// Row-major m x m; the state realising cost(i, j). Meaningless where the
  /// entry is forbidden.
  std::vector<Index> argmin_state;
  /// States of each parent SCC, in the column order of `cost`.
  std::vector<std::vector<Index>> parent_states;

  Index size() const noexcept { return cost.size(); }
  Index argmin(Index sensor, Index parent) const { return argmin_state[sensor * size() + parent]; }

  /// Wraps a bare cost matrix: column j stands for a singleton parent holding state j.
  static ParentCostMatrix from_costs(CostMatrix cost);
};

struct SensorAssignment {
  std::vector<Index> parent_of_sensor;  // a permutation of 0..m-1
  std::vector<Index> measured_state;    // per sensor
  double total_cost = 0.0;
};

/// Throws Error(infeasible) if the number of parent SCCs differs from m.
ParentCostMatrix build_parent_cost_matrix(const ProblemInstance& instance,
                                          const SccPartition& partition);

/// Exact LSAP via shortest augmenting paths with potentials, O(m^3).
/// Forbidden entries are never used; if no permutation avoids them an
/// Error(infeasible) names a Hall-violating sensor set.
SensorAssignment hungarian_solve(const ParentCostMatrix& costs);

/// Exhaustive LSAP over all permutations in lexicographic order; the first
/// optimum found wins. Throws Error(guard) for m > 10.
SensorAssignment brute_force_assignment(const ParentCostMatrix& costs);

inline constexpr Index kBruteForceAssignmentLimit = 10;

/// Measurement pattern with one nonzero (sensor, measured state) per sensor.
StructuredMatrix recover_measurement_structure(const SensorAssignment& assignment, Index n);

}  // namespace sensornet
