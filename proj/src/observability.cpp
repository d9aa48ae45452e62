#include "sensornet/observability.hpp"

#include <string>

#include "sensornet/error.hpp"
#include "sensornet/matching.hpp"

namespace sensornet {

namespace {

void require_full_rank(const StructuredMatrix& a_pattern) {
  if (!is_structurally_full_rank(a_pattern)) {
    throw Error(ErrorKind::precondition,
                "system pattern is not structurally full rank; the parent-SCC criterion only "
                "applies to structurally cyclic systems");
  }
}

std::string sensor_name(Index i) { return "sensor " + std::to_string(i + 1); }

}  // namespace

bool check_structural_observability(const StructuredMatrix& a_pattern,
                                    const StructuredMatrix& h_pattern) {
  if (h_pattern.cols() != a_pattern.cols()) {
    throw Error(ErrorKind::shape, "measurement pattern has " + std::to_string(h_pattern.cols()) +
                                      " columns, system has " +
                                      std::to_string(a_pattern.cols()) + " states");
  }
  require_full_rank(a_pattern);
  const auto partition = scc_decompose(digraph_from_pattern(a_pattern));
  std::vector<bool> measured(partition.size(), false);
  for (const auto& [sensor, state] : h_pattern.nonzeros()) {
    measured[partition.component_of[state]] = true;
  }
  for (Index k : partition.parents()) {
    if (!measured[k]) return false;
  }
  return true;
}

GateVerdict distributed_observability_gate(const ProblemInstance& instance,
                                           const StructuredMatrix& h_pattern,
                                           const StructuredMatrix& w_pattern) {
  const Index m = instance.m;
  if (h_pattern.rows() != m || h_pattern.cols() != instance.n) {
    throw Error(ErrorKind::shape, "measurement pattern must be m x n");
  }
  if (w_pattern.rows() != m || w_pattern.cols() != m) {
    throw Error(ErrorKind::shape, "network pattern must be m x m");
  }
  for (const auto& [from, to] : w_pattern.nonzeros()) {
    if (!instance.network.has_arc(from, to)) {
      throw Error(ErrorKind::constraint, "selected link " + std::to_string(from + 1) + "->" +
                                             std::to_string(to + 1) +
                                             " is not in the candidate network");
    }
  }

  if (!check_structural_observability(instance.system_pattern, h_pattern)) {
    return {false, "some parent SCC has no measured state"};
  }

  const auto partition = scc_decompose(digraph_from_pattern(instance.system_pattern));
  std::vector<std::optional<Index>> sensor_of_parent(partition.size());
  for (Index i = 0; i < m; ++i) {
    const auto states = h_pattern.row_support(i);
    if (states.size() != 1) {
      return {false, sensor_name(i) + " measures " + std::to_string(states.size()) +
                         " states, expected exactly one"};
    }
    const Index k = partition.component_of[states.front()];
    if (!partition.is_parent(k)) {
      return {false, sensor_name(i) + " measures a state outside every parent SCC"};
    }
    if (sensor_of_parent[k]) {
      return {false, sensor_name(i) + " and " + sensor_name(*sensor_of_parent[k]) +
                         " measure the same parent SCC"};
    }
    sensor_of_parent[k] = i;
  }
  if (partition.parents().size() != m) {
    return {false, "sensor count differs from parent SCC count"};
  }

  std::vector<Arc> links(w_pattern.nonzeros().begin(), w_pattern.nonzeros().end());
  if (!is_strongly_connected(Digraph(m, std::move(links)))) {
    return {false, "sensor network is not strongly connected"};
  }
  return {true, {}};
}

}  // namespace sensornet
