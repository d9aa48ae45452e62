#pragma once

#include <string>

#include "sensornet/instance.hpp"
#include "sensornet/scc.hpp"

namespace sensornet {

/// Structural observability of (A, H) for structurally full-rank A: every
/// parent SCC of the state digraph contains a measured state.
///
/// Throws Error(precondition) if A is not structurally full rank and
/// Error(shape) on dimension mismatch.
bool check_structural_observability(const StructuredMatrix& a_pattern,
                                    const StructuredMatrix& h_pattern);

/// Outcome of the structural distributed-observability gate. `reason` is
/// empty when `ok` holds.
struct GateVerdict {
  bool ok = false;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

/// Structural gate for a full design:
///   - (A, H) structurally observable,
///   - each sensor measures exactly one state,
///   - sensors map one-to-one onto parent SCCs,
///   - the network pattern is strongly connected over all sensors.
///
/// Throws Error(constraint) if `w_pattern` selects a link that is not in
/// instance.network.
GateVerdict distributed_observability_gate(const ProblemInstance& instance,
                                           const StructuredMatrix& h_pattern,
                                           const StructuredMatrix& w_pattern);

inline bool check_distributed_observability_structural(const ProblemInstance& instance,
                                                       const StructuredMatrix& h_pattern,
                                                       const StructuredMatrix& w_pattern) {
  return distributed_observability_gate(instance, h_pattern, w_pattern).ok;
}

}  // namespace sensornet
