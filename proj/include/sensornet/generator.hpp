#pragma once

#include <cstdint>

#include "sensornet/instance.hpp"

namespace sensornet {

struct GeneratorConfig {
  Index n = 1;
  Index m = 1;
  double density = 0.3;  // probability of each optional extra edge / cost entry
  std::uint64_t seed = 0;
  bool undirected = false;
};

/// Random instance with a structurally full-rank A whose state digraph has
/// exactly m parent SCCs, a feasible sensing cost matrix and a strongly
/// connected candidate network. Deterministic per config.
/// Throws Error(validation) if m > n or n, m < 1.
ProblemInstance generate_instance(const GeneratorConfig& config);

}  // namespace sensornet
