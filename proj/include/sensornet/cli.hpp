#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sensornet/instance.hpp"

namespace sensornet {

enum class RootMode { all_roots, single_root };

struct DesignOptions {
  RootMode root_mode = RootMode::all_roots;
  Index root = 0;      // 0-based, single_root only
  bool exact = false;  // brute-force MSSS for directed networks
};

/// The full pipeline: SCCs -> parent cost matrix -> LSAP -> H, then MST or
/// MSSS for the network.
DesignResult design_pipeline(const ProblemInstance& instance, const DesignOptions& options = {});

/// Entry point shared by the executable and the tests. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sensornet
