#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace sensornet {

/// Seed for an independent named stream derived from one master seed.
/// Adding a new stream name never perturbs the existing ones.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t index = 0);

inline std::mt19937_64 make_stream(std::uint64_t master, std::string_view stream,
                                   std::uint64_t index = 0) {
  return std::mt19937_64(derive_seed(master, stream, index));
}

}  // namespace sensornet
