#include "sensornet/generator.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sensornet/error.hpp"
#include "sensornet/random.hpp"

namespace sensornet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Index pick(std::mt19937_64& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

double integer_cost(std::mt19937_64& rng, int hi) {
  return static_cast<double>(std::uniform_int_distribution<int>(1, hi)(rng));
}

// States grouped into future SCCs. Groups [0, child_count) are children and
// the remaining m groups are parents; cross edges only run from a group to a
// later one, so the groups are exactly the SCCs.
struct GroupLayout {
  std::vector<std::vector<Index>> groups;
  Index child_count = 0;
};

GroupLayout layout_groups(const GeneratorConfig& cfg, std::mt19937_64& rng) {
  GroupLayout layout;
  layout.child_count = pick(rng, 0, cfg.n - cfg.m);
  const Index group_count = layout.child_count + cfg.m;
  std::vector<Index> states(cfg.n);
  std::iota(states.begin(), states.end(), Index{0});
  std::ranges::shuffle(states, rng);
  layout.groups.resize(group_count);
  for (Index k = 0; k < cfg.n; ++k) {
    const Index g = k < group_count ? k : pick(rng, 0, group_count - 1);
    layout.groups[g].push_back(states[k]);
  }
  return layout;
}

StructuredMatrix generate_system(const GeneratorConfig& cfg, const GroupLayout& layout,
                                 std::mt19937_64& rng) {
  std::vector<Entry> nz;
  // An edge x_from -> x_to is the nonzero (to, from).
  auto add_edge = [&nz](Index from, Index to) { nz.emplace_back(to, from); };

  for (const auto& group : layout.groups) {
    // A cycle through the whole group keeps it strongly connected and
    // contributes its share of the spanning cycle family.
    for (Index k = 0; k < group.size(); ++k) add_edge(group[k], group[(k + 1) % group.size()]);
    for (Index from : group) {
      for (Index to : group) {
        if (coin(rng, cfg.density)) add_edge(from, to);
      }
    }
  }
  const Index group_count = layout.groups.size();
  for (Index g = 0; g < layout.child_count; ++g) {
    const auto& source = layout.groups[g];
    const auto& target = layout.groups[pick(rng, g + 1, group_count - 1)];
    add_edge(source[pick(rng, 0, source.size() - 1)], target[pick(rng, 0, target.size() - 1)]);
    for (Index h = g + 1; h < group_count; ++h) {
      for (Index from : source) {
        for (Index to : layout.groups[h]) {
          if (coin(rng, cfg.density / 2)) add_edge(from, to);
        }
      }
    }
  }
  std::ranges::sort(nz);
  auto [first, last] = std::ranges::unique(nz);
  nz.erase(first, last);
  return StructuredMatrix(cfg.n, cfg.n, std::move(nz));
}

SensingCosts generate_costs(const GeneratorConfig& cfg, const GroupLayout& layout,
                            std::mt19937_64& rng) {
  SensingCosts costs;
  // One guaranteed entry per sensor along a random sensor -> parent permutation.
  std::vector<Index> parent_of_sensor(cfg.m);
  std::iota(parent_of_sensor.begin(), parent_of_sensor.end(), Index{0});
  std::ranges::shuffle(parent_of_sensor, rng);
  for (Index i = 0; i < cfg.m; ++i) {
    const auto& group = layout.groups[layout.child_count + parent_of_sensor[i]];
    costs[{i, group[pick(rng, 0, group.size() - 1)]}] = integer_cost(rng, 100);
  }
  for (Index i = 0; i < cfg.m; ++i) {
    for (Index j = 0; j < cfg.n; ++j) {
      if (coin(rng, cfg.density) && !costs.contains({i, j})) costs[{i, j}] = integer_cost(rng, 100);
    }
  }
  return costs;
}

WeightedDigraph generate_network(const GeneratorConfig& cfg, std::mt19937_64& rng) {
  WeightedDigraph net(cfg.m);
  if (cfg.m == 1) return net;
  std::vector<Index> order(cfg.m);
  std::iota(order.begin(), order.end(), Index{0});
  std::ranges::shuffle(order, rng);

  if (cfg.undirected) {
    auto link = [&](Index a, Index b) {
      const double cost = integer_cost(rng, 50);
      net.set_arc(a, b, cost);
      net.set_arc(b, a, cost);
    };
    for (Index k = 1; k < cfg.m; ++k) link(order[pick(rng, 0, k - 1)], order[k]);
    for (Index a = 0; a < cfg.m; ++a) {
      for (Index b = a + 1; b < cfg.m; ++b) {
        if (!net.has_arc(a, b) && coin(rng, cfg.density)) link(a, b);
      }
    }
  } else {
    for (Index k = 0; k < cfg.m; ++k) {
      net.set_arc(order[k], order[(k + 1) % cfg.m], integer_cost(rng, 50));
    }
    for (Index a = 0; a < cfg.m; ++a) {
      for (Index b = 0; b < cfg.m; ++b) {
        if (a != b && !net.has_arc(a, b) && coin(rng, cfg.density)) {
          net.set_arc(a, b, integer_cost(rng, 50));
        }
      }
    }
  }
  return net;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view stream, std::uint64_t index) {
  return splitmix64(splitmix64(master ^ fnv1a(stream)) + splitmix64(index));
}

ProblemInstance generate_instance(const GeneratorConfig& config) {
  if (config.n < 1 || config.m < 1) {
    throw Error(ErrorKind::validation, "generator needs n >= 1 and m >= 1");
  }
  if (config.m > config.n) {
    throw Error(ErrorKind::validation, "cannot build " + std::to_string(config.m) +
                                           " parent SCCs from " + std::to_string(config.n) +
                                           " states");
  }
  if (!(config.density >= 0.0 && config.density <= 1.0)) {
    throw Error(ErrorKind::validation, "density must lie in [0, 1]");
  }

  auto system_rng = make_stream(config.seed, "system");
  auto cost_rng = make_stream(config.seed, "sensing_cost");
  auto net_rng = make_stream(config.seed, "network");

  const auto layout = layout_groups(config, system_rng);
  ProblemInstance inst;
  inst.n = config.n;
  inst.m = config.m;
  inst.system_pattern = generate_system(config, layout, system_rng);
  inst.sensing_cost = generate_costs(config, layout, cost_rng);
  inst.network = generate_network(config, net_rng);
  inst.network_undirected = config.undirected;
  inst.validate();
  return inst;
}

}  // namespace sensornet
