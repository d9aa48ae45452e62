#include "sensornet/network.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <iterator>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "sensornet/branching.hpp"
#include "sensornet/error.hpp"
#include "sensornet/scc.hpp"

namespace sensornet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string set_text(const std::vector<Index>& nodes) {
  std::string out = "{";
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(nodes[k] + 1);
  }
  return out + "}";
}

void require_symmetric(const WeightedDigraph& net) {
  if (!net.symmetric()) {
    throw Error(ErrorKind::precondition, "spanning tree design needs a symmetric network");
  }
}

void require_strongly_connected(const WeightedDigraph& net) {
  if (!is_strongly_connected(net.topology())) {
    throw Error(ErrorKind::precondition, "candidate network is not strongly connected");
  }
}

// Undirected edges (a < b) of a symmetric network in lexicographic order.
std::vector<std::pair<Arc, double>> undirected_edges(const WeightedDigraph& net) {
  std::vector<std::pair<Arc, double>> out;
  for (const auto& [arc, cost] : net.arcs()) {
    if (arc.first < arc.second) out.emplace_back(arc, cost);
  }
  return out;
}

NetworkDesign tree_design(const WeightedDigraph& net, const std::vector<Arc>& tree_edges,
                          NetworkMethod method) {
  NetworkDesign design;
  design.method = method;
  design.tree_cost = 0.0;
  for (const auto& [a, b] : tree_edges) {
    design.selected_arcs.emplace_back(a, b);
    design.selected_arcs.emplace_back(b, a);
    *design.tree_cost += net.cost(a, b);
  }
  std::ranges::sort(design.selected_arcs);
  design.total_cost = arc_set_cost(net, design.selected_arcs);
  return design;
}

// Branch and bound over arc subsets for the cheapest strongly connected
// spanning subgraph.
class MsssSearch {
 public:
  explicit MsssSearch(const WeightedDigraph& net) : n_(net.node_count()) {
    for (const auto& [arc, cost] : net.arcs()) {
      arcs_.push_back(arc);
      costs_.push_back(cost);
    }
    avail_out_.assign(n_, 0);
    avail_in_.assign(n_, 0);
    for (const auto& [from, to] : arcs_) {
      ++avail_out_[from];
      ++avail_in_[to];
    }
  }

  std::optional<std::vector<Arc>> run() {
    if (n_ <= 1) return std::vector<Arc>{};
    // A strongly connected digraph on n > 1 nodes needs at least n arcs.
    if (n_ > 64 || arcs_.size() < n_) return std::nullopt;
    chosen_.clear();
    recurse(0, 0.0, true);
    return best_;
  }

 private:
  bool degrees_possible() const {
    for (Index v = 0; v < n_; ++v) {
      if (avail_out_[v] == 0 || avail_in_[v] == 0) return false;
    }
    return true;
  }

  // Forward and backward closure from node 0 over bitmask adjacency.
  bool chosen_strongly_connected() const {
    std::vector<std::uint64_t> out(n_, 0), in(n_, 0);
    for (Index k : chosen_) {
      const auto [from, to] = arcs_[k];
      out[from] |= std::uint64_t{1} << to;
      in[to] |= std::uint64_t{1} << from;
    }
    const std::uint64_t all = n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1;
    auto closure = [&](const std::vector<std::uint64_t>& adj) {
      std::uint64_t reached = 1, frontier = 1;
      while (frontier) {
        std::uint64_t next = 0;
        for (std::uint64_t f = frontier; f; f &= f - 1) next |= adj[std::countr_zero(f)];
        frontier = next & ~reached;
        reached |= next;
      }
      return reached;
    };
    return closure(out) == all && closure(in) == all;
  }

  void consider(double cost) {
    std::vector<Arc> picked;
    for (Index k : chosen_) picked.push_back(arcs_[k]);
    if (!best_ || cost < best_cost_ || (cost == best_cost_ && picked < *best_)) {
      best_ = std::move(picked);
      best_cost_ = cost;
    }
  }

  // `grew` is set when the previous decision added an arc. Zero-cost arcs can
  // extend an optimum into a lexicographically smaller tie, so the search
  // continues below strongly connected sets; the cost bound prunes the rest.
  void recurse(Index k, double cost, bool grew) {
    if (best_ && cost > best_cost_) return;
    if (!degrees_possible()) return;
    if (grew && chosen_.size() >= n_ && chosen_strongly_connected()) consider(cost);
    if (k == arcs_.size()) return;

    chosen_.push_back(k);
    recurse(k + 1, cost + costs_[k], true);
    chosen_.pop_back();

    const auto [from, to] = arcs_[k];
    --avail_out_[from];
    --avail_in_[to];
    recurse(k + 1, cost, false);
    ++avail_out_[from];
    ++avail_in_[to];
  }

  Index n_;
  std::vector<Arc> arcs_;
  std::vector<double> costs_;
  std::vector<Index> avail_out_;
  std::vector<Index> avail_in_;
  std::vector<Index> chosen_;
  std::optional<std::vector<Arc>> best_;
  double best_cost_ = kInf;
};

}  // namespace

const char* to_string(NetworkMethod method) {
  switch (method) {
    case NetworkMethod::mst: return "mst";
    case NetworkMethod::branching_union: return "branching_union";
    case NetworkMethod::brute_force: return "brute_force";
  }
  return "unknown";
}

NetworkDesign mst_solve(const WeightedDigraph& net) {
  require_symmetric(net);
  const Index m = net.node_count();
  if (m <= 1) return tree_design(net, {}, NetworkMethod::mst);

  // Dense Prim, O(m^2); ties go to the lowest node index and earliest parent.
  std::vector<std::vector<double>> weight(m, std::vector<double>(m, kInf));
  for (const auto& [arc, cost] : net.arcs()) weight[arc.first][arc.second] = cost;

  std::vector<bool> in_tree(m, false);
  std::vector<double> key(m, kInf);
  std::vector<Index> parent(m, 0);
  std::vector<Arc> edges;
  key[0] = 0.0;
  for (Index step = 0; step < m; ++step) {
    Index next = m;
    for (Index v = 0; v < m; ++v) {
      if (!in_tree[v] && (next == m || key[v] < key[next])) next = v;
    }
    if (key[next] == kInf) {
      std::vector<Index> reached, rest;
      for (Index v = 0; v < m; ++v) (in_tree[v] ? reached : rest).push_back(v);
      throw Error(ErrorKind::infeasible, "network is disconnected: no link crosses the cut " +
                                             set_text(reached) + " | " + set_text(rest));
    }
    in_tree[next] = true;
    if (step > 0) edges.emplace_back(std::min(parent[next], next), std::max(parent[next], next));
    for (Index v = 0; v < m; ++v) {
      if (!in_tree[v] && weight[next][v] < key[v]) {
        key[v] = weight[next][v];
        parent[v] = next;
      }
    }
  }
  return tree_design(net, edges, NetworkMethod::mst);
}

NetworkDesign msss_2approx(const WeightedDigraph& net, Index root) {
  require_strongly_connected(net);
  const auto out = min_branching(net, root, BranchingDirection::out);
  const auto in = min_branching(net, root, BranchingDirection::in);

  NetworkDesign design;
  design.method = NetworkMethod::branching_union;
  design.root = root;
  design.gap_bound = 1.0;
  std::ranges::set_union(out.arcs, in.arcs, std::back_inserter(design.selected_arcs));
  design.total_cost = arc_set_cost(net, design.selected_arcs);
  return design;
}

NetworkDesign msss_best_root(const WeightedDigraph& net) {
  require_strongly_connected(net);
  std::optional<NetworkDesign> best;
  for (Index root = 0; root < net.node_count(); ++root) {
    auto candidate = msss_2approx(net, root);
    if (!best || candidate.total_cost < best->total_cost) best = std::move(candidate);
  }
  if (!best) {
    throw Error(ErrorKind::validation, "network has no sensors");
  }
  return *best;
}

NetworkDesign brute_force_msss(const WeightedDigraph& net) {
  if (net.arc_count() > kBruteForceArcLimit) {
    throw Error(ErrorKind::guard, "exact MSSS limited to " + std::to_string(kBruteForceArcLimit) +
                                      " arcs, network has " + std::to_string(net.arc_count()));
  }
  auto arcs = MsssSearch(net).run();
  if (!arcs) {
    throw Error(ErrorKind::infeasible, "no strongly connected spanning subgraph exists");
  }
  NetworkDesign design;
  design.method = NetworkMethod::brute_force;
  design.selected_arcs = std::move(*arcs);
  design.total_cost = arc_set_cost(net, design.selected_arcs);
  return design;
}

NetworkDesign brute_force_spanning_tree(const WeightedDigraph& net) {
  require_symmetric(net);
  const auto edges = undirected_edges(net);
  if (edges.size() > kBruteForceArcLimit) {
    throw Error(ErrorKind::guard, "exact spanning tree search limited to " +
                                      std::to_string(kBruteForceArcLimit) + " edges");
  }
  const Index m = net.node_count();
  if (m <= 1) return tree_design(net, {}, NetworkMethod::brute_force);

  std::optional<std::vector<Arc>> best;
  double best_cost = kInf;
  const std::uint32_t limit = std::uint32_t{1} << edges.size();
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    if (static_cast<Index>(std::popcount(mask)) != m - 1) continue;
    std::vector<Index> root(m);
    std::iota(root.begin(), root.end(), Index{0});
    auto find = [&](Index x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    std::vector<Arc> tree;
    double cost = 0.0;
    bool acyclic = true;
    for (std::size_t k = 0; k < edges.size() && acyclic; ++k) {
      if (!(mask >> k & 1U)) continue;
      const auto [a, b] = edges[k].first;
      const Index ra = find(a), rb = find(b);
      if (ra == rb) {
        acyclic = false;
      } else {
        root[ra] = rb;
        tree.emplace_back(a, b);
        cost += edges[k].second;
      }
    }
    // m - 1 acyclic edges always span.
    if (!acyclic) continue;
    if (!best || cost < best_cost || (cost == best_cost && tree < *best)) {
      best = std::move(tree);
      best_cost = cost;
    }
  }
  if (!best) {
    throw Error(ErrorKind::infeasible, "network is disconnected");
  }
  return tree_design(net, *best, NetworkMethod::brute_force);
}

double approximation_gap(double heuristic_cost, double optimal_cost) {
  if (heuristic_cost == optimal_cost) return 0.0;
  if (optimal_cost == 0.0) return kInf;
  return (heuristic_cost - optimal_cost) / optimal_cost;
}

}  // namespace sensornet
