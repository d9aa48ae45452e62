#include "sensornet/digraph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sensornet/error.hpp"

namespace sensornet {

Digraph::Digraph(Index node_count, std::vector<Arc> edges)
    : node_count_(node_count), edges_(std::move(edges)), out_(node_count) {
  std::ranges::sort(edges_);
  auto [first, last] = std::ranges::unique(edges_);
  edges_.erase(first, last);
  for (const auto& [from, to] : edges_) {
    if (from >= node_count_ || to >= node_count_) {
      throw Error(ErrorKind::validation, "edge endpoint outside " + std::to_string(node_count_) +
                                             " nodes");
    }
    out_[from].push_back(to);
  }
}

bool Digraph::has_edge(Index from, Index to) const {
  return std::ranges::binary_search(edges_, Arc{from, to});
}

Digraph Digraph::reversed() const {
  std::vector<Arc> rev;
  rev.reserve(edges_.size());
  for (const auto& [from, to] : edges_) rev.emplace_back(to, from);
  return Digraph(node_count_, std::move(rev));
}

Digraph digraph_from_pattern(const StructuredMatrix& pattern) {
  if (!pattern.square()) {
    throw Error(ErrorKind::shape, "system pattern must be square, got " +
                                      std::to_string(pattern.rows()) + "x" +
                                      std::to_string(pattern.cols()));
  }
  std::vector<Arc> edges;
  edges.reserve(pattern.nonzero_count());
  for (const auto& [i, j] : pattern.nonzeros()) edges.emplace_back(j, i);
  return Digraph(pattern.rows(), std::move(edges));
}

StructuredMatrix pattern_from_digraph(const Digraph& graph) {
  std::vector<Entry> nz;
  nz.reserve(graph.edges().size());
  for (const auto& [from, to] : graph.edges()) nz.emplace_back(to, from);
  return StructuredMatrix(graph.node_count(), graph.node_count(), std::move(nz));
}

namespace {

void check_arc(Index node_count, Index from, Index to, double cost) {
  if (from >= node_count || to >= node_count) {
    throw Error(ErrorKind::validation, "link endpoint outside " + std::to_string(node_count) +
                                           " sensors");
  }
  if (from == to) {
    throw Error(ErrorKind::validation, "self link at sensor " + std::to_string(from + 1));
  }
  if (!std::isfinite(cost) || cost < 0.0) {
    throw Error(ErrorKind::validation, "link cost must be finite and nonnegative");
  }
}

bool arc_less(const CostedArc& entry, const Arc& arc) { return entry.first < arc; }

}  // namespace

WeightedDigraph::WeightedDigraph(Index node_count, std::vector<CostedArc> arcs)
    : node_count_(node_count), arcs_(std::move(arcs)) {
  for (const auto& [arc, cost] : arcs_) check_arc(node_count, arc.first, arc.second, cost);
  std::ranges::sort(arcs_, {}, &CostedArc::first);
  const auto repeat = std::ranges::adjacent_find(arcs_, {}, &CostedArc::first);
  if (repeat != arcs_.end()) {
    throw Error(ErrorKind::validation, "duplicate link " + std::to_string(repeat->first.first + 1) +
                                           "->" + std::to_string(repeat->first.second + 1));
  }
}

const double* WeightedDigraph::find(Index from, Index to) const {
  const Arc arc{from, to};
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), arc, arc_less);
  return it != arcs_.end() && it->first == arc ? &it->second : nullptr;
}

double WeightedDigraph::cost(Index from, Index to) const {
  const double* c = find(from, to);
  if (!c) {
    throw Error(ErrorKind::constraint, "no link " + std::to_string(from + 1) + "->" +
                                           std::to_string(to + 1) + " in the network");
  }
  return *c;
}

void WeightedDigraph::set_arc(Index from, Index to, double cost) {
  check_arc(node_count_, from, to, cost);
  const Arc arc{from, to};
  if (arcs_.empty() || arcs_.back().first < arc) {
    arcs_.emplace_back(arc, cost);
    return;
  }
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), arc, arc_less);
  if (it != arcs_.end() && it->first == arc) {
    it->second = cost;
  } else {
    arcs_.emplace(it, arc, cost);
  }
}

bool WeightedDigraph::symmetric() const {
  return std::ranges::all_of(arcs_, [this](const CostedArc& entry) {
    const double* back = find(entry.first.second, entry.first.first);
    return back && *back == entry.second;
  });
}

Digraph WeightedDigraph::topology() const {
  std::vector<Arc> edges;
  edges.reserve(arcs_.size());
  for (const auto& [arc, cost] : arcs_) edges.push_back(arc);
  return Digraph(node_count_, std::move(edges));
}

WeightedDigraph WeightedDigraph::reversed() const {
  WeightedDigraph out(node_count_);
  out.arcs_.reserve(arcs_.size());
  for (const auto& [arc, cost] : arcs_) out.arcs_.emplace_back(Arc{arc.second, arc.first}, cost);
  std::ranges::sort(out.arcs_, {}, &CostedArc::first);
  return out;
}

double arc_set_cost(const WeightedDigraph& net, const std::vector<Arc>& arcs) {
  auto unique_arcs = arcs;
  std::ranges::sort(unique_arcs);
  auto [first, last] = std::ranges::unique(unique_arcs);
  unique_arcs.erase(first, last);
  double total = 0.0;
  for (const auto& [from, to] : unique_arcs) total += net.cost(from, to);
  return total;
}

}  // namespace sensornet
