#include "sensornet/scc.hpp"

#include <algorithm>
#include <limits>

#include <json.hpp>

namespace sensornet {

namespace {

constexpr Index kUnvisited = std::numeric_limits<Index>::max();

// Iterative Tarjan. Returns components in discovery (reverse topological) order.
std::vector<std::vector<Index>> tarjan(const Digraph& graph) {
  const Index n = graph.node_count();
  std::vector<Index> index(n, kUnvisited);
  std::vector<Index> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<Index> stack;
  std::vector<std::pair<Index, std::size_t>> call;  // (node, next successor position)
  std::vector<std::vector<Index>> components;
  Index counter = 0;

  for (Index start = 0; start < n; ++start) {
    if (index[start] != kUnvisited) continue;
    call.emplace_back(start, 0);
    index[start] = lowlink[start] = counter++;
    stack.push_back(start);
    on_stack[start] = true;

    while (!call.empty()) {
      auto& [v, pos] = call.back();
      const auto& succ = graph.successors(v);
      if (pos < succ.size()) {
        const Index w = succ[pos++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          lowlink[v] = std::min(lowlink[v], index[w]);
        }
        continue;
      }
      const Index done = v;
      call.pop_back();
      if (!call.empty()) {
        const Index caller = call.back().first;
        lowlink[caller] = std::min(lowlink[caller], lowlink[done]);
      }
      if (lowlink[done] == index[done]) {
        std::vector<Index> component;
        Index w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != done);
        components.push_back(std::move(component));
      }
    }
  }
  return components;
}

}  // namespace

std::vector<Index> SccPartition::parents() const {
  std::vector<Index> out;
  for (Index k = 0; k < components.size(); ++k) {
    if (is_parent(k)) out.push_back(k);
  }
  return out;
}

std::string SccPartition::to_json() const {
  nlohmann::json doc;
  nlohmann::json list = nlohmann::json::array();
  for (Index k = 0; k < components.size(); ++k) {
    nlohmann::json states = nlohmann::json::array();
    for (Index v : components[k]) states.push_back(v + 1);
    list.push_back({{"states", states}, {"kind", is_parent(k) ? "parent" : "child"}});
  }
  doc["components"] = std::move(list);
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& [from, to] : condensation) arcs.push_back({from + 1, to + 1});
  doc["condensation"] = std::move(arcs);
  return doc.dump(2);
}

SccPartition scc_decompose(const Digraph& graph) {
  auto components = tarjan(graph);
  for (auto& c : components) std::ranges::sort(c);
  std::ranges::sort(components, {}, [](const auto& c) { return c.front(); });

  SccPartition out;
  out.component_of.assign(graph.node_count(), 0);
  for (Index k = 0; k < components.size(); ++k) {
    for (Index v : components[k]) out.component_of[v] = k;
  }
  for (const auto& [from, to] : graph.edges()) {
    const Index a = out.component_of[from];
    const Index b = out.component_of[to];
    if (a != b) out.condensation.emplace_back(a, b);
  }
  std::ranges::sort(out.condensation);
  auto [first, last] = std::ranges::unique(out.condensation);
  out.condensation.erase(first, last);

  out.kinds.assign(components.size(), SccKind::parent);
  for (const auto& arc : out.condensation) out.kinds[arc.first] = SccKind::child;
  out.components = std::move(components);
  return out;
}

bool is_strongly_connected(const Digraph& graph) {
  if (graph.node_count() == 0) return true;
  return tarjan(graph).size() == 1;
}

}  // namespace sensornet
