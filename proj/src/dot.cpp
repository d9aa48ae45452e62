#include "sensornet/dot.hpp"

#include <sstream>

namespace sensornet {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::string node_name(Index node, const std::vector<std::string>& labels) {
  return quoted(node < labels.size() ? labels[node] : std::to_string(node + 1));
}

std::string format_cost(double cost) {
  std::ostringstream os;
  os.precision(15);
  os << cost;
  return os.str();
}

template <typename EdgeWriter>
std::string emit(Index node_count, const std::vector<std::string>& labels, EdgeWriter&& edges) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (Index v = 0; v < node_count; ++v) os << "  " << node_name(v, labels) << ";\n";
  edges(os);
  os << "}\n";
  return os.str();
}

}  // namespace

std::string export_dot(const Digraph& graph, const std::vector<std::string>& labels) {
  return emit(graph.node_count(), labels, [&](std::ostringstream& os) {
    for (const auto& [from, to] : graph.edges()) {
      os << "  " << node_name(from, labels) << " -> " << node_name(to, labels) << ";\n";
    }
  });
}

std::string export_dot(const WeightedDigraph& graph, const std::vector<std::string>& labels) {
  return emit(graph.node_count(), labels, [&](std::ostringstream& os) {
    for (const auto& [arc, cost] : graph.arcs()) {
      os << "  " << node_name(arc.first, labels) << " -> " << node_name(arc.second, labels)
         << " [label=" << quoted(format_cost(cost)) << "];\n";
    }
  });
}

}  // namespace sensornet
