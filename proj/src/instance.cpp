#include "sensornet/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <json.hpp>

#include "sensornet/error.hpp"

namespace sensornet {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::validation, path + ": " + what);
}

const json& field(const json& object, const char* key, const std::string& path) {
  if (!object.is_object()) fail(path, "expected an object");
  auto it = object.find(key);
  if (it == object.end()) fail(path.empty() ? key : path + "." + key, "missing field");
  return *it;
}

std::string join(const std::string& path, const char* key) {
  return path.empty() ? std::string(key) : path + "." + key;
}

std::string at_index(const std::string& path, std::size_t k) {
  return path + "[" + std::to_string(k) + "]";
}

Index read_count(const json& value, const std::string& path) {
  if (!value.is_number_integer() || value.get<long long>() < 1) {
    fail(path, "expected a positive integer");
  }
  return static_cast<Index>(value.get<long long>());
}

// 1-based document index in [1, limit] -> 0-based.
Index read_index(const json& value, const std::string& path, Index limit) {
  if (!value.is_number_integer()) fail(path, "expected an integer index");
  const auto raw = value.get<long long>();
  if (raw < 1 || static_cast<Index>(raw) > limit) {
    fail(path, "index " + std::to_string(raw) + " out of range 1.." + std::to_string(limit));
  }
  return static_cast<Index>(raw - 1);
}

double read_cost(const json& value, const std::string& path) {
  if (!value.is_number()) fail(path, "expected a number");
  const double cost = value.get<double>();
  if (!std::isfinite(cost)) fail(path, "cost must be finite");
  if (cost < 0.0) fail(path, "negative cost " + value.dump());
  return cost;
}

const json& read_array(const json& object, const char* key, const std::string& path) {
  const json& value = field(object, key, path);
  if (!value.is_array()) fail(join(path, key), "expected an array");
  return value;
}

std::vector<Entry> read_pairs(const json& array, const std::string& path, Index rows,
                              Index cols) {
  std::vector<Entry> out;
  out.reserve(array.size());
  for (std::size_t k = 0; k < array.size(); ++k) {
    const auto item_path = at_index(path, k);
    const json& pair = array[k];
    if (!pair.is_array() || pair.size() != 2) fail(item_path, "expected [row, col]");
    out.emplace_back(read_index(pair[0], item_path + "[0]", rows),
                     read_index(pair[1], item_path + "[1]", cols));
  }
  return out;
}

StructuredMatrix read_pattern(const json& array, const std::string& path, Index rows, Index cols) {
  try {
    return StructuredMatrix(rows, cols, read_pairs(array, path, rows, cols));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::validation && std::string(e.what()).rfind(path, 0) != 0) {
      fail(path, e.what());
    }
    throw;
  }
}

json pairs_to_json(const StructuredMatrix& pattern) {
  json out = json::array();
  for (const auto& [r, c] : pattern.nonzeros()) out.push_back({r + 1, c + 1});
  return out;
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::validation, std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

void ProblemInstance::validate() const {
  if (n < 1) fail("n", "must be at least 1");
  if (m < 1) fail("m", "must be at least 1");
  if (system_pattern.rows() != n || system_pattern.cols() != n) fail("A", "must be n x n");
  if (network.node_count() != m) fail("net", "must span exactly m sensors");
  for (const auto& [entry, cost] : sensing_cost) {
    const auto where = "c(" + std::to_string(entry.first + 1) + "," +
                       std::to_string(entry.second + 1) + ")";
    if (entry.first >= m || entry.second >= n) fail(where, "index out of range");
    if (!std::isfinite(cost) || cost < 0.0) fail(where, "cost must be finite and nonnegative");
  }
  if (network_undirected) {
    for (const auto& [arc, cost] : network.arcs()) {
      const double* rev = network.find(arc.second, arc.first);
      const auto where = "net.links(" + std::to_string(arc.first + 1) + "," +
                         std::to_string(arc.second + 1) + ")";
      if (!rev) fail(where, "undirected network is missing the reverse link");
      if (*rev != cost) fail(where, "undirected network has unequal reverse cost");
    }
  }
}

ProblemInstance parse_instance(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) fail("$", "expected an object");

  ProblemInstance inst;
  inst.n = read_count(field(doc, "n", ""), "n");
  inst.m = read_count(field(doc, "m", ""), "m");
  inst.system_pattern = read_pattern(read_array(doc, "A", ""), "A", inst.n, inst.n);

  const json& costs = read_array(doc, "c", "");
  for (std::size_t k = 0; k < costs.size(); ++k) {
    const auto path = at_index("c", k);
    const json& item = costs[k];
    const Index sensor = read_index(field(item, "sensor", path), path + ".sensor", inst.m);
    const Index state = read_index(field(item, "state", path), path + ".state", inst.n);
    const double cost = read_cost(field(item, "cost", path), path + ".cost");
    if (!inst.sensing_cost.emplace(Entry{sensor, state}, cost).second) {
      fail(path, "duplicate sensing cost for sensor " + std::to_string(sensor + 1) + ", state " +
                     std::to_string(state + 1));
    }
  }

  const json& net = field(doc, "net", "");
  const json& undirected = field(net, "undirected", "net");
  if (!undirected.is_boolean()) fail("net.undirected", "expected a boolean");
  inst.network_undirected = undirected.get<bool>();
  const json& links = read_array(net, "links", "net");
  std::vector<CostedArc> arcs;
  arcs.reserve(links.size());
  for (std::size_t k = 0; k < links.size(); ++k) {
    const auto path = at_index("net.links", k);
    const json& item = links[k];
    const Index from = read_index(field(item, "from", path), path + ".from", inst.m);
    const Index to = read_index(field(item, "to", path), path + ".to", inst.m);
    const double cost = read_cost(field(item, "cost", path), path + ".cost");
    if (from == to) fail(path, "self link at sensor " + std::to_string(from + 1));
    arcs.emplace_back(Arc{from, to}, cost);
  }
  // Report a repeated link at its second occurrence.
  std::vector<std::size_t> order(arcs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::ranges::stable_sort(order, {}, [&arcs](std::size_t k) { return arcs[k].first; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (arcs[order[k]].first == arcs[order[k - 1]].first) {
      fail(at_index("net.links", order[k]), "duplicate link");
    }
  }
  inst.network = WeightedDigraph(inst.m, std::move(arcs));

  inst.validate();
  return inst;
}

std::string serialize_instance(const ProblemInstance& instance) {
  json doc;
  doc["n"] = instance.n;
  doc["m"] = instance.m;
  doc["A"] = pairs_to_json(instance.system_pattern);
  json costs = json::array();
  for (const auto& [entry, cost] : instance.sensing_cost) {
    costs.push_back({{"sensor", entry.first + 1}, {"state", entry.second + 1}, {"cost", cost}});
  }
  doc["c"] = std::move(costs);
  json links = json::array();
  for (const auto& [arc, cost] : instance.network.arcs()) {
    links.push_back({{"from", arc.first + 1}, {"to", arc.second + 1}, {"cost", cost}});
  }
  doc["net"] = {{"undirected", instance.network_undirected}, {"links", std::move(links)}};
  return doc.dump(2) + "\n";
}

DesignResult parse_design(std::string_view text, Index m, Index n) {
  const json doc = parse_document(text);
  DesignResult design;
  design.measurement_pattern = read_pattern(read_array(doc, "H", ""), "H", m, n);
  design.network_pattern = read_pattern(read_array(doc, "W", ""), "W", m, m);
  design.sensing_cost = read_cost(field(doc, "sensing_cost", ""), "sensing_cost");
  design.networking_cost = read_cost(field(doc, "networking_cost", ""), "networking_cost");
  const json& optimality = field(doc, "network_optimality", "");
  if (optimality == "exact") {
    design.network_optimality = NetworkOptimality::exact;
  } else if (optimality == "two_approx") {
    design.network_optimality = NetworkOptimality::two_approx;
  } else {
    fail("network_optimality", "expected \"exact\" or \"two_approx\"");
  }
  if (auto it = doc.find("tree_cost"); it != doc.end()) {
    design.tree_cost = read_cost(*it, "tree_cost");
  }
  return design;
}

std::string serialize_design(const DesignResult& design) {
  json doc;
  doc["H"] = pairs_to_json(design.measurement_pattern);
  doc["W"] = pairs_to_json(design.network_pattern);
  doc["sensing_cost"] = design.sensing_cost;
  doc["networking_cost"] = design.networking_cost;
  doc["network_optimality"] =
      design.network_optimality == NetworkOptimality::exact ? "exact" : "two_approx";
  if (design.tree_cost) doc["tree_cost"] = *design.tree_cost;
  return doc.dump(2) + "\n";
}

}  // namespace sensornet
