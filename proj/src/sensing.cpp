#include "sensornet/sensing.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "sensornet/error.hpp"
#include "sensornet/matching.hpp"

namespace sensornet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string list_one_based(const std::vector<Index>& items) {
  std::string out = "{";
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(items[k] + 1);
  }
  return out + "}";
}

void require_feasible(const CostMatrix& cost) {
  if (auto violator = hall_violator(cost.allowed_columns(), cost.size())) {
    throw Error(ErrorKind::infeasible,
                "no sensor assignment covers every parent SCC: sensors " +
                    list_one_based(*violator) +
                    " can reach fewer parent SCCs than there are sensors in the set");
  }
}

SensorAssignment finish(const ParentCostMatrix& costs, std::vector<Index> parent_of_sensor) {
  SensorAssignment out;
  out.measured_state.reserve(parent_of_sensor.size());
  for (Index i = 0; i < parent_of_sensor.size(); ++i) {
    out.total_cost += *costs.cost.at(i, parent_of_sensor[i]);
    out.measured_state.push_back(costs.argmin(i, parent_of_sensor[i]));
  }
  out.parent_of_sensor = std::move(parent_of_sensor);
  return out;
}

}  // namespace

CostMatrix CostMatrix::dense(const std::vector<std::vector<double>>& rows) {
  CostMatrix out(rows.size());
  for (Index i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw Error(ErrorKind::shape, "cost matrix must be square");
    for (Index j = 0; j < rows.size(); ++j) out.set(i, j, rows[i][j]);
  }
  return out;
}

std::vector<std::vector<Index>> CostMatrix::allowed_columns() const {
  std::vector<std::vector<Index>> out(size_);
  for (Index i = 0; i < size_; ++i) {
    for (Index j = 0; j < size_; ++j) {
      if (allowed(i, j)) out[i].push_back(j);
    }
  }
  return out;
}

ParentCostMatrix ParentCostMatrix::from_costs(CostMatrix cost) {
  ParentCostMatrix out;
  const Index m = cost.size();
  out.cost = std::move(cost);
  out.argmin_state.resize(m * m);
  out.parent_states.resize(m);
  for (Index j = 0; j < m; ++j) {
    out.parent_states[j] = {j};
    for (Index i = 0; i < m; ++i) out.argmin_state[i * m + j] = j;
  }
  return out;
}

ParentCostMatrix build_parent_cost_matrix(const ProblemInstance& instance,
                                          const SccPartition& partition) {
  const auto parents = partition.parents();
  const Index m = instance.m;
  if (parents.size() != m) {
    throw Error(ErrorKind::infeasible,
                "the system has " + std::to_string(parents.size()) + " parent SCCs but " +
                    std::to_string(m) + " sensors; one sensor per parent SCC is required");
  }

  ParentCostMatrix out;
  out.cost = CostMatrix(m);
  out.argmin_state.assign(m * m, 0);
  for (Index k : parents) out.parent_states.push_back(partition.components[k]);

  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < m; ++j) {
      // Members are sorted, so strict < keeps the lowest state index on ties.
      std::optional<double> best;
      for (Index state : out.parent_states[j]) {
        auto it = instance.sensing_cost.find({i, state});
        if (it == instance.sensing_cost.end()) continue;
        if (!best || it->second < *best) {
          best = it->second;
          out.argmin_state[i * m + j] = state;
        }
      }
      out.cost.set(i, j, best);
    }
  }
  return out;
}

SensorAssignment hungarian_solve(const ParentCostMatrix& costs) {
  const CostMatrix& c = costs.cost;
  const Index m = c.size();
  require_feasible(c);

  // Shortest augmenting paths with row/column potentials; index 0 is a
  // sentinel column, rows and columns are 1-based inside the loop.
  std::vector<double> u(m + 1, 0.0), v(m + 1, 0.0), minv(m + 1);
  std::vector<Index> row_of_col(m + 1, 0), way(m + 1, 0);
  std::vector<bool> used(m + 1);

  for (Index row = 1; row <= m; ++row) {
    row_of_col[0] = row;
    Index col0 = 0;
    std::ranges::fill(minv, kInf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[col0] = true;
      const Index row0 = row_of_col[col0];
      double delta = kInf;
      Index col1 = 0;
      for (Index col = 1; col <= m; ++col) {
        if (used[col]) continue;
        if (const auto& entry = c.at(row0 - 1, col - 1)) {
          const double reduced = *entry - u[row0] - v[col];
          if (reduced < minv[col]) {
            minv[col] = reduced;
            way[col] = col0;
          }
        }
        if (minv[col] < delta) {
          delta = minv[col];
          col1 = col;
        }
      }
      if (col1 == 0) {
        // Unreachable after the Hall check above.
        throw Error(ErrorKind::infeasible, "assignment search exhausted without augmenting path");
      }
      for (Index col = 0; col <= m; ++col) {
        if (used[col]) {
          u[row_of_col[col]] += delta;
          v[col] -= delta;
        } else {
          minv[col] -= delta;
        }
      }
      col0 = col1;
    } while (row_of_col[col0] != 0);
    do {
      const Index col1 = way[col0];
      row_of_col[col0] = row_of_col[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<Index> parent_of_sensor(m);
  for (Index col = 1; col <= m; ++col) parent_of_sensor[row_of_col[col] - 1] = col - 1;
  return finish(costs, std::move(parent_of_sensor));
}

SensorAssignment brute_force_assignment(const ParentCostMatrix& costs) {
  const CostMatrix& c = costs.cost;
  const Index m = c.size();
  if (m > kBruteForceAssignmentLimit) {
    throw Error(ErrorKind::guard, "brute-force assignment limited to m <= " +
                                      std::to_string(kBruteForceAssignmentLimit) + ", got " +
                                      std::to_string(m));
  }
  std::vector<Index> perm(m);
  std::iota(perm.begin(), perm.end(), Index{0});
  std::optional<std::vector<Index>> best;
  double best_cost = kInf;
  do {
    double total = 0.0;
    bool allowed = true;
    for (Index i = 0; i < m && allowed; ++i) {
      if (const auto& entry = c.at(i, perm[i])) {
        total += *entry;
      } else {
        allowed = false;
      }
    }
    if (allowed && (!best || total < best_cost)) {
      best = perm;
      best_cost = total;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!best) require_feasible(c);
  return finish(costs, std::move(*best));
}

StructuredMatrix recover_measurement_structure(const SensorAssignment& assignment, Index n) {
  std::vector<Entry> nz;
  nz.reserve(assignment.measured_state.size());
  for (Index i = 0; i < assignment.measured_state.size(); ++i) {
    nz.emplace_back(i, assignment.measured_state[i]);
  }
  return StructuredMatrix(assignment.measured_state.size(), n, std::move(nz));
}

}  // namespace sensornet
