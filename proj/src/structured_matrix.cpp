#include "sensornet/structured_matrix.hpp"

#include <algorithm>
#include <string>

#include "sensornet/error.hpp"

namespace sensornet {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::shape: return "shape";
    case ErrorKind::validation: return "validation";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::guard: return "guard";
    case ErrorKind::precondition: return "precondition";
    case ErrorKind::constraint: return "constraint";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::infeasible: return 2;
    case ErrorKind::guard: return 3;
    default: return 1;
  }
}

StructuredMatrix::StructuredMatrix(Index rows, Index cols, std::vector<Entry> nonzeros)
    : rows_(rows), cols_(cols), nonzeros_(std::move(nonzeros)) {
  for (const auto& [r, c] : nonzeros_) {
    if (r >= rows_ || c >= cols_) {
      throw Error(ErrorKind::validation, "nonzero (" + std::to_string(r + 1) + "," +
                                             std::to_string(c + 1) + ") outside " +
                                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }
  }
  std::ranges::sort(nonzeros_);
  if (auto dup = std::ranges::adjacent_find(nonzeros_); dup != nonzeros_.end()) {
    throw Error(ErrorKind::validation, "duplicate nonzero (" + std::to_string(dup->first + 1) +
                                           "," + std::to_string(dup->second + 1) + ")");
  }
}

StructuredMatrix StructuredMatrix::identity(Index n) {
  std::vector<Entry> diag;
  diag.reserve(n);
  for (Index i = 0; i < n; ++i) diag.emplace_back(i, i);
  return StructuredMatrix(n, n, std::move(diag));
}

bool StructuredMatrix::contains(Index row, Index col) const {
  return std::ranges::binary_search(nonzeros_, Entry{row, col});
}

std::vector<Index> StructuredMatrix::row_support(Index row) const {
  std::vector<Index> out;
  auto lo = std::ranges::lower_bound(nonzeros_, Entry{row, 0});
  for (; lo != nonzeros_.end() && lo->first == row; ++lo) out.push_back(lo->second);
  return out;
}

std::vector<Index> StructuredMatrix::col_support(Index col) const {
  std::vector<Index> out;
  for (const auto& [r, c] : nonzeros_) {
    if (c == col) out.push_back(r);
  }
  return out;
}

StructuredMatrix StructuredMatrix::with(Index row, Index col) const {
  if (contains(row, col)) return *this;
  auto nz = nonzeros_;
  nz.emplace_back(row, col);
  return StructuredMatrix(rows_, cols_, std::move(nz));
}

}  // namespace sensornet
