#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace sensornet {

using Index = std::size_t;
using Entry = std::pair<Index, Index>;

/// Zero/nonzero pattern of a matrix. Nonzeros are kept sorted row-major and
/// unique; indices are 0-based.
class StructuredMatrix {
 public:
  StructuredMatrix() = default;

  /// Throws Error(validation) on out-of-range or duplicate entries.
  StructuredMatrix(Index rows, Index cols, std::vector<Entry> nonzeros);

  static StructuredMatrix identity(Index n);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  const std::vector<Entry>& nonzeros() const noexcept { return nonzeros_; }
  std::size_t nonzero_count() const noexcept { return nonzeros_.size(); }

  bool contains(Index row, Index col) const;
  std::vector<Index> row_support(Index row) const;
  std::vector<Index> col_support(Index col) const;

  /// Copy with one extra nonzero (no-op if already present).
  StructuredMatrix with(Index row, Index col) const;

  friend bool operator==(const StructuredMatrix&, const StructuredMatrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<Entry> nonzeros_;
};

}  // namespace sensornet
