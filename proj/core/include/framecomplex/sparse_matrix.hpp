#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "framecomplex/int_matrix.hpp"

namespace framecomplex {

struct MatrixEntry {
  std::uint32_t row;
  std::uint32_t col;
  std::int64_t value;
  friend bool operator==(const MatrixEntry&, const MatrixEntry&) = default;
};

using SparseColumn = std::vector<std::pair<std::uint32_t, std::int64_t>>;

/// Coordinate-list integer matrix. Entries are kept sorted by (col, row),
/// with no duplicate coordinates and no stored zeros.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols);

  /// Rejects duplicate coordinates and out-of-range indices; drops zeros.
  static SparseIntMatrix from_triplets(std::size_t rows, std::size_t cols,
                                       std::vector<MatrixEntry> entries);
  /// Columns given as (row, value) lists; duplicates within a column are summed.
  static SparseIntMatrix from_columns(std::size_t rows, std::vector<SparseColumn> columns);
  static SparseIntMatrix from_dense(const IntMatrix& dense);
  static SparseIntMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] std::size_t nnz() const { return entries_.size(); }
  [[nodiscard]] const std::vector<MatrixEntry>& entries() const { return entries_; }

  [[nodiscard]] std::int64_t at(std::size_t r, std::size_t c) const;
  [[nodiscard]] std::vector<SparseColumn> columns() const;
  [[nodiscard]] IntMatrix to_dense() const;
  [[nodiscard]] SparseIntMatrix transposed() const;
  /// Result(i, j) = this(row_perm[i], col_perm[j]).
  [[nodiscard]] SparseIntMatrix permuted(const std::vector<std::uint32_t>& row_perm,
                                         const std::vector<std::uint32_t>& col_perm) const;
  friend SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b);
  [[nodiscard]] std::vector<std::int64_t> apply(const std::vector<std::int64_t>& v) const;
  [[nodiscard]] bool is_zero() const { return entries_.empty(); }

  friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<MatrixEntry> entries_;
};

/// Coordinate text: "rows cols nnz" header, then "row col value" per line
/// (0-based indices).
void write_coordinate_text(std::ostream& os, const SparseIntMatrix& m);
SparseIntMatrix read_coordinate_text(std::istream& is);

}  // namespace framecomplex
