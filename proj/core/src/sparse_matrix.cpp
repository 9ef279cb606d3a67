#include "framecomplex/sparse_matrix.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <string>

#include "framecomplex/budget.hpp"

namespace framecomplex {

namespace {

bool col_major_less(const MatrixEntry& a, const MatrixEntry& b) {
  return a.col != b.col ? a.col < b.col : a.row < b.row;
}

}  // namespace

SparseIntMatrix::SparseIntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows > UINT32_MAX || cols > UINT32_MAX) throw InvalidInput("SparseIntMatrix: dimension too large");
}

SparseIntMatrix SparseIntMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                               std::vector<MatrixEntry> entries) {
  SparseIntMatrix m(rows, cols);
  std::sort(entries.begin(), entries.end(), col_major_less);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.row >= rows || e.col >= cols) throw InvalidInput("SparseIntMatrix: entry out of range");
    if (i > 0 && entries[i - 1].row == e.row && entries[i - 1].col == e.col)
      throw InvalidInput("SparseIntMatrix: duplicate coordinate (" + std::to_string(e.row) + ", " +
                         std::to_string(e.col) + ")");
    if (e.value != 0) m.entries_.push_back(e);
  }
  return m;
}

SparseIntMatrix SparseIntMatrix::from_columns(std::size_t rows, std::vector<SparseColumn> columns) {
  SparseIntMatrix m(rows, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto& col = columns[c];
    std::sort(col.begin(), col.end());
    for (std::size_t i = 0; i < col.size();) {
      std::int64_t sum = 0;
      std::size_t j = i;
      for (; j < col.size() && col[j].first == col[i].first; ++j) sum = checked_add(sum, col[j].second);
      if (col[i].first >= rows) throw InvalidInput("SparseIntMatrix: row index out of range");
      if (sum != 0) m.entries_.push_back({col[i].first, static_cast<std::uint32_t>(c), sum});
      i = j;
    }
  }
  return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const IntMatrix& dense) {
  SparseIntMatrix m(dense.rows(), dense.cols());
  for (std::size_t c = 0; c < dense.cols(); ++c)
    for (std::size_t r = 0; r < dense.rows(); ++r)
      if (dense(r, c) != 0)
        m.entries_.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), dense(r, c)});
  return m;
}

SparseIntMatrix SparseIntMatrix::identity(std::size_t n) {
  SparseIntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.entries_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), 1});
  return m;
}

std::int64_t SparseIntMatrix::at(std::size_t r, std::size_t c) const {
  MatrixEntry key{static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), 0};
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key, col_major_less);
  if (it != entries_.end() && it->row == r && it->col == c) return it->value;
  return 0;
}

std::vector<SparseColumn> SparseIntMatrix::columns() const {
  std::vector<SparseColumn> out(cols_);
  for (const auto& e : entries_) out[e.col].emplace_back(e.row, e.value);
  return out;
}

IntMatrix SparseIntMatrix::to_dense() const {
  IntMatrix d(rows_, cols_);
  for (const auto& e : entries_) d(e.row, e.col) = e.value;
  return d;
}

SparseIntMatrix SparseIntMatrix::transposed() const {
  std::vector<MatrixEntry> t;
  t.reserve(entries_.size());
  for (const auto& e : entries_) t.push_back({e.col, e.row, e.value});
  return from_triplets(cols_, rows_, std::move(t));
}

SparseIntMatrix SparseIntMatrix::permuted(const std::vector<std::uint32_t>& row_perm,
                                          const std::vector<std::uint32_t>& col_perm) const {
  if (row_perm.size() != rows_ || col_perm.size() != cols_)
    throw InvalidInput("SparseIntMatrix::permuted: permutation size mismatch");
  std::vector<std::uint32_t> row_inv(rows_), col_inv(cols_);
  for (std::uint32_t i = 0; i < rows_; ++i) row_inv[row_perm[i]] = i;
  for (std::uint32_t j = 0; j < cols_; ++j) col_inv[col_perm[j]] = j;
  std::vector<MatrixEntry> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back({row_inv[e.row], col_inv[e.col], e.value});
  return from_triplets(rows_, cols_, std::move(out));
}

SparseIntMatrix operator*(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("SparseIntMatrix product: shape mismatch");
  const auto a_cols = a.columns();
  const auto b_cols = b.columns();
  std::vector<SparseColumn> out(b.cols_);
  for (std::size_t c = 0; c < b.cols_; ++c) {
    std::map<std::uint32_t, std::int64_t> acc;
    for (const auto& [k, w] : b_cols[c]) {
      for (const auto& [r, v] : a_cols[k]) acc[r] = checked_add(acc[r], checked_mul(v, w));
    }
    for (const auto& [r, v] : acc)
      if (v != 0) out[c].emplace_back(r, v);
  }
  return SparseIntMatrix::from_columns(a.rows_, std::move(out));
}

std::vector<std::int64_t> SparseIntMatrix::apply(const std::vector<std::int64_t>& v) const {
  if (v.size() != cols_) throw InvalidInput("SparseIntMatrix::apply: length mismatch");
  std::vector<std::int64_t> out(rows_, 0);
  for (const auto& e : entries_)
    if (v[e.col] != 0) out[e.row] = checked_add(out[e.row], checked_mul(e.value, v[e.col]));
  return out;
}

void write_coordinate_text(std::ostream& os, const SparseIntMatrix& m) {
  os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
  for (const auto& e : m.entries()) os << e.row << ' ' << e.col << ' ' << e.value << '\n';
}

SparseIntMatrix read_coordinate_text(std::istream& is) {
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(is >> rows >> cols >> nnz)) throw InvalidInput("coordinate text: missing 'rows cols nnz' header");
  std::vector<MatrixEntry> entries;
  entries.reserve(nnz);
  for (std::size_t i = 0; i < nnz; ++i) {
    long long r = 0, c = 0, v = 0;
    if (!(is >> r >> c >> v)) throw InvalidInput("coordinate text: truncated entry list");
    if (r < 0 || c < 0) throw InvalidInput("coordinate text: negative index");
    entries.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), v});
  }
  return SparseIntMatrix::from_triplets(rows, cols, std::move(entries));
}

}  // namespace framecomplex
