#include "framecomplex/int_matrix.hpp"

#include <sstream>
#include <utility>

#include "framecomplex/budget.hpp"

namespace framecomplex {

__extension__ using wide_int = __int128;


std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 addition overflow");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("int64 subtraction overflow");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 multiplication overflow");
  return r;
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidInput("IntMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<std::int64_t> IntMatrix::column(std::size_t c) const {
  std::vector<std::int64_t> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool IntMatrix::is_zero() const {
  for (auto v : data_)
    if (v != 0) return false;
  return true;
}

bool IntMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("IntMatrix product: shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::int64_t aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const std::int64_t bkj = b(k, j);
        if (bkj != 0) out(i, j) = checked_add(out(i, j), checked_mul(aik, bkj));
      }
    }
  }
  return out;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("IntMatrix sum: shape mismatch");
  IntMatrix out(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = checked_add(a.data_[i], b.data_[i]);
  return out;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw InvalidInput("IntMatrix difference: shape mismatch");
  IntMatrix out(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = checked_sub(a.data_[i], b.data_[i]);
  return out;
}

std::vector<std::int64_t> IntMatrix::apply(std::span<const std::int64_t> v) const {
  if (v.size() != cols_) throw InvalidInput("IntMatrix apply: length mismatch");
  std::vector<std::int64_t> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::int64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
      if ((*this)(r, c) != 0 && v[c] != 0) acc = checked_add(acc, checked_mul((*this)(r, c), v[c]));
    }
    out[r] = acc;
  }
  return out;
}

IntMatrix IntMatrix::reduced_mod(std::int64_t m) const {
  IntMatrix out = *this;
  for (auto& v : out.data_) {
    v %= m;
    if (v < 0) v += m;
  }
  return out;
}

IntMatrix IntMatrix::multiply_mod(const IntMatrix& a, const IntMatrix& b, std::int64_t m) {
  if (a.cols_ != b.rows_) throw InvalidInput("IntMatrix product: shape mismatch");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const std::int64_t aik = a(i, k) % m;
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) = (out(i, j) + aik * (b(k, j) % m)) % m;
    }
  return out.reduced_mod(m);
}

std::int64_t IntMatrix::determinant() const {
  if (rows_ != cols_) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  // Bareiss with 128-bit intermediates; every quotient is exact.
  std::vector<wide_int> a(data_.begin(), data_.end());
  auto at = [&](std::size_t r, std::size_t c) -> wide_int& { return a[r * n + c]; };
  int sign = 1;
  wide_int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t c = 0; c < n; ++c) std::swap(at(k, c), at(swap_row, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        wide_int num = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        at(i, j) = num / prev;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  wide_int det = at(n - 1, n - 1) * sign;
  if (det > INT64_MAX || det < INT64_MIN) throw ArithmeticOverflow("determinant overflow");
  return static_cast<std::int64_t>(det);
}

IntMatrix IntMatrix::integer_inverse() const {
  if (rows_ != cols_) throw InvalidInput("inverse of a non-square matrix");
  const std::size_t n = rows_;
  // Gauss-Jordan over Z restricted to unimodular input: each pivot column is
  // reduced by Euclidean row steps until a unit appears.
  IntMatrix a = *this;
  IntMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    while (true) {
      std::size_t best = n;
      for (std::size_t r = col; r < n; ++r) {
        if (a(r, col) == 0) continue;
        if (best == n || std::llabs(a(r, col)) < std::llabs(a(best, col))) best = r;
      }
      if (best == n) throw InvalidInput("matrix is not invertible over the integers");
      if (best != col) {
        for (std::size_t c = 0; c < n; ++c) {
          std::swap(a(best, c), a(col, c));
          std::swap(inv(best, c), inv(col, c));
        }
      }
      bool clean = true;
      for (std::size_t r = col + 1; r < n; ++r) {
        if (a(r, col) == 0) continue;
        const std::int64_t q = a(r, col) / a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
          a(r, c) = checked_sub(a(r, c), checked_mul(q, a(col, c)));
          inv(r, c) = checked_sub(inv(r, c), checked_mul(q, inv(col, c)));
        }
        if (a(r, col) != 0) clean = false;
      }
      if (clean) break;
    }
    const std::int64_t p = a(col, col);
    if (p != 1 && p != -1) throw InvalidInput("matrix is not invertible over the integers");
    if (p == -1) {
      for (std::size_t c = 0; c < n; ++c) {
        a(col, c) = -a(col, c);
        inv(col, c) = -inv(col, c);
      }
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    for (std::size_t r = 0; r < col; ++r) {
      const std::int64_t q = a(r, col);
      if (q == 0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) = checked_sub(a(r, c), checked_mul(q, a(col, c)));
        inv(r, c) = checked_sub(inv(r, c), checked_mul(q, inv(col, c)));
      }
    }
  }
  return inv;
}

IntMatrix IntMatrix::block_diagonal(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows_ + b.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r)
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) out(a.rows_ + r, a.cols_ + c) = b(r, c);
  return out;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw InvalidInput("hconcat: row mismatch");
  IntMatrix out(a.rows_, a.cols_ + b.cols_);
  for (std::size_t r = 0; r < a.rows_; ++r) {
    for (std::size_t c = 0; c < a.cols_; ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols_; ++c) out(r, a.cols_ + c) = b(r, c);
  }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ' ';
      os << (*this)(r, c);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace framecomplex
