#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace framecomplex {

/// Overflow-checked 64-bit helpers. Throw ArithmeticOverflow.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Row-major dense integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, std::int64_t fill = 0);
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static IntMatrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<std::int64_t> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] std::span<const std::int64_t> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] std::vector<std::int64_t> column(std::size_t c) const;

  [[nodiscard]] IntMatrix transposed() const;
  [[nodiscard]] bool is_zero() const;
  [[nodiscard]] bool is_identity() const;

  /// Exact product with overflow checks.
  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  [[nodiscard]] std::vector<std::int64_t> apply(std::span<const std::int64_t> v) const;

  /// Entrywise reduction into [0, m).
  [[nodiscard]] IntMatrix reduced_mod(std::int64_t m) const;
  /// Product reduced mod m after each accumulation (no overflow for small m).
  [[nodiscard]] static IntMatrix multiply_mod(const IntMatrix& a, const IntMatrix& b,
                                              std::int64_t m);

  /// Determinant by fraction-free (Bareiss) elimination.
  [[nodiscard]] std::int64_t determinant() const;
  /// Inverse over the integers; requires determinant +-1.
  [[nodiscard]] IntMatrix integer_inverse() const;

  /// Block-diagonal sum diag(a, b).
  [[nodiscard]] static IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
  [[nodiscard]] static IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);

  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

}  // namespace framecomplex
