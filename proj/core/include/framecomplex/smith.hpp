#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "framecomplex/budget.hpp"
#include "framecomplex/int_matrix.hpp"
#include "framecomplex/ring.hpp"
#include "framecomplex/sparse_matrix.hpp"

namespace framecomplex {

/// Finitely generated abelian group Z^free_rank + sum Z/torsion_i, with the
/// torsion list in invariant-factor form (each entry > 1 divides the next).
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<std::int64_t> torsion;

  [[nodiscard]] bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  [[nodiscard]] std::size_t generator_count() const { return free_rank + torsion.size(); }
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] nlohmann::json to_json() const;

  /// Builds the invariant-factor form from an arbitrary list of cyclic
  /// orders (entries equal to 1 are dropped, 0 means Z).
  static AbelianGroup from_cyclic_orders(std::span<const std::int64_t> orders);
  static AbelianGroup free(std::size_t rank) { return {rank, {}}; }
  [[nodiscard]] AbelianGroup direct_sum(const AbelianGroup& other) const;
  [[nodiscard]] AbelianGroup power(std::size_t copies) const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

struct SmithTransforms {
  IntMatrix u;
  IntMatrix u_inverse;
  IntMatrix v;
  IntMatrix v_inverse;
};

/// Invariant factors d_1 | d_2 | ... of a matrix, all positive, with
/// rank = diagonal.size(). When present, transforms satisfy U*A*V = D.
struct SmithDecomposition {
  std::vector<std::int64_t> diagonal;
  std::size_t rank = 0;
  std::optional<SmithTransforms> transforms;

  /// Cokernel Z^rows / im(A).
  [[nodiscard]] AbelianGroup cokernel(std::size_t rows) const;
};

/// Smith normal form. Without transforms a sparse unit-pivot elimination runs
/// first and only the remaining block is reduced densely; with transforms the
/// whole matrix is reduced densely and U*A*V = D is re-verified. Throws
/// BudgetExceeded when fill-in or the dense block exceeds budget.snf_limit.
SmithDecomposition smith_normal_form(const SparseIntMatrix& a, bool with_transforms = false,
                                     const Budget& budget = {});

/// Rank over the field with p elements. Throws InvalidInput if p is not prime.
std::size_t rank_mod_prime(const SparseIntMatrix& a, std::int64_t p);

/// A mod m has a right inverse over Z/m, decided by full row rank modulo
/// every prime divisor of m. Requires rows <= cols.
bool has_right_inverse_mod_m(const SparseIntMatrix& a, const ModulusRing& ring);

/// Same criterion on a small dense row-major matrix; returns false (rather
/// than throwing) when rows > cols.
bool dense_has_right_inverse_mod(std::span<const std::int64_t> row_major, std::size_t rows,
                                 std::size_t cols, const ModulusRing& ring);
std::size_t dense_rank_mod_prime(std::span<const std::int64_t> row_major, std::size_t rows,
                                 std::size_t cols, std::int64_t p);

}  // namespace framecomplex
