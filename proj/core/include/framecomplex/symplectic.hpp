#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "framecomplex/int_matrix.hpp"
#include "framecomplex/ring.hpp"
#include "framecomplex/sequence_poset.hpp"

namespace framecomplex {

using Vector = std::vector<std::int64_t>;

/// R^{2n} with the form h(x, y) = x^t Q y.
class SymplecticSpace {
 public:
  SymplecticSpace(ModulusRing ring, std::size_t n);

  [[nodiscard]] const ModulusRing& ring() const { return ring_; }
  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::size_t dimension() const { return 2 * n_; }
  [[nodiscard]] const IntMatrix& q() const { return q_; }

  /// Throws InvalidInput on a length mismatch.
  [[nodiscard]] std::int64_t form(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const;
  /// h'(x, y) = sum x_{2i-1} y_{2i} + y_{2i-1} x_{2i}.
  [[nodiscard]] std::int64_t form_prime(std::span<const std::int64_t> x,
                                        std::span<const std::int64_t> y) const;

  [[nodiscard]] Vector basis_vector(std::size_t i) const;  // 1-based, e_i
  [[nodiscard]] Vector reduce(std::span<const std::int64_t> v) const;

  friend bool operator==(const SymplecticSpace& a, const SymplecticSpace& b) {
    return a.ring_ == b.ring_ && a.n_ == b.n_;
  }

 private:
  ModulusRing ring_;
  std::size_t n_;
  IntMatrix q_;
};

/// Base-m digits, coordinate 0 most significant. Throws InvalidInput when m^d
/// does not fit in 64 bits.
Symbol encode_vector(const ModulusRing& ring, std::span<const std::int64_t> v);
Vector decode_vector(const ModulusRing& ring, std::size_t dimension, Symbol code);
/// A pair (x, y) of R^d, coded as code(x) * m^d + code(y).
Symbol encode_pair(const ModulusRing& ring, std::span<const std::int64_t> x, std::span<const std::int64_t> y);
std::pair<Vector, Vector> decode_pair(const ModulusRing& ring, std::size_t dimension, Symbol code);
/// m^d, or InvalidInput when it overflows.
std::uint64_t vector_count(const ModulusRing& ring, std::size_t dimension);

bool is_symplectic(const SymplecticSpace& space, const IntMatrix& a);

class SymplecticMatrix {
 public:
  /// Throws InvalidInput unless a^t Q a = Q over the ring.
  SymplecticMatrix(SymplecticSpace space, IntMatrix a);
  static SymplecticMatrix identity(const SymplecticSpace& space);

  [[nodiscard]] const SymplecticSpace& space() const { return space_; }
  [[nodiscard]] const IntMatrix& entries() const { return a_; }
  [[nodiscard]] Vector apply(std::span<const std::int64_t> v) const;
  /// A^{-1} = -Q A^t Q.
  [[nodiscard]] SymplecticMatrix inverse() const;

  friend SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b);
  friend bool operator==(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    return a.space_ == b.space_ && a.a_ == b.a_;
  }

 private:
  SymplecticMatrix(SymplecticSpace space, IntMatrix a, bool /*trusted*/);
  SymplecticSpace space_;
  IntMatrix a_;
};

/// sigma(2i) = 2i - 1, sigma(2i - 1) = 2i (1-based).
std::size_t sigma(std::size_t i);

/// E_{i,j}(r), 1-based, i != j. Throws InternalInconsistency if the result is
/// not symplectic.
SymplecticMatrix elementary_generator(const SymplecticSpace& space, std::size_t i, std::size_t j,
                                      std::int64_t r);
/// All E_{i,j}(r) with r != 0, ordered by (i, j, r).
std::vector<SymplecticMatrix> elementary_generators(const SymplecticSpace& space);

/// diag(A, I_2) in Sp(2n + 2, R).
SymplecticMatrix stabilization(const SymplecticMatrix& a);

/// Inverse of a square matrix over Z/m (per prime power, then CRT); nullopt
/// when it is not invertible.
std::optional<IntMatrix> inverse_mod(const IntMatrix& a, const ModulusRing& ring);

/// Basis c with h(b_i, c_j) = delta_ij. Throws InvalidInput unless b is a basis.
std::vector<Vector> dual_basis(const SymplecticSpace& space, const std::vector<Vector>& b);

struct PerpResult {
  std::vector<Vector> generators;
  /// Codes of all kernel elements, ascending.
  std::vector<Symbol> elements;
};

/// <S>^perp by exhaustive kernel solving over R^{2n}; the generating set is
/// built greedily in code order.
PerpResult perp(const SymplecticSpace& space, const std::vector<Vector>& s, const Budget& budget = {});

}  // namespace framecomplex
