#pragma once

#include <cstddef>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "framecomplex/budget.hpp"
#include "framecomplex/functor.hpp"
#include "framecomplex/poset.hpp"
#include "framecomplex/sequence_poset.hpp"
#include "framecomplex/sparse_matrix.hpp"

namespace framecomplex {

using Chain = std::vector<std::uint32_t>;

/// Free chain complex C_min .. C_max with boundary(k): C_k -> C_{k-1}.
/// boundary(min_degree) is the zero map to nothing.
struct ChainComplex {
  int min_degree = 0;
  std::vector<std::size_t> ranks;
  std::vector<SparseIntMatrix> boundaries;

  [[nodiscard]] int max_degree() const { return min_degree + static_cast<int>(ranks.size()) - 1; }
  [[nodiscard]] std::size_t rank(int k) const;
  /// Boundary out of degree k; a zero matrix outside the stored range.
  [[nodiscard]] SparseIntMatrix boundary(int k) const;
  /// Throws InternalInconsistency unless every composite boundary vanishes.
  void verify() const;
};

/// Order complex of a poset, chains listed lexicographically by element
/// index within each degree. Augmented complexes carry C_{-1} = Z.
struct OrderComplex {
  ChainComplex complex;
  std::vector<std::vector<Chain>> chains;  // chains[k] for k >= 0
  bool augmented = false;

  [[nodiscard]] std::optional<std::uint32_t> index_of(const Chain& c) const;
  std::vector<std::unordered_map<Chain, std::uint32_t, SequenceHash>> index;
};

/// Chains x_0 < ... < x_k for k <= max_dim.
std::vector<std::vector<Chain>> enumerate_chains(const FinitePoset& p, int max_dim,
                                                 const Budget& budget = {});
OrderComplex order_complex(const FinitePoset& p, int max_dim, bool augmented,
                           const Budget& budget = {});

/// Cellular complex of a chain-condition sequence poset: cells of degree k
/// are the members of length k+1, with boundary sum (-1)^i (v without v_i).
struct CellularComplex {
  ChainComplex complex;
  std::vector<std::vector<std::uint32_t>> cells;  // member indices by degree
  std::vector<std::uint32_t> position;            // member index -> slot in its degree
  bool augmented = false;
};

/// Throws InvalidInput when the chain condition fails.
CellularComplex cellular_complex(const SequencePoset& f, int max_dim, bool augmented,
                                 const Budget& budget = {});

/// C_n(X, F) = sum over chains x_0 < ... < x_n of F(x_0); basis ordered by
/// chain, then coordinate. d_0 applies F(x_0 < x_1), d_i deletes x_i.
struct FunctorComplex {
  ChainComplex complex;
  std::vector<std::vector<Chain>> chains;
  std::vector<std::vector<std::size_t>> offsets;  // first basis slot per chain
};

FunctorComplex functor_complex(const CoefficientFunctor& f, int max_dim,
                               const Budget& budget = {});

}  // namespace framecomplex
