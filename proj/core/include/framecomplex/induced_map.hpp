#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "framecomplex/budget.hpp"
#include "framecomplex/chain_complex.hpp"
#include "framecomplex/int_matrix.hpp"
#include "framecomplex/poset.hpp"
#include "framecomplex/sequence_poset.hpp"
#include "framecomplex/smith.hpp"

namespace framecomplex {

/// Explicit generators of H_k of a free complex. Generator j has order
/// orders[j] (0 for infinite order); torsion generators come first, in
/// invariant-factor order, as in AbelianGroup.
struct HomologyBasis {
  int degree = 0;
  AbelianGroup group;
  std::vector<std::int64_t> orders;
  /// generators x chain rank: coordinates of a cycle in the generators.
  IntMatrix coordinates;
  /// chain rank x generators: representative cycles.
  IntMatrix cycles;
};

/// Requires dense Smith transforms of boundary(k) and of the boundaries in
/// cycle coordinates; throws BudgetExceeded above budget.basis_dimension_limit.
HomologyBasis homology_basis(const ChainComplex& c, int k, const Budget& budget = {});

/// A homomorphism between finitely generated abelian groups in the bases
/// above; column j is the image of source generator j.
struct InducedMap {
  int degree = 0;
  AbelianGroup source;
  AbelianGroup target;
  std::vector<std::int64_t> target_orders;
  IntMatrix matrix;

  [[nodiscard]] bool surjective() const;
  /// Surjective between isomorphic groups (finitely generated abelian groups
  /// are Hopfian).
  [[nodiscard]] bool isomorphism() const;
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Columns of m generate the target group with the given generator orders.
bool generates(const IntMatrix& m, const std::vector<std::int64_t>& target_orders);

/// H_k(phi) for a chain map phi_k: C_k(X) -> C_k(Y).
InducedMap induced_on_homology(const ChainComplex& x, const ChainComplex& y,
                               const SparseIntMatrix& phi_k, int k, const Budget& budget = {});
InducedMap induced_on_homology(const HomologyBasis& bx, const HomologyBasis& by,
                               const SparseIntMatrix& phi_k);

/// Chain map of an order-preserving assignment in degree k: a chain goes to
/// its image chain, or to 0 when two entries collide. Degree -1 is the
/// identity between augmented complexes.
SparseIntMatrix chain_map_order(const OrderComplex& x, const OrderComplex& y,
                                const std::vector<std::uint32_t>& assignment, int k);

/// Chain map of a length-preserving member map commuting with deletions
/// (inclusions, sections l_s0 and projections p).
SparseIntMatrix chain_map_cellular(const CellularComplex& x, const CellularComplex& y,
                                   const std::vector<std::uint32_t>& member_map, int k);

/// f_* in degree k on (reduced when augmented) integer homology of order complexes.
InducedMap induced_map(const PosetMap& f, int k, bool reduced, const Budget& budget = {});

/// Member map between chain-condition sequence posets, checked for length
/// preservation and compatibility with deletions.
InducedMap induced_map_cellular(const SequencePoset& x, const SequencePoset& y,
                                const std::vector<std::uint32_t>& member_map, int k, bool reduced,
                                const Budget& budget = {});

/// Index map of the inclusion of sub into ambient (every member must occur).
std::vector<std::uint32_t> inclusion_map(const SequencePoset& sub, const SequencePoset& ambient);

}  // namespace framecomplex
