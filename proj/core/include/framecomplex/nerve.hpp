#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "framecomplex/budget.hpp"
#include "framecomplex/criteria.hpp"
#include "framecomplex/sequence_poset.hpp"
#include "framecomplex/symplectic.hpp"

namespace framecomplex {

/// X = union of pieces X_v over v in F, with v <= w implying X_w in X_v.
/// pieces[i] belongs to index.member(i).
struct PosetCover {
  SequencePoset index;
  SequencePoset total;
  std::vector<SequencePoset> pieces;
  int l = 0;
};

/// Throws InvalidInput when the union, monotonicity or chain conditions fail.
void validate_cover(const PosetCover& cover);

/// X as the union of the pieces, ordered by length then lexicographically.
SequencePoset union_of(const std::vector<SequencePoset>& pieces);

/// All members of length <= k, everywhere.
PosetCover truncate_cover(const PosetCover& cover, std::size_t k);

/// alpha_x = { v in F : x in X_v } as a subposet of F.
SequencePoset alpha(const PosetCover& cover, std::uint32_t x);
std::vector<SequencePoset> all_alphas(const PosetCover& cover);

struct NerveOptions {
  /// Z is built in full up to this size; above it, fibers are sampled.
  std::size_t full_incidence_limit = 20'000;
  std::size_t fiber_samples = 24;
  std::uint64_t seed = 0;
};

/// Nerve theorem for posets: hypotheses checked by homology, then
/// H_k(F) = H_k(X) for k <= l, plus the fiber identifications in Z.
CriterionReport verify_poset_nerve(const PosetCover& cover, const NerveOptions& options = {},
                                   const Budget& budget = {});

/// Face poset of the simplicial complex generated by facets (vertex lists).
SequencePoset simplicial_closure(const std::vector<std::vector<Symbol>>& facets, const Budget& budget = {});

/// Nerve of a family of subcomplexes, members being sorted index tuples of
/// size <= max_size with nonempty intersection.
SequencePoset nerve_of(const std::vector<SequencePoset>& pieces, std::size_t max_size, const Budget& budget = {});

/// Classical nerve theorem for a cover of K by subcomplexes.
CriterionReport classical_nerve(const SequencePoset& k, const std::vector<SequencePoset>& pieces, int l,
                                const Budget& budget = {});

/// Surjectivity check: hypotheses, (l-1)-acyclicity of X and surjectivity of the sum
/// of H_l(X_v) -> H_l(X) over |v| = 1 (unreduced at l = 0). cones maps
/// length-one members of F (by index) to Y_v.
CriterionReport verify_surjectivity(const PosetCover& cover,
                                    const std::map<std::uint32_t, SequencePoset>& cones = {},
                                    const Budget& budget = {});

/// (l_{s0})_*: H_k(F) -> H_k(F<S>) is an isomorphism for k <= n, given that
/// every F_v is (n - |v|)-acyclic.
CriterionReport verify_maazen5(const SequencePoset& f, std::size_t set_size, std::size_t s0, int n,
                               const Budget& budget = {});

/// Covers from the connectivity proofs. Members are truncated to length
/// max_length. b-w1: F = U(R^{2n}), X_v = IU cap U_v cap O(<v>^perp).
/// b-w2: F = IU(R^{2n}), X_v = HU cap MU_v.
PosetCover bw1_cover(const SymplecticSpace& space, int l, std::size_t max_length, const Budget& budget = {});
PosetCover bw2_cover(const SymplecticSpace& space, int l, std::size_t max_length, const Budget& budget = {});

/// Random cover of a random simplicial complex by closed facets, indexed by
/// the facet tuples with nonempty intersection. Valid for every l.
PosetCover random_facet_cover(std::uint64_t seed, std::size_t vertices, std::size_t facets, int l,
                              const Budget& budget = {});

}  // namespace framecomplex
