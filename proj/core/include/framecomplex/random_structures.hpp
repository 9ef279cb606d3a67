#pragma once

#include <cstdint>
#include <memory>
#include <random>

#include "framecomplex/functor.hpp"
#include "framecomplex/poset.hpp"
#include "framecomplex/sequence_poset.hpp"

namespace framecomplex {

using Rng = std::mt19937_64;

/// Relations i < j (i < j as indices) kept independently with probability
/// density. Labels are "p0", "p1", ...
FinitePoset random_poset(Rng& rng, std::size_t size, double density);

/// A random order-preserving map X -> Y: the assignment is drawn first and a
/// relation a < b of X is only offered when f(a) <= f(b).
PosetMap random_poset_map(Rng& rng, std::size_t source_size, std::size_t target_size, double density);

/// Functor with F(x) = Z^{r_x} for ht(x) < zero_height and 0 above, built as
/// M_{a<b} = P_b Q_a with Q_b P_b = I so that composites agree.
CoefficientFunctor random_height_functor(Rng& rng, std::shared_ptr<const FinitePoset> poset,
                                         std::size_t max_extra_rank, int zero_height);

/// Random invertible integer matrix (product of elementary matrices and a
/// sign change).
IntMatrix random_unimodular_matrix(Rng& rng, std::size_t rank);

/// Height-one poset (bottoms below random tops); every assignment of
/// invertible matrices is a local system.
LocalSystem random_crown_local_system(Rng& rng, std::size_t bottoms, std::size_t tops, std::size_t rank);

/// Six-element model of the circle a0 < b0 > a1 < b1 > a2 < b2 > a0 with the
/// given monodromy on the closing relation and identities elsewhere.
LocalSystem hexagon_local_system(const IntMatrix& monodromy);
std::shared_ptr<const FinitePoset> hexagon_poset();

/// Closure under subsequences of random sequences over {0..ground-1}.
SequencePoset random_chain_condition_poset(Rng& rng, std::size_t ground, std::size_t seeds, std::size_t max_length);

/// Proper faces of the simplex on vertices 0..d (boundary sphere S^{d-1}).
FinitePoset simplex_boundary_poset(std::size_t d);

}  // namespace framecomplex
