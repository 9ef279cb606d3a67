#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "framecomplex/int_matrix.hpp"
#include "framecomplex/poset.hpp"

namespace framecomplex {

/// Functor from a poset to free abelian groups. Value at x is Z^rank(x);
/// the structure map of each generating relation a < b is a rank(b) x rank(a)
/// matrix. Maps along longer relations are composites, memoized on demand.
class CoefficientFunctor {
 public:
  using Relation = FinitePoset::Relation;

  /// generating_maps must have one entry per relation of the poset.
  CoefficientFunctor(std::shared_ptr<const FinitePoset> poset, std::vector<std::size_t> ranks,
                     std::map<Relation, IntMatrix> generating_maps);

  static CoefficientFunctor constant(std::shared_ptr<const FinitePoset> poset,
                                     std::size_t rank = 1);
  /// G o f on the source of f.
  static CoefficientFunctor pullback(const CoefficientFunctor& g, const PosetMap& f);

  [[nodiscard]] const FinitePoset& poset() const { return *poset_; }
  [[nodiscard]] const std::shared_ptr<const FinitePoset>& poset_ptr() const { return poset_; }
  [[nodiscard]] std::size_t rank(std::uint32_t x) const { return ranks_[x]; }
  [[nodiscard]] const std::vector<std::size_t>& ranks() const { return ranks_; }
  [[nodiscard]] const std::map<Relation, IntMatrix>& generating_maps() const { return maps_; }
  [[nodiscard]] bool is_zero() const;

  /// F(x <= y). Throws InvalidInput when x is not below y.
  [[nodiscard]] IntMatrix map(std::uint32_t x, std::uint32_t y) const;

  /// Checks path independence: for every x < y, every upper neighbour c of x
  /// with c <= y yields the same F(c <= y) F(x < c). Throws InvalidInput
  /// naming the offending triangle.
  void validate() const;

 private:
  [[nodiscard]] IntMatrix compose_via(std::uint32_t x, std::uint32_t c, std::uint32_t y) const;

  std::shared_ptr<const FinitePoset> poset_;
  std::vector<std::size_t> ranks_;
  std::map<Relation, IntMatrix> maps_;
  struct Cache {
    std::mutex mu;
    std::map<Relation, IntMatrix> composites;
  };
  std::shared_ptr<Cache> cache_;
};

/// Functor whose structure maps are all invertible over Z.
class LocalSystem : public CoefficientFunctor {
 public:
  LocalSystem(std::shared_ptr<const FinitePoset> poset, std::size_t rank,
              std::map<Relation, IntMatrix> generating_maps);
  explicit LocalSystem(CoefficientFunctor f);

  static LocalSystem constant(std::shared_ptr<const FinitePoset> poset, std::size_t rank = 1);
  [[nodiscard]] std::size_t fibre_rank() const { return empty_rank_ ? 0 : rank(0); }

 private:
  void check_invertible() const;
  bool empty_rank_ = false;
};

}  // namespace framecomplex
