#include "framecomplex/functor.hpp"

#include <string>

#include "framecomplex/budget.hpp"

namespace framecomplex {

namespace {

std::string relation_name(const FinitePoset& p, std::uint32_t a, std::uint32_t b) {
  return p.label(a) + " < " + p.label(b);
}

}  // namespace

CoefficientFunctor::CoefficientFunctor(std::shared_ptr<const FinitePoset> poset,
                                       std::vector<std::size_t> ranks,
                                       std::map<Relation, IntMatrix> generating_maps)
    : poset_(std::move(poset)),
      ranks_(std::move(ranks)),
      maps_(std::move(generating_maps)),
      cache_(std::make_shared<Cache>()) {
  if (ranks_.size() != poset_->size()) throw InvalidInput("CoefficientFunctor: rank list size mismatch");
  if (maps_.size() != poset_->relations().size())
    throw InvalidInput("CoefficientFunctor: need exactly one map per generating relation");
  for (const auto& [a, b] : poset_->relations()) {
    auto it = maps_.find({a, b});
    if (it == maps_.end())
      throw InvalidInput("CoefficientFunctor: missing map for " + relation_name(*poset_, a, b));
    if (it->second.rows() != ranks_[b] || it->second.cols() != ranks_[a])
      throw InvalidInput("CoefficientFunctor: wrong shape on " + relation_name(*poset_, a, b));
  }
}

CoefficientFunctor CoefficientFunctor::constant(std::shared_ptr<const FinitePoset> poset,
                                                std::size_t rank) {
  std::map<Relation, IntMatrix> maps;
  for (const auto& r : poset->relations()) maps.emplace(r, IntMatrix::identity(rank));
  std::vector<std::size_t> ranks(poset->size(), rank);
  return CoefficientFunctor(std::move(poset), std::move(ranks), std::move(maps));
}

CoefficientFunctor CoefficientFunctor::pullback(const CoefficientFunctor& g, const PosetMap& f) {
  if (&f.target() != &g.poset() && !(f.target() == g.poset()))
    throw InvalidInput("pullback: map target differs from functor domain");
  std::vector<std::size_t> ranks(f.source().size());
  for (std::uint32_t x = 0; x < ranks.size(); ++x) ranks[x] = g.rank(f(x));
  std::map<Relation, IntMatrix> maps;
  for (const auto& [a, b] : f.source().relations()) maps.emplace(Relation{a, b}, g.map(f(a), f(b)));
  return CoefficientFunctor(f.source_ptr(), std::move(ranks), std::move(maps));
}

bool CoefficientFunctor::is_zero() const {
  for (auto r : ranks_)
    if (r) return false;
  return true;
}

IntMatrix CoefficientFunctor::compose_via(std::uint32_t x, std::uint32_t c, std::uint32_t y) const {
  const IntMatrix& first = maps_.at({x, c});
  if (c == y) return first;
  return map(c, y) * first;
}

IntMatrix CoefficientFunctor::map(std::uint32_t x, std::uint32_t y) const {
  if (x == y) return IntMatrix::identity(ranks_[x]);
  if (auto it = maps_.find({x, y}); it != maps_.end()) return it->second;
  if (!poset_->less(x, y))
    throw InvalidInput("CoefficientFunctor::map: " + poset_->label(x) + " is not below " +
                       poset_->label(y));
  {
    std::lock_guard lock(cache_->mu);
    if (auto it = cache_->composites.find({x, y}); it != cache_->composites.end()) return it->second;
  }
  IntMatrix result;
  for (auto c : poset_->upper(x)) {
    if (poset_->leq(c, y)) {
      result = compose_via(x, c, y);
      break;
    }
  }
  std::lock_guard lock(cache_->mu);
  cache_->composites.emplace(Relation{x, y}, result);
  return result;
}

void CoefficientFunctor::validate() const {
  for (std::uint32_t x = 0; x < poset_->size(); ++x) {
    const auto& ups = poset_->upper(x);
    if (ups.size() < 2) continue;
    for (auto y : poset_->strictly_above(x)) {
      const IntMatrix reference = map(x, y);
      for (auto c : ups) {
        if (!poset_->leq(c, y)) continue;
        if (compose_via(x, c, y) != reference)
          throw InvalidInput("functoriality violated on " + poset_->label(x) + " < " +
                             poset_->label(c) + " <= " + poset_->label(y));
      }
    }
  }
}

LocalSystem::LocalSystem(std::shared_ptr<const FinitePoset> poset, std::size_t rank,
                         std::map<Relation, IntMatrix> generating_maps)
    : CoefficientFunctor(poset, std::vector<std::size_t>(poset->size(), rank),
                         std::move(generating_maps)),
      empty_rank_(poset->empty()) {
  check_invertible();
}

LocalSystem::LocalSystem(CoefficientFunctor f)
    : CoefficientFunctor(std::move(f)), empty_rank_(poset().empty()) {
  check_invertible();
}

LocalSystem LocalSystem::constant(std::shared_ptr<const FinitePoset> poset, std::size_t rank) {
  return LocalSystem(CoefficientFunctor::constant(std::move(poset), rank));
}

void LocalSystem::check_invertible() const {
  for (const auto& [rel, m] : generating_maps()) {
    if (m.rows() != m.cols())
      throw InvalidInput("LocalSystem: non-square map on " +
                         relation_name(poset(), rel.first, rel.second));
    const auto d = m.determinant();
    if (d != 1 && d != -1)
      throw InvalidInput("LocalSystem: map on " + relation_name(poset(), rel.first, rel.second) +
                         " is not invertible over Z");
  }
  if (!ranks().empty())
    for (auto r : ranks())
      if (r != ranks().front()) throw InvalidInput("LocalSystem: ranks differ between elements");
}

}  // namespace framecomplex
