#include "framecomplex/random_structures.hpp"

#include <algorithm>
#include <set>

namespace framecomplex {

namespace {

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

bool coin(Rng& rng, double p) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p; }

std::vector<std::string> plain_labels(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

FinitePoset random_poset(Rng& rng, std::size_t size, double density) {
  std::vector<FinitePoset::Relation> rel;
  for (std::uint32_t j = 0; j < size; ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      if (coin(rng, density)) rel.emplace_back(i, j);
  return FinitePoset(plain_labels(size, "p"), std::move(rel));
}

PosetMap random_poset_map(Rng& rng, std::size_t source_size, std::size_t target_size, double density) {
  if (target_size == 0 && source_size > 0) throw InvalidInput("random_poset_map: empty target");
  auto y = std::make_shared<const FinitePoset>(random_poset(rng, target_size, density));
  std::vector<std::uint32_t> assignment(source_size);
  for (auto& a : assignment) a = static_cast<std::uint32_t>(uniform(rng, 0, target_size - 1));
  std::vector<FinitePoset::Relation> rel;
  for (std::uint32_t j = 0; j < source_size; ++j)
    for (std::uint32_t i = 0; i < j; ++i)
      if (y->leq(assignment[i], assignment[j]) && coin(rng, density)) rel.emplace_back(i, j);
  auto x = std::make_shared<const FinitePoset>(plain_labels(source_size, "x"), std::move(rel));
  return PosetMap(x, y, std::move(assignment));
}

CoefficientFunctor random_height_functor(Rng& rng, std::shared_ptr<const FinitePoset> poset,
                                         std::size_t max_extra_rank, int zero_height) {
  const auto ht = HeightFunction::standard(poset);
  const std::size_t base = uniform(rng, 1, 2);
  std::vector<std::size_t> ranks(poset->size(), 0);
  std::vector<IntMatrix> q(poset->size());
  std::uniform_int_distribution<int> entry(-2, 2);
  for (std::uint32_t x = 0; x < poset->size(); ++x) {
    if (ht(x) >= zero_height) continue;
    ranks[x] = base + uniform(rng, 0, max_extra_rank);
    q[x] = IntMatrix(base, ranks[x], 0);
    for (std::size_t i = 0; i < base; ++i) {
      q[x](i, i) = 1;
      for (std::size_t j = base; j < ranks[x]; ++j) q[x](i, j) = entry(rng);
    }
  }
  std::map<FinitePoset::Relation, IntMatrix> maps;
  for (const auto& [a, b] : poset->relations()) {
    IntMatrix m(ranks[b], ranks[a], 0);
    if (ranks[a] > 0 && ranks[b] > 0)
      for (std::size_t i = 0; i < base; ++i)
        for (std::size_t j = 0; j < ranks[a]; ++j) m(i, j) = q[a](i, j);
    maps.emplace(FinitePoset::Relation{a, b}, std::move(m));
  }
  return CoefficientFunctor(std::move(poset), std::move(ranks), std::move(maps));
}

IntMatrix random_unimodular_matrix(Rng& rng, std::size_t rank) {
  IntMatrix m = IntMatrix::identity(rank);
  if (rank == 0) return m;
  std::uniform_int_distribution<int> entry(-2, 2);
  for (std::size_t step = 0; step < 3 * rank; ++step) {
    const auto i = uniform(rng, 0, rank - 1);
    const auto j = uniform(rng, 0, rank - 1);
    if (i == j) continue;
    const auto c = entry(rng);
    for (std::size_t k = 0; k < rank; ++k) m(i, k) += c * m(j, k);
  }
  if (coin(rng, 0.5))
    for (std::size_t k = 0; k < rank; ++k) m(0, k) = -m(0, k);
  return m;
}

LocalSystem random_crown_local_system(Rng& rng, std::size_t bottoms, std::size_t tops, std::size_t rank) {
  if (bottoms == 0 || tops == 0) throw InvalidInput("random_crown_local_system: need bottoms and tops");
  std::vector<FinitePoset::Relation> rel;
  for (std::uint32_t b = 0; b < bottoms; ++b) {
    std::set<std::uint32_t> above;
    above.insert(static_cast<std::uint32_t>(uniform(rng, 0, tops - 1)));
    for (std::uint32_t t = 0; t < tops; ++t)
      if (coin(rng, 0.4)) above.insert(t);
    for (auto t : above) rel.emplace_back(b, static_cast<std::uint32_t>(bottoms + t));
  }
  // Connect every top so the poset stays connected.
  for (std::uint32_t t = 0; t < tops; ++t) rel.emplace_back(static_cast<std::uint32_t>(t % bottoms),
                                                             static_cast<std::uint32_t>(bottoms + t));
  for (std::uint32_t b = 1; b < bottoms; ++b) rel.emplace_back(b, static_cast<std::uint32_t>(bottoms));
  std::sort(rel.begin(), rel.end());
  rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
  auto labels = plain_labels(bottoms, "a");
  for (auto& l : plain_labels(tops, "b")) labels.push_back(l);
  auto p = std::make_shared<const FinitePoset>(std::move(labels), rel);
  std::map<FinitePoset::Relation, IntMatrix> maps;
  for (const auto& r : p->relations()) maps.emplace(r, random_unimodular_matrix(rng, rank));
  return LocalSystem(p, rank, std::move(maps));
}

std::shared_ptr<const FinitePoset> hexagon_poset() {
  std::vector<FinitePoset::Relation> rel{{0, 3}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {0, 5}};
  return std::make_shared<const FinitePoset>(std::vector<std::string>{"a0", "a1", "a2", "b0", "b1", "b2"},
                                             rel);
}

LocalSystem hexagon_local_system(const IntMatrix& monodromy) {
  if (monodromy.rows() != monodromy.cols()) throw InvalidInput("hexagon_local_system: square matrix required");
  auto p = hexagon_poset();
  std::map<FinitePoset::Relation, IntMatrix> maps;
  for (const auto& r : p->relations())
    maps.emplace(r, r == FinitePoset::Relation{0, 5} ? monodromy : IntMatrix::identity(monodromy.rows()));
  return LocalSystem(p, monodromy.rows(), std::move(maps));
}

SequencePoset random_chain_condition_poset(Rng& rng, std::size_t ground, std::size_t seeds, std::size_t max_length) {
  if (ground == 0 || max_length == 0) throw InvalidInput("random_chain_condition_poset: empty ground");
  std::set<Sequence> all;
  for (std::size_t s = 0; s < seeds; ++s) {
    std::vector<Symbol> g(ground);
    for (std::size_t i = 0; i < ground; ++i) g[i] = i;
    std::shuffle(g.begin(), g.end(), rng);
    g.resize(uniform(rng, 1, std::min(ground, max_length)));
    for (std::uint32_t mask = 1; mask < (1u << g.size()); ++mask) {
      Sequence sub;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (mask & (1u << i)) sub.push_back(g[i]);
      all.insert(std::move(sub));
    }
  }
  std::vector<Sequence> members(all.begin(), all.end());
  std::stable_sort(members.begin(), members.end(),
                   [](const Sequence& a, const Sequence& b) { return a.size() < b.size(); });
  return SequencePoset(std::move(members));
}

FinitePoset simplex_boundary_poset(std::size_t d) {
  const std::size_t v = d + 1;
  if (v > 20) throw InvalidInput("simplex_boundary_poset: dimension too large");
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m + 1 < (1u << v); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](auto a, auto b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  std::map<std::uint32_t, std::uint32_t> pos;
  std::vector<std::string> labels;
  for (std::uint32_t i = 0; i < masks.size(); ++i) {
    pos[masks[i]] = i;
    std::string l = "{";
    for (std::size_t k = 0; k < v; ++k)
      if (masks[i] & (1u << k)) l += (l.size() > 1 ? "," : "") + std::to_string(k);
    labels.push_back(l + "}");
  }
  std::vector<FinitePoset::Relation> rel;
  for (std::uint32_t i = 0; i < masks.size(); ++i)
    for (std::size_t k = 0; k < v; ++k)
      if ((masks[i] & (1u << k)) && __builtin_popcount(masks[i]) > 1) rel.emplace_back(pos[masks[i] & ~(1u << k)], i);
  return FinitePoset(std::move(labels), std::move(rel));
}

}  // namespace framecomplex
