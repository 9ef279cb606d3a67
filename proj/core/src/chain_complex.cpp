#include "framecomplex/chain_complex.hpp"

#include <algorithm>
#include <string>

namespace framecomplex {

std::size_t ChainComplex::rank(int k) const {
  if (k < min_degree || k > max_degree()) return 0;
  return ranks[static_cast<std::size_t>(k - min_degree)];
}

SparseIntMatrix ChainComplex::boundary(int k) const {
  if (k > min_degree && k <= max_degree()) return boundaries[static_cast<std::size_t>(k - min_degree)];
  return SparseIntMatrix(rank(k - 1), rank(k));
}

void ChainComplex::verify() const {
  for (int k = min_degree + 2; k <= max_degree(); ++k) {
    if (!(boundary(k - 1) * boundary(k)).is_zero())
      throw InternalInconsistency("boundary squared is nonzero in degree " + std::to_string(k));
  }
}

std::optional<std::uint32_t> OrderComplex::index_of(const Chain& c) const {
  if (c.empty() || c.size() > index.size()) return std::nullopt;
  const auto& m = index[c.size() - 1];
  auto it = m.find(c);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

std::vector<std::vector<Chain>> enumerate_chains(const FinitePoset& p, int max_dim,
                                                 const Budget& budget) {
  std::vector<std::vector<Chain>> out;
  if (max_dim < 0 || p.empty()) return out;
  std::vector<std::vector<std::uint32_t>> above(p.size());
  for (std::uint32_t x = 0; x < p.size(); ++x) above[x] = p.strictly_above(x);
  out.emplace_back();
  for (std::uint32_t x = 0; x < p.size(); ++x) out[0].push_back({x});
  std::uint64_t total = p.size();
  for (int k = 1; k <= max_dim; ++k) {
    std::vector<Chain> next;
    for (const auto& c : out.back()) {
      budget.check_deadline();
      for (auto z : above[c.back()]) {
        Chain d = c;
        d.push_back(z);
        next.push_back(std::move(d));
      }
      budget.require_elements(total + next.size(), "chain enumeration");
    }
    if (next.empty()) break;
    total += next.size();
    out.push_back(std::move(next));
  }
  return out;
}

OrderComplex order_complex(const FinitePoset& p, int max_dim, bool augmented, const Budget& budget) {
  OrderComplex oc;
  oc.augmented = augmented;
  oc.chains = enumerate_chains(p, max_dim, budget);
  oc.index.resize(oc.chains.size());
  for (std::size_t k = 0; k < oc.chains.size(); ++k) {
    oc.index[k].reserve(oc.chains[k].size());
    for (std::uint32_t i = 0; i < oc.chains[k].size(); ++i) oc.index[k].emplace(oc.chains[k][i], i);
  }
  ChainComplex& cc = oc.complex;
  cc.min_degree = augmented ? -1 : 0;
  if (augmented) {
    cc.ranks.push_back(1);
    cc.boundaries.emplace_back(0, 1);
  }
  for (std::size_t k = 0; k < oc.chains.size(); ++k) {
    const auto& ch = oc.chains[k];
    cc.ranks.push_back(ch.size());
    if (k == 0) {
      if (augmented) {
        std::vector<MatrixEntry> e;
        for (std::uint32_t i = 0; i < ch.size(); ++i) e.push_back({0, i, 1});
        cc.boundaries.push_back(SparseIntMatrix::from_triplets(1, ch.size(), std::move(e)));
      } else {
        cc.boundaries.emplace_back(0, ch.size());
      }
      continue;
    }
    std::vector<MatrixEntry> e;
    e.reserve(ch.size() * (k + 1));
    Chain face;
    for (std::uint32_t j = 0; j < ch.size(); ++j) {
      for (std::size_t i = 0; i <= k; ++i) {
        face.assign(ch[j].begin(), ch[j].end());
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        const auto r = oc.index[k - 1].at(face);
        e.push_back({r, j, (i % 2 == 0) ? 1 : -1});
      }
    }
    cc.boundaries.push_back(SparseIntMatrix::from_triplets(oc.chains[k - 1].size(), ch.size(), std::move(e)));
  }
  if (oc.chains.empty() && !augmented) {
    cc.ranks.push_back(0);
    cc.boundaries.emplace_back(0, 0);
  }
  return oc;
}

CellularComplex cellular_complex(const SequencePoset& f, int max_dim, bool augmented,
                                 const Budget& budget) {
  if (!f.check_chain_condition())
    throw InvalidInput("cellular_complex: the chain condition fails");
  CellularComplex out;
  out.augmented = augmented;
  out.position.assign(f.size(), 0);
  const std::size_t top = std::min<std::size_t>(f.max_length(), static_cast<std::size_t>(std::max(max_dim + 1, 0)));
  out.cells.resize(top);
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    const auto len = f.member(i).size();
    if (len > top) continue;
    out.position[i] = static_cast<std::uint32_t>(out.cells[len - 1].size());
    out.cells[len - 1].push_back(i);
  }
  ChainComplex& cc = out.complex;
  cc.min_degree = augmented ? -1 : 0;
  if (augmented) {
    cc.ranks.push_back(1);
    cc.boundaries.emplace_back(0, 1);
  }
  Sequence face;
  for (std::size_t k = 0; k < out.cells.size(); ++k) {
    budget.check_deadline();
    const auto& cells = out.cells[k];
    cc.ranks.push_back(cells.size());
    if (k == 0) {
      if (augmented) {
        std::vector<MatrixEntry> e;
        for (std::uint32_t i = 0; i < cells.size(); ++i) e.push_back({0, i, 1});
        cc.boundaries.push_back(SparseIntMatrix::from_triplets(1, cells.size(), std::move(e)));
      } else {
        cc.boundaries.emplace_back(0, cells.size());
      }
      continue;
    }
    std::vector<MatrixEntry> e;
    e.reserve(cells.size() * (k + 1));
    for (std::uint32_t j = 0; j < cells.size(); ++j) {
      const auto& v = f.member(cells[j]);
      for (std::size_t i = 0; i <= k; ++i) {
        face.assign(v.begin(), v.end());
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        const auto r = out.position[*f.index_of(face)];
        e.push_back({r, j, (i % 2 == 0) ? 1 : -1});
      }
    }
    cc.boundaries.push_back(
        SparseIntMatrix::from_triplets(out.cells[k - 1].size(), cells.size(), std::move(e)));
  }
  if (out.cells.empty() && !augmented) {
    cc.ranks.push_back(0);
    cc.boundaries.emplace_back(0, 0);
  }
  return out;
}

FunctorComplex functor_complex(const CoefficientFunctor& f, int max_dim, const Budget& budget) {
  FunctorComplex out;
  const FinitePoset& p = f.poset();
  out.chains = enumerate_chains(p, max_dim, budget);
  std::vector<std::unordered_map<Chain, std::uint32_t, SequenceHash>> index(out.chains.size());
  out.offsets.resize(out.chains.size());
  ChainComplex& cc = out.complex;
  cc.min_degree = 0;
  for (std::size_t k = 0; k < out.chains.size(); ++k) {
    std::size_t off = 0;
    for (std::uint32_t i = 0; i < out.chains[k].size(); ++i) {
      index[k].emplace(out.chains[k][i], i);
      out.offsets[k].push_back(off);
      off += f.rank(out.chains[k][i][0]);
    }
    cc.ranks.push_back(off);
  }
  if (out.chains.empty()) {
    cc.ranks.push_back(0);
    cc.boundaries.emplace_back(0, 0);
    return out;
  }
  cc.boundaries.emplace_back(0, cc.ranks[0]);
  Chain face;
  for (std::size_t k = 1; k < out.chains.size(); ++k) {
    std::vector<MatrixEntry> e;
    for (std::uint32_t j = 0; j < out.chains[k].size(); ++j) {
      budget.check_deadline();
      const Chain& c = out.chains[k][j];
      const std::size_t rank0 = f.rank(c[0]);
      if (rank0 == 0) continue;
      const std::size_t col0 = out.offsets[k][j];
      // d_0: F(x_0 < x_1) into the summand of (x_1, ..., x_k).
      face.assign(c.begin() + 1, c.end());
      {
        const auto r = index[k - 1].at(face);
        const IntMatrix m = f.map(c[0], c[1]);
        const std::size_t row0 = out.offsets[k - 1][r];
        for (std::size_t a = 0; a < m.rows(); ++a)
          for (std::size_t b = 0; b < m.cols(); ++b)
            if (m(a, b) != 0)
              e.push_back({static_cast<std::uint32_t>(row0 + a), static_cast<std::uint32_t>(col0 + b), m(a, b)});
      }
      for (std::size_t i = 1; i <= k; ++i) {
        face.assign(c.begin(), c.end());
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
        const auto r = index[k - 1].at(face);
        const std::size_t row0 = out.offsets[k - 1][r];
        const std::int64_t sign = (i % 2 == 0) ? 1 : -1;
        for (std::size_t a = 0; a < rank0; ++a)
          e.push_back({static_cast<std::uint32_t>(row0 + a), static_cast<std::uint32_t>(col0 + a), sign});
      }
    }
    // d_0 and d_i can hit the same coordinate; merge duplicates.
    std::sort(e.begin(), e.end(), [](const MatrixEntry& x, const MatrixEntry& y) {
      return std::tie(x.col, x.row) < std::tie(y.col, y.row);
    });
    std::vector<MatrixEntry> merged;
    for (const auto& x : e) {
      if (!merged.empty() && merged.back().row == x.row && merged.back().col == x.col)
        merged.back().value = checked_add(merged.back().value, x.value);
      else
        merged.push_back(x);
    }
    cc.boundaries.push_back(SparseIntMatrix::from_triplets(cc.ranks[k - 1], cc.ranks[k], std::move(merged)));
  }
  return out;
}

}  // namespace framecomplex
