#include "framecomplex/spectral.hpp"

#include <algorithm>
#include <unordered_map>

#include "framecomplex/functor.hpp"
#include "framecomplex/homology.hpp"
#include "framecomplex/induced_map.hpp"

namespace framecomplex {

namespace {

const AbelianGroup kZero{};

std::uint64_t cell_key(int p, int q, std::uint32_t ix, std::uint32_t iy) {
  return (static_cast<std::uint64_t>(p) << 56) | (static_cast<std::uint64_t>(q) << 48) |
         (static_cast<std::uint64_t>(ix) << 24) | iy;
}

nlohmann::json groups_json(const std::map<int, AbelianGroup>& g) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, a] : g) j[std::to_string(k)] = a.to_string();
  return j;
}

}  // namespace

const AbelianGroup& SpectralPage::at(int p, int q) const {
  auto it = entries.find({p, q});
  return it == entries.end() ? kZero : it->second;
}

nlohmann::json SpectralPage::to_json() const {
  nlohmann::json j;
  j["page"] = page;
  auto arr = nlohmann::json::array();
  for (const auto& [pq, g] : entries)
    arr.push_back({{"p", pq.first}, {"q", pq.second}, {"group", g.to_string()}});
  j["entries"] = arr;
  auto inc = nlohmann::json::array();
  for (const auto& pq : inconclusive) inc.push_back({pq.first, pq.second});
  j["inconclusive"] = inc;
  return j;
}

nlohmann::json DoubleComplexResult::to_json() const {
  nlohmann::json j;
  j["e1"] = e1.to_json();
  j["e2"] = e2.to_json();
  j["total"] = groups_json(total);
  j["source"] = groups_json(source);
  j["total_matches"] = total_matches;
  return j;
}

ChainComplex double_complex_total(const PosetMap& f, int max_degree, const Budget& budget) {
  const FinitePoset& x = f.source();
  const FinitePoset& y = f.target();
  const auto xc = enumerate_chains(x, max_degree + 1, budget);
  const auto yc = enumerate_chains(y, max_degree + 1, budget);
  struct Cell {
    int p, q;
    std::uint32_t ix, iy;
  };
  std::vector<std::vector<Cell>> cells(static_cast<std::size_t>(max_degree) + 2);
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  for (int n = 0; n <= max_degree + 1; ++n) {
    for (int q = 0; q <= n; ++q) {
      const int p = n - q;
      if (static_cast<std::size_t>(q) >= xc.size() || static_cast<std::size_t>(p) >= yc.size()) continue;
      const auto& xs = xc[static_cast<std::size_t>(q)];
      const auto& ys = yc[static_cast<std::size_t>(p)];
      for (std::uint32_t ix = 0; ix < xs.size(); ++ix) {
        const auto fx = f(xs[ix].back());
        for (std::uint32_t iy = 0; iy < ys.size(); ++iy) {
          if (!y.leq(fx, ys[iy].front())) continue;
          auto& list = cells[static_cast<std::size_t>(n)];
          index.emplace(cell_key(p, q, ix, iy), static_cast<std::uint32_t>(list.size()));
          list.push_back({p, q, ix, iy});
        }
      }
      budget.require_elements(index.size(), "double complex");
    }
  }
  std::vector<std::unordered_map<Chain, std::uint32_t, SequenceHash>> xi(xc.size()), yi(yc.size());
  for (std::size_t k = 0; k < xc.size(); ++k)
    for (std::uint32_t i = 0; i < xc[k].size(); ++i) xi[k].emplace(xc[k][i], i);
  for (std::size_t k = 0; k < yc.size(); ++k)
    for (std::uint32_t i = 0; i < yc[k].size(); ++i) yi[k].emplace(yc[k][i], i);

  ChainComplex cc;
  cc.min_degree = 0;
  for (int n = 0; n <= max_degree + 1; ++n) {
    const auto& list = cells[static_cast<std::size_t>(n)];
    cc.ranks.push_back(list.size());
    if (n == 0) {
      cc.boundaries.emplace_back(0, list.size());
      continue;
    }
    std::vector<MatrixEntry> e;
    Chain face;
    for (std::uint32_t j = 0; j < list.size(); ++j) {
      const auto& c = list[j];
      const Chain& xchain = xc[static_cast<std::size_t>(c.q)][c.ix];
      const Chain& ychain = yc[static_cast<std::size_t>(c.p)][c.iy];
      if (c.p >= 1)
        for (int i = 0; i <= c.p; ++i) {
          face = ychain;
          face.erase(face.begin() + i);
          const auto iy = yi[static_cast<std::size_t>(c.p - 1)].at(face);
          e.push_back({index.at(cell_key(c.p - 1, c.q, c.ix, iy)), j, (i % 2 == 0) ? 1 : -1});
        }
      if (c.q >= 1) {
        const std::int64_t outer = (c.p % 2 == 0) ? 1 : -1;
        for (int i = 0; i <= c.q; ++i) {
          face = xchain;
          face.erase(face.begin() + i);
          const auto ix = xi[static_cast<std::size_t>(c.q - 1)].at(face);
          e.push_back({index.at(cell_key(c.p, c.q - 1, ix, c.iy)), j, outer * ((i % 2 == 0) ? 1 : -1)});
        }
      }
    }
    std::sort(e.begin(), e.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
      return std::tie(a.col, a.row) < std::tie(b.col, b.row);
    });
    cc.boundaries.push_back(SparseIntMatrix::from_triplets(
        cells[static_cast<std::size_t>(n - 1)].size(), list.size(), std::move(e)));
  }
  cc.verify();
  return cc;
}

DoubleComplexResult double_complex_pages(const PosetMap& f, int max_degree, const Budget& budget) {
  DoubleComplexResult out;
  const FinitePoset& y = f.target();
  auto y_ptr = f.target_ptr();

  // Fibers f/y with their order complexes and homology bases.
  struct Fiber {
    std::vector<std::uint32_t> elements;
    FinitePoset poset;
    OrderComplex complex;
    std::vector<HomologyBasis> bases;  // degree 0..max_degree
  };
  std::vector<Fiber> fibers(y.size());
  for (std::uint32_t v = 0; v < y.size(); ++v) {
    auto& fb = fibers[v];
    fb.elements = f.fiber_under_elements(v);
    fb.poset = f.source().restricted_convex(fb.elements);
    fb.complex = order_complex(fb.poset, max_degree + 1, false, budget);
    for (int q = 0; q <= max_degree; ++q) fb.bases.push_back(homology_basis(fb.complex.complex, q, budget));
  }

  // E1_{p,q}: one copy of H_q(f/y_0) per p-chain of Y.
  out.e1.page = 1;
  const auto yc = enumerate_chains(y, max_degree, budget);
  for (int p = 0; p <= max_degree && static_cast<std::size_t>(p) < yc.size(); ++p)
    for (int q = 0; p + q <= max_degree; ++q) {
      AbelianGroup g;
      for (const auto& c : yc[static_cast<std::size_t>(p)])
        g = g.direct_sum(fibers[c.front()].bases[static_cast<std::size_t>(q)].group);
      out.e1.entries[{p, q}] = g;
    }

  // E2_{p,q} = H_p(Y; y -> H_q(f/y)).
  out.e2.page = 2;
  for (int q = 0; q <= max_degree; ++q) {
    bool torsion = false;
    std::vector<std::size_t> ranks(y.size());
    for (std::uint32_t v = 0; v < y.size(); ++v) {
      const auto& b = fibers[v].bases[static_cast<std::size_t>(q)];
      if (!b.group.torsion.empty()) torsion = true;
      ranks[v] = b.orders.size();
    }
    if (torsion) {
      for (int p = 0; p + q <= max_degree; ++p) out.e2.inconclusive.insert({p, q});
      continue;
    }
    std::map<FinitePoset::Relation, IntMatrix> maps;
    for (const auto& [a, b] : y.relations()) {
      const auto& fa = fibers[a];
      const auto& fb = fibers[b];
      std::vector<std::uint32_t> incl(fa.elements.size());
      for (std::size_t i = 0; i < fa.elements.size(); ++i)
        incl[i] = static_cast<std::uint32_t>(
            std::lower_bound(fb.elements.begin(), fb.elements.end(), fa.elements[i]) - fb.elements.begin());
      const auto phi = chain_map_order(fa.complex, fb.complex, incl, q);
      maps.emplace(FinitePoset::Relation{a, b},
                   induced_on_homology(fa.bases[static_cast<std::size_t>(q)],
                                       fb.bases[static_cast<std::size_t>(q)], phi)
                       .matrix);
    }
    const CoefficientFunctor g(y_ptr, ranks, std::move(maps));
    const auto h = functor_homology(g, max_degree - q, budget);
    for (int p = 0; p + q <= max_degree; ++p) out.e2.entries[{p, q}] = h.group(p);
  }

  const auto total = double_complex_total(f, max_degree, budget);
  const auto th = homology_of_complex(total, 0, max_degree, budget);
  const auto xh = integer_homology(f.source(), max_degree, false, budget);
  out.total_matches = true;
  for (int k = 0; k <= max_degree; ++k) {
    out.total[k] = th.group(k);
    out.source[k] = xh.group(k);
    if (!(out.total[k] == out.source[k])) out.total_matches = false;
  }
  return out;
}

}  // namespace framecomplex
