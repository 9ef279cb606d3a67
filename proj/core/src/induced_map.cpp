#include "framecomplex/induced_map.hpp"

#include <algorithm>
#include <string>
#include <tuple>

namespace framecomplex {

namespace {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

IntMatrix sparse_times_dense(const SparseIntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows(), b.cols());
  for (const auto& e : a.entries())
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (b(e.col, j) != 0) out(e.row, j) = checked_add(out(e.row, j), checked_mul(e.value, b(e.col, j)));
  return out;
}

IntMatrix select_rows(const IntMatrix& m, std::size_t from) {
  IntMatrix out(m.rows() - from, m.cols());
  for (std::size_t i = from; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i - from, j) = m(i, j);
  return out;
}

IntMatrix select_cols(const IntMatrix& m, std::size_t from) {
  IntMatrix out(m.rows(), m.cols() - from);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = from; j < m.cols(); ++j) out(i, j - from) = m(i, j);
  return out;
}

/// Integer column lattice kept in echelon form: at most one basis column
/// leads at each row.
class EchelonLattice {
 public:
  explicit EchelonLattice(std::size_t dim) : dim_(dim), lead_(dim, -1) {}

  void insert(std::vector<std::int64_t> v) {
    for (std::size_t i = 0; i < dim_; ++i) {
      if (v[i] == 0) continue;
      if (lead_[i] < 0) {
        if (v[i] < 0)
          for (auto& x : v) x = -x;
        lead_[i] = static_cast<int>(cols_.size());
        cols_.push_back(std::move(v));
        return;
      }
      auto& b = cols_[static_cast<std::size_t>(lead_[i])];
      const std::int64_t a0 = b[i], b0 = v[i];
      if (b0 % a0 == 0) {
        const std::int64_t q = b0 / a0;
        for (std::size_t j = i; j < dim_; ++j) v[j] = checked_sub(v[j], checked_mul(q, b[j]));
        continue;
      }
      // Extended gcd: s a0 + t b0 = g.
      std::int64_t old_r = a0, r = b0, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
      }
      if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
      }
      const std::int64_t ua = a0 / old_r, ub = b0 / old_r;
      std::vector<std::int64_t> nb(dim_, 0), nv(dim_, 0);
      for (std::size_t j = i; j < dim_; ++j) {
        nb[j] = checked_add(checked_mul(old_s, b[j]), checked_mul(old_t, v[j]));
        nv[j] = checked_sub(checked_mul(ua, v[j]), checked_mul(ub, b[j]));
      }
      b = std::move(nb);
      v = std::move(nv);
    }
  }

  [[nodiscard]] SparseIntMatrix matrix() const {
    std::vector<SparseColumn> cols;
    for (const auto& c : cols_) {
      SparseColumn sc;
      for (std::size_t i = 0; i < dim_; ++i)
        if (c[i] != 0) sc.emplace_back(static_cast<std::uint32_t>(i), c[i]);
      cols.push_back(std::move(sc));
    }
    return SparseIntMatrix::from_columns(dim_, std::move(cols));
  }

 private:
  std::size_t dim_;
  std::vector<int> lead_;
  std::vector<std::vector<std::int64_t>> cols_;
};

}  // namespace

HomologyBasis homology_basis(const ChainComplex& c, int k, const Budget& budget) {
  HomologyBasis out;
  out.degree = k;
  const std::size_t n = c.rank(k);
  if (n > budget.basis_dimension_limit)
    throw BudgetExceeded("homology basis: chain rank " + std::to_string(n) + " exceeds limit");
  if (n == 0) {
    out.coordinates = IntMatrix(0, 0);
    out.cycles = IntMatrix(0, 0);
    return out;
  }
  // Kernel of boundary(k): columns r.. of V, with left inverse rows r.. of V^-1.
  const auto s1 = smith_normal_form(c.boundary(k), true, budget);
  const std::size_t r = s1.rank;
  const IntMatrix kernel = select_cols(s1.transforms->v, r);
  const IntMatrix kernel_coords = select_rows(s1.transforms->v_inverse, r);
  const std::size_t z = n - r;
  if (z == 0) {
    out.coordinates = IntMatrix(0, n);
    out.cycles = IntMatrix(n, 0);
    return out;
  }
  // Boundaries in kernel coordinates.
  // Only the lattice they span matters; keep an echelon basis of it.
  EchelonLattice lattice(z);
  {
    const auto next = c.boundary(k + 1);
    std::vector<std::int64_t> col(z);
    for (const auto& sc : next.columns()) {
      budget.check_deadline();
      std::fill(col.begin(), col.end(), 0);
      for (const auto& [row, val] : sc)
        for (std::size_t i = 0; i < z; ++i)
          if (kernel_coords(i, row) != 0) col[i] = checked_add(col[i], checked_mul(kernel_coords(i, row), val));
      lattice.insert(col);
    }
  }
  const auto s2 = smith_normal_form(lattice.matrix(), true, budget);
  const IntMatrix& p = s2.transforms->u;
  const IntMatrix& pinv = s2.transforms->u_inverse;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < z; ++i) {
    if (i < s2.rank) {
      if (s2.diagonal[i] != 1) {
        keep.push_back(i);
        out.orders.push_back(s2.diagonal[i]);
      }
    } else {
      keep.push_back(i);
      out.orders.push_back(0);
    }
  }
  out.group = AbelianGroup::from_cyclic_orders(out.orders);
  const IntMatrix pl = p * kernel_coords;       // z x n
  const IntMatrix kp = kernel * pinv;           // n x z
  out.coordinates = IntMatrix(keep.size(), n);
  out.cycles = IntMatrix(n, keep.size());
  for (std::size_t g = 0; g < keep.size(); ++g) {
    for (std::size_t j = 0; j < n; ++j) {
      std::int64_t v = pl(keep[g], j);
      if (out.orders[g] > 0) v = mod_floor(v, out.orders[g]);
      out.coordinates(g, j) = v;
      out.cycles(j, g) = kp(j, keep[g]);
    }
  }
  return out;
}

bool generates(const IntMatrix& m, const std::vector<std::int64_t>& target_orders) {
  const std::size_t g = target_orders.size();
  if (g == 0) return true;
  if (m.rows() != g) throw InvalidInput("generates: row count differs from generator count");
  std::vector<MatrixEntry> e;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < g; ++i)
      if (m(i, j) != 0) e.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), m(i, j)});
  std::size_t col = m.cols();
  for (std::size_t i = 0; i < g; ++i)
    if (target_orders[i] > 0)
      e.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(col++), target_orders[i]});
  std::sort(e.begin(), e.end(), [](const MatrixEntry& a, const MatrixEntry& b) {
    return std::tie(a.col, a.row) < std::tie(b.col, b.row);
  });
  const auto snf = smith_normal_form(SparseIntMatrix::from_triplets(g, col, std::move(e)));
  if (snf.rank != g) return false;
  for (auto d : snf.diagonal)
    if (d != 1) return false;
  return true;
}

bool InducedMap::surjective() const { return generates(matrix, target_orders); }

bool InducedMap::isomorphism() const { return source == target && surjective(); }

nlohmann::json InducedMap::to_json() const {
  nlohmann::json j;
  j["degree"] = degree;
  j["source"] = source.to_string();
  j["target"] = target.to_string();
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < matrix.rows(); ++i) {
    auto row = matrix.row(i);
    rows.push_back(std::vector<std::int64_t>(row.begin(), row.end()));
  }
  j["matrix"] = rows;
  j["surjective"] = surjective();
  j["isomorphism"] = isomorphism();
  return j;
}

InducedMap induced_on_homology(const HomologyBasis& bx, const HomologyBasis& by,
                               const SparseIntMatrix& phi_k) {
  InducedMap out;
  out.degree = bx.degree;
  out.source = bx.group;
  out.target = by.group;
  out.target_orders = by.orders;
  const std::size_t gx = bx.orders.size();
  const std::size_t gy = by.orders.size();
  if (gx == 0 || gy == 0) {
    out.matrix = IntMatrix(gy, gx);
    return out;
  }
  if (phi_k.rows() != by.coordinates.cols() || phi_k.cols() != bx.cycles.rows())
    throw InvalidInput("induced_on_homology: chain map shape mismatch");
  const IntMatrix image = sparse_times_dense(phi_k, bx.cycles);
  IntMatrix m = by.coordinates * image;
  for (std::size_t i = 0; i < gy; ++i)
    if (by.orders[i] > 0)
      for (std::size_t j = 0; j < gx; ++j) m(i, j) = mod_floor(m(i, j), by.orders[i]);
  out.matrix = std::move(m);
  return out;
}

InducedMap induced_on_homology(const ChainComplex& x, const ChainComplex& y,
                               const SparseIntMatrix& phi_k, int k, const Budget& budget) {
  const auto by = homology_basis(y, k, budget);
  const auto bx = homology_basis(x, k, budget);
  return induced_on_homology(bx, by, phi_k);
}

SparseIntMatrix chain_map_order(const OrderComplex& x, const OrderComplex& y,
                                const std::vector<std::uint32_t>& assignment, int k) {
  if (k < 0) {
    const std::size_t rx = x.complex.rank(k), ry = y.complex.rank(k);
    if (rx == 1 && ry == 1) return SparseIntMatrix::identity(1);
    return SparseIntMatrix(ry, rx);
  }
  const auto ku = static_cast<std::size_t>(k);
  const std::size_t rows = ku < y.chains.size() ? y.chains[ku].size() : 0;
  if (ku >= x.chains.size()) return SparseIntMatrix(rows, 0);
  std::vector<MatrixEntry> e;
  Chain image;
  for (std::uint32_t j = 0; j < x.chains[ku].size(); ++j) {
    const auto& c = x.chains[ku][j];
    image.clear();
    bool collide = false;
    for (auto v : c) {
      const auto w = assignment[v];
      if (!image.empty() && image.back() == w) {
        collide = true;
        break;
      }
      image.push_back(w);
    }
    if (collide) continue;
    const auto r = y.index_of(image);
    if (!r) throw InvalidInput("chain_map_order: image chain missing in target (not order-preserving?)");
    e.push_back({*r, j, 1});
  }
  return SparseIntMatrix::from_triplets(rows, x.chains[ku].size(), std::move(e));
}

SparseIntMatrix chain_map_cellular(const CellularComplex& x, const CellularComplex& y,
                                   const std::vector<std::uint32_t>& member_map, int k) {
  if (k < 0) {
    const std::size_t rx = x.complex.rank(k), ry = y.complex.rank(k);
    if (rx == 1 && ry == 1) return SparseIntMatrix::identity(1);
    return SparseIntMatrix(ry, rx);
  }
  const auto ku = static_cast<std::size_t>(k);
  const std::size_t rows = ku < y.cells.size() ? y.cells[ku].size() : 0;
  if (ku >= x.cells.size()) return SparseIntMatrix(rows, 0);
  std::vector<MatrixEntry> e;
  for (std::uint32_t j = 0; j < x.cells[ku].size(); ++j) {
    const auto target = member_map[x.cells[ku][j]];
    e.push_back({y.position[target], j, 1});
  }
  return SparseIntMatrix::from_triplets(rows, x.cells[ku].size(), std::move(e));
}

InducedMap induced_map(const PosetMap& f, int k, bool reduced, const Budget& budget) {
  const auto ox = order_complex(f.source(), k + 1, reduced, budget);
  const auto oy = order_complex(f.target(), k + 1, reduced, budget);
  return induced_on_homology(ox.complex, oy.complex, chain_map_order(ox, oy, f.assignment(), k), k,
                             budget);
}

InducedMap induced_map_cellular(const SequencePoset& x, const SequencePoset& y,
                                const std::vector<std::uint32_t>& member_map, int k, bool reduced,
                                const Budget& budget) {
  if (member_map.size() != x.size()) throw InvalidInput("induced_map_cellular: map size mismatch");
  Sequence face;
  for (std::uint32_t i = 0; i < x.size(); ++i) {
    const auto& v = x.member(i);
    const auto& w = y.member(member_map.at(i));
    if (v.size() != w.size()) throw InvalidInput("induced_map_cellular: map changes length");
    for (std::size_t d = 0; d < v.size() && v.size() > 1; ++d) {
      face.assign(v.begin(), v.end());
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(d));
      Sequence wf(w.begin(), w.end());
      wf.erase(wf.begin() + static_cast<std::ptrdiff_t>(d));
      const auto fi = x.index_of(face);
      const auto wi = y.index_of(wf);
      if (!fi || !wi || member_map[*fi] != *wi)
        throw InvalidInput("induced_map_cellular: map does not commute with deletions");
    }
  }
  const auto cx = cellular_complex(x, k + 1, reduced, budget);
  const auto cy = cellular_complex(y, k + 1, reduced, budget);
  return induced_on_homology(cx.complex, cy.complex, chain_map_cellular(cx, cy, member_map, k), k,
                             budget);
}

std::vector<std::uint32_t> inclusion_map(const SequencePoset& sub, const SequencePoset& ambient) {
  std::vector<std::uint32_t> out(sub.size());
  for (std::uint32_t i = 0; i < sub.size(); ++i) {
    const auto j = ambient.index_of(sub.member(i));
    if (!j) throw InvalidInput("inclusion_map: " + format_sequence(sub.member(i)) + " missing");
    out[i] = *j;
  }
  return out;
}

}  // namespace framecomplex
