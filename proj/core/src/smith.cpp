#include "framecomplex/smith.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace framecomplex {

__extension__ using wide_int = __int128;


using BigInt = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// AbelianGroup

std::string AbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  for (auto t : torsion) {
    if (!first) os << " + ";
    os << "Z/" << t;
    first = false;
  }
  return os.str();
}

nlohmann::json AbelianGroup::to_json() const {
  return {{"free_rank", free_rank}, {"torsion", torsion}};
}

AbelianGroup AbelianGroup::from_cyclic_orders(std::span<const std::int64_t> orders) {
  AbelianGroup g;
  std::vector<std::int64_t> finite;
  for (auto o : orders) {
    if (o < 0) throw InvalidInput("cyclic order must be non-negative");
    if (o == 0)
      ++g.free_rank;
    else if (o > 1)
      finite.push_back(o);
  }
  // One pass of pairwise (gcd, lcm) replacement yields a divisibility chain.
  for (std::size_t i = 0; i < finite.size(); ++i) {
    for (std::size_t j = i + 1; j < finite.size(); ++j) {
      const std::int64_t d = gcd64(finite[i], finite[j]);
      const std::int64_t l = checked_mul(finite[i] / d, finite[j]);
      finite[i] = d;
      finite[j] = l;
    }
  }
  for (auto f : finite)
    if (f > 1) g.torsion.push_back(f);
  return g;
}

AbelianGroup AbelianGroup::direct_sum(const AbelianGroup& other) const {
  std::vector<std::int64_t> orders(free_rank + other.free_rank, 0);
  orders.insert(orders.end(), torsion.begin(), torsion.end());
  orders.insert(orders.end(), other.torsion.begin(), other.torsion.end());
  return from_cyclic_orders(orders);
}

AbelianGroup AbelianGroup::power(std::size_t copies) const {
  AbelianGroup out;
  for (std::size_t i = 0; i < copies; ++i) out = out.direct_sum(*this);
  return out;
}

AbelianGroup SmithDecomposition::cokernel(std::size_t rows) const {
  AbelianGroup g;
  g.free_rank = rows - rank;
  for (auto d : diagonal)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

namespace {

// ---------------------------------------------------------------------------
// Scalar helpers so the dense kernel can run on int64 (checked) or cpp_int.

inline std::int64_t s_add(std::int64_t a, std::int64_t b) { return checked_add(a, b); }
inline std::int64_t s_mul(std::int64_t a, std::int64_t b) { return checked_mul(a, b); }
inline std::int64_t s_abs(std::int64_t a) {
  if (a == INT64_MIN) throw ArithmeticOverflow("abs(INT64_MIN)");
  return a < 0 ? -a : a;
}
inline std::int64_t s_neg(std::int64_t a) {
  if (a == INT64_MIN) throw ArithmeticOverflow("-INT64_MIN");
  return -a;
}
inline BigInt s_add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt s_mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt s_abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }
inline BigInt s_neg(const BigInt& a) { return -a; }

std::int64_t to_int64(std::int64_t v) { return v; }
std::int64_t to_int64(const BigInt& v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow("invariant factor exceeds int64");
  return static_cast<std::int64_t>(v);
}

template <typename T>
struct Dense {
  std::size_t rows = 0, cols = 0;
  std::vector<T> a;
  T& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const T& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

template <typename T>
Dense<T> identity_dense(std::size_t n) {
  Dense<T> d{n, n, std::vector<T>(n * n, T(0))};
  for (std::size_t i = 0; i < n; ++i) d.at(i, i) = T(1);
  return d;
}

// Dense SNF with optional transform tracking. U*A*V = D, Ui = U^-1, Vi = V^-1.
template <typename T>
struct DenseSmith {
  Dense<T> m;
  bool track = false;
  Dense<T> u, ui, v, vi;
  const Budget* budget = nullptr;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
    if (track) {
      for (std::size_t c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
      for (std::size_t r = 0; r < ui.rows; ++r) std::swap(ui.at(r, i), ui.at(r, j));
    }
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
    if (track) {
      for (std::size_t r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
      for (std::size_t c = 0; c < vi.cols; ++c) std::swap(vi.at(i, c), vi.at(j, c));
    }
  }
  // row_i += q * row_j
  void add_row(std::size_t i, std::size_t j, const T& q) {
    for (std::size_t c = 0; c < m.cols; ++c)
      if (m.at(j, c) != 0) m.at(i, c) = s_add(m.at(i, c), s_mul(q, m.at(j, c)));
    if (track) {
      for (std::size_t c = 0; c < u.cols; ++c)
        if (u.at(j, c) != 0) u.at(i, c) = s_add(u.at(i, c), s_mul(q, u.at(j, c)));
      const T nq = s_neg(q);
      for (std::size_t r = 0; r < ui.rows; ++r)
        if (ui.at(r, i) != 0) ui.at(r, j) = s_add(ui.at(r, j), s_mul(nq, ui.at(r, i)));
    }
  }
  // col_i += q * col_j
  void add_col(std::size_t i, std::size_t j, const T& q) {
    for (std::size_t r = 0; r < m.rows; ++r)
      if (m.at(r, j) != 0) m.at(r, i) = s_add(m.at(r, i), s_mul(q, m.at(r, j)));
    if (track) {
      for (std::size_t r = 0; r < v.rows; ++r)
        if (v.at(r, j) != 0) v.at(r, i) = s_add(v.at(r, i), s_mul(q, v.at(r, j)));
      const T nq = s_neg(q);
      for (std::size_t c = 0; c < vi.cols; ++c)
        if (vi.at(i, c) != 0) vi.at(j, c) = s_add(vi.at(j, c), s_mul(nq, vi.at(i, c)));
    }
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < m.cols; ++c) m.at(i, c) = s_neg(m.at(i, c));
    if (track) {
      for (std::size_t c = 0; c < u.cols; ++c) u.at(i, c) = s_neg(u.at(i, c));
      for (std::size_t r = 0; r < ui.rows; ++r) ui.at(r, i) = s_neg(ui.at(r, i));
    }
  }

  std::vector<T> run() {
    if (track) {
      u = identity_dense<T>(m.rows);
      ui = identity_dense<T>(m.rows);
      v = identity_dense<T>(m.cols);
      vi = identity_dense<T>(m.cols);
    }
    std::vector<T> diag;
    const std::size_t limit = std::min(m.rows, m.cols);
    for (std::size_t t = 0; t < limit; ++t) {
      if (budget) budget->check_deadline();
      // Smallest-magnitude pivot in the trailing block.
      std::size_t pr = m.rows, pc = m.cols;
      T best(0);
      for (std::size_t r = t; r < m.rows; ++r)
        for (std::size_t c = t; c < m.cols; ++c) {
          const T& x = m.at(r, c);
          if (x == 0) continue;
          T ax = s_abs(x);
          if (pr == m.rows || ax < best) {
            best = ax;
            pr = r;
            pc = c;
            if (best == 1) goto found;
          }
        }
    found:
      if (pr == m.rows) break;
      swap_rows(t, pr);
      swap_cols(t, pc);
      while (true) {
        bool dirty = false;
        for (std::size_t r = t + 1; r < m.rows; ++r) {
          if (m.at(r, t) == 0) continue;
          T q = m.at(r, t) / m.at(t, t);
          if (q != 0) add_row(r, t, s_neg(q));
          if (m.at(r, t) != 0) {
            swap_rows(t, r);
            dirty = true;
          }
        }
        for (std::size_t c = t + 1; c < m.cols; ++c) {
          if (m.at(t, c) == 0) continue;
          T q = m.at(t, c) / m.at(t, t);
          if (q != 0) add_col(c, t, s_neg(q));
          if (m.at(t, c) != 0) {
            swap_cols(t, c);
            dirty = true;
          }
        }
        if (dirty) continue;
        // Pivot must divide the whole trailing block.
        bool divides = true;
        for (std::size_t r = t + 1; r < m.rows && divides; ++r)
          for (std::size_t c = t + 1; c < m.cols; ++c)
            if (m.at(r, c) % m.at(t, t) != 0) {
              add_row(t, r, T(1));
              divides = false;
              break;
            }
        if (divides) break;
      }
      if (m.at(t, t) < 0) negate_row(t);
      diag.push_back(m.at(t, t));
    }
    return diag;
  }
};

template <typename T>
Dense<T> dense_from_int(const IntMatrix& a) {
  Dense<T> d{a.rows(), a.cols(), std::vector<T>(a.rows() * a.cols(), T(0))};
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) d.at(r, c) = T(a(r, c));
  return d;
}

template <typename T>
IntMatrix dense_to_int(const Dense<T>& d) {
  IntMatrix out(d.rows, d.cols);
  for (std::size_t r = 0; r < d.rows; ++r)
    for (std::size_t c = 0; c < d.cols; ++c) out(r, c) = to_int64(d.at(r, c));
  return out;
}

template <typename T>
SmithDecomposition dense_smith(const IntMatrix& a, bool track, const Budget& budget) {
  DenseSmith<T> s;
  s.m = dense_from_int<T>(a);
  s.track = track;
  s.budget = &budget;
  std::vector<T> diag = s.run();
  SmithDecomposition out;
  for (const auto& d : diag) out.diagonal.push_back(to_int64(d));
  out.rank = out.diagonal.size();
  if (track)
    out.transforms = SmithTransforms{dense_to_int(s.u), dense_to_int(s.ui), dense_to_int(s.v),
                                     dense_to_int(s.vi)};
  return out;
}

SmithDecomposition dense_smith_any(const IntMatrix& a, bool track, const Budget& budget) {
  try {
    return dense_smith<std::int64_t>(a, track, budget);
  } catch (const ArithmeticOverflow&) {
    return dense_smith<BigInt>(a, track, budget);
  }
}

// ---------------------------------------------------------------------------
// Sparse elimination. Integer mode (p == 0) pivots only on +-1 entries; prime
// mode pivots on any nonzero. Column operations clear the pivot row, after
// which the pivot row and column can be dropped (the row has a single entry).

class SparseEliminator {
 public:
  SparseEliminator(const SparseIntMatrix& a, std::int64_t p, const Budget& budget)
      : p_(p), budget_(budget), rows_(a.rows()), cols_(a.columns()), row_cols_(a.rows()),
        row_alive_(a.rows(), 1) {
    for (std::uint32_t c = 0; c < cols_.size(); ++c) {
      if (p_ != 0) {
        SparseColumn reduced;
        for (auto [r, v] : cols_[c]) {
          std::int64_t x = v % p_;
          if (x < 0) x += p_;
          if (x != 0) reduced.emplace_back(r, x);
        }
        cols_[c] = std::move(reduced);
      }
      for (auto [r, v] : cols_[c]) row_cols_[r].push_back(c);
      nnz_ += cols_[c].size();
    }
  }

  std::size_t eliminate() {
    std::vector<std::uint32_t> order(cols_.size());
    std::iota(order.begin(), order.end(), 0U);
    bool progress = true;
    while (progress) {
      progress = false;
      std::stable_sort(order.begin(), order.end(), [&](std::uint32_t x, std::uint32_t y) {
        return cols_[x].size() < cols_[y].size();
      });
      std::size_t steps = 0;
      for (auto c : order) {
        if (cols_[c].empty()) continue;
        if ((++steps & 0x3FF) == 0) budget_.check_deadline();
        std::uint32_t best_row = 0;
        std::size_t best_cost = SIZE_MAX;
        for (auto [r, v] : cols_[c]) {
          if (!eligible(v)) continue;
          if (row_cols_[r].size() < best_cost) {
            best_cost = row_cols_[r].size();
            best_row = r;
          }
        }
        if (best_cost == SIZE_MAX) continue;
        pivot(best_row, c);
        progress = true;
      }
    }
    return rank_;
  }

  // Remaining nonzero block after elimination (integer mode).
  IntMatrix residual() const {
    std::vector<std::uint32_t> live_cols;
    std::vector<std::int64_t> row_map(rows_, -1);
    std::size_t next = 0;
    for (std::uint32_t c = 0; c < cols_.size(); ++c) {
      if (cols_[c].empty()) continue;
      live_cols.push_back(c);
      for (auto [r, v] : cols_[c])
        if (row_map[r] < 0) row_map[r] = static_cast<std::int64_t>(next++);
    }
    if (next * live_cols.size() > budget_.snf_limit)
      throw BudgetExceeded("dense Smith block " + std::to_string(next) + "x" +
                           std::to_string(live_cols.size()) + " exceeds SNF budget");
    IntMatrix d(next, live_cols.size());
    for (std::size_t j = 0; j < live_cols.size(); ++j)
      for (auto [r, v] : cols_[live_cols[j]]) d(static_cast<std::size_t>(row_map[r]), j) = v;
    return d;
  }

 private:
  bool eligible(std::int64_t v) const { return p_ != 0 || v == 1 || v == -1; }

  std::int64_t mod_inverse(std::int64_t a) const {
    std::int64_t result = 1, base = a % p_, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = static_cast<std::int64_t>((wide_int)result * base % p_);
      base = static_cast<std::int64_t>((wide_int)base * base % p_);
      e >>= 1;
    }
    return result;
  }

  static std::int64_t find(const SparseColumn& col, std::uint32_t r) {
    auto it = std::lower_bound(col.begin(), col.end(), std::make_pair(r, INT64_MIN));
    return (it != col.end() && it->first == r) ? it->second : 0;
  }

  void pivot(std::uint32_t r, std::uint32_t c) {
    const std::int64_t pv = find(cols_[c], r);
    const std::int64_t pinv = p_ == 0 ? pv : mod_inverse(pv);  // +-1 is its own inverse
    auto others = std::move(row_cols_[r]);
    std::sort(others.begin(), others.end());
    others.erase(std::unique(others.begin(), others.end()), others.end());
    for (auto c2 : others) {
      if (c2 == c) continue;
      const std::int64_t x = find(cols_[c2], r);
      if (x == 0) continue;
      std::int64_t q;
      if (p_ == 0) {
        q = checked_mul(x, pinv);
      } else {
        q = static_cast<std::int64_t>((wide_int)x * pinv % p_);
      }
      axpy(c2, c, q);
    }
    row_alive_[r] = 0;
    row_cols_[r].clear();
    nnz_ -= cols_[c].size();
    cols_[c].clear();
    cols_[c].shrink_to_fit();
    ++rank_;
  }

  // col[dst] -= q * col[src]
  void axpy(std::uint32_t dst, std::uint32_t src, std::int64_t q) {
    const SparseColumn& a = cols_[dst];
    const SparseColumn& b = cols_[src];
    SparseColumn out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        std::int64_t v = reduce(-static_cast<wide_int>(q) * b[j].second);
        if (v != 0) {
          out.emplace_back(b[j].first, v);
          row_cols_[b[j].first].push_back(dst);
        }
        ++j;
      } else {
        std::int64_t v = reduce(static_cast<wide_int>(a[i].second) - static_cast<wide_int>(q) * b[j].second);
        if (v != 0) out.emplace_back(a[i].first, v);
        ++i;
        ++j;
      }
    }
    nnz_ = nnz_ - a.size() + out.size();
    cols_[dst] = std::move(out);
    if (nnz_ > budget_.snf_limit)
      throw BudgetExceeded("sparse elimination fill-in exceeds SNF budget");
  }

  std::int64_t reduce(wide_int v) const {
    if (p_ != 0) {
      wide_int r = v % p_;
      if (r < 0) r += p_;
      return static_cast<std::int64_t>(r);
    }
    if (v > INT64_MAX || v < INT64_MIN) throw ArithmeticOverflow("sparse elimination overflow");
    return static_cast<std::int64_t>(v);
  }

  std::int64_t p_;
  const Budget& budget_;
  std::size_t rows_;
  std::vector<SparseColumn> cols_;
  std::vector<std::vector<std::uint32_t>> row_cols_;
  std::vector<char> row_alive_;
  std::size_t nnz_ = 0;
  std::size_t rank_ = 0;
};

void verify_transforms(const SparseIntMatrix& a, const SmithDecomposition& s) {
  const auto& t = *s.transforms;
  IntMatrix prod = t.u * a.to_dense() * t.v;
  for (std::size_t r = 0; r < prod.rows(); ++r)
    for (std::size_t c = 0; c < prod.cols(); ++c) {
      const std::int64_t want = (r == c && r < s.rank) ? s.diagonal[r] : 0;
      if (prod(r, c) != want) throw InternalInconsistency("Smith transforms do not reproduce D");
    }
  if (!(t.u * t.u_inverse).is_identity() || !(t.v * t.v_inverse).is_identity())
    throw InternalInconsistency("Smith transform inverses are wrong");
}

}  // namespace

SmithDecomposition smith_normal_form(const SparseIntMatrix& a, bool with_transforms,
                                     const Budget& budget) {
  if (with_transforms) {
    const std::size_t dim = std::max(a.rows(), a.cols());
    if (dim > budget.basis_dimension_limit)
      throw BudgetExceeded("transforms requested for dimension " + std::to_string(dim) +
                           " above basis limit");
    SmithDecomposition s = dense_smith_any(a.to_dense(), true, budget);
    verify_transforms(a, s);
    return s;
  }
  std::size_t units = 0;
  IntMatrix rest;
  try {
    SparseEliminator elim(a, 0, budget);
    units = elim.eliminate();
    rest = elim.residual();
  } catch (const ArithmeticOverflow&) {
    if (a.rows() * a.cols() > budget.snf_limit) throw BudgetExceeded("SNF overflow fallback too large");
    units = 0;
    rest = a.to_dense();
  }
  SmithDecomposition tail = dense_smith_any(rest, false, budget);
  SmithDecomposition out;
  out.diagonal.assign(units, 1);
  out.diagonal.insert(out.diagonal.end(), tail.diagonal.begin(), tail.diagonal.end());
  out.rank = out.diagonal.size();
  return out;
}

std::size_t rank_mod_prime(const SparseIntMatrix& a, std::int64_t p) {
  if (!is_prime(p)) throw InvalidInput("rank_mod_prime: " + std::to_string(p) + " is not prime");
  Budget unlimited;
  unlimited.snf_limit = UINT64_MAX;
  SparseEliminator elim(a, p, unlimited);
  return elim.eliminate();
}

bool has_right_inverse_mod_m(const SparseIntMatrix& a, const ModulusRing& ring) {
  if (a.rows() > a.cols())
    throw InvalidInput("has_right_inverse_mod_m: more rows than columns");
  for (const auto& pp : ring.prime_factors())
    if (rank_mod_prime(a, pp.prime) != a.rows()) return false;
  return true;
}

std::size_t dense_rank_mod_prime(std::span<const std::int64_t> row_major, std::size_t rows,
                                 std::size_t cols, std::int64_t p) {
  std::vector<std::int64_t> m(row_major.begin(), row_major.end());
  for (auto& x : m) {
    x %= p;
    if (x < 0) x += p;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t r = rank; r < rows; ++r)
      if (m[r * cols + c] != 0) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t k = 0; k < cols; ++k) std::swap(m[piv * cols + k], m[rank * cols + k]);
    // Inverse of the pivot by Fermat (p prime, small).
    std::int64_t inv = 1, base = m[rank * cols + c], e = p - 2;
    while (e > 0) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
      e >>= 1;
    }
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const std::int64_t f = m[r * cols + c] * inv % p;
      if (f == 0) continue;
      for (std::size_t k = c; k < cols; ++k)
        m[r * cols + k] = ((m[r * cols + k] - f * m[rank * cols + k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

bool dense_has_right_inverse_mod(std::span<const std::int64_t> row_major, std::size_t rows,
                                 std::size_t cols, const ModulusRing& ring) {
  if (rows > cols) return false;
  for (const auto& pp : ring.prime_factors())
    if (dense_rank_mod_prime(row_major, rows, cols, pp.prime) != rows) return false;
  return true;
}

}  // namespace framecomplex
