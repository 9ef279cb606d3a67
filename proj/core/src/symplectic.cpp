#include "framecomplex/symplectic.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace framecomplex {

SymplecticSpace::SymplecticSpace(ModulusRing ring, std::size_t n)
    : ring_(std::move(ring)), n_(n), q_(2 * n, 2 * n, 0) {
  if (n == 0) throw InvalidInput("SymplecticSpace: n must be positive");
  for (std::size_t i = 0; i < n; ++i) {
    q_(2 * i, 2 * i + 1) = 1;
    q_(2 * i + 1, 2 * i) = ring_.neg(1);
  }
}

std::int64_t SymplecticSpace::form(std::span<const std::int64_t> x, std::span<const std::int64_t> y) const {
  if (x.size() != dimension() || y.size() != dimension())
    throw InvalidInput("form: vectors must have length " + std::to_string(dimension()));
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n_; ++i)
    s = ring_.add(s, ring_.sub(ring_.mul(x[2 * i], y[2 * i + 1]), ring_.mul(y[2 * i], x[2 * i + 1])));
  return s;
}

std::int64_t SymplecticSpace::form_prime(std::span<const std::int64_t> x,
                                         std::span<const std::int64_t> y) const {
  if (x.size() != dimension() || y.size() != dimension())
    throw InvalidInput("form_prime: vectors must have length " + std::to_string(dimension()));
  std::int64_t s = 0;
  for (std::size_t i = 0; i < n_; ++i)
    s = ring_.add(s, ring_.add(ring_.mul(x[2 * i], y[2 * i + 1]), ring_.mul(y[2 * i], x[2 * i + 1])));
  return s;
}

Vector SymplecticSpace::basis_vector(std::size_t i) const {
  if (i < 1 || i > dimension()) throw InvalidInput("basis_vector: index out of range");
  Vector v(dimension(), 0);
  v[i - 1] = ring_.reduce(1);
  return v;
}

Vector SymplecticSpace::reduce(std::span<const std::int64_t> v) const {
  Vector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ring_.reduce(v[i]);
  return out;
}

std::uint64_t vector_count(const ModulusRing& ring, std::size_t dimension) {
  const auto c = ring.power_count(static_cast<unsigned>(dimension));
  if (!c) throw InvalidInput("vector code does not fit in 64 bits");
  return *c;
}

Symbol encode_vector(const ModulusRing& ring, std::span<const std::int64_t> v) {
  vector_count(ring, v.size());
  const auto m = static_cast<std::uint64_t>(ring.modulus());
  Symbol code = 0;
  for (auto x : v) code = code * m + static_cast<std::uint64_t>(ring.reduce(x));
  return code;
}

Vector decode_vector(const ModulusRing& ring, std::size_t dimension, Symbol code) {
  const auto m = static_cast<std::uint64_t>(ring.modulus());
  Vector v(dimension);
  for (std::size_t i = dimension; i-- > 0;) {
    v[i] = static_cast<std::int64_t>(code % m);
    code /= m;
  }
  return v;
}

Symbol encode_pair(const ModulusRing& ring, std::span<const std::int64_t> x, std::span<const std::int64_t> y) {
  if (x.size() != y.size()) throw InvalidInput("encode_pair: length mismatch");
  const auto c = ring.power_count(static_cast<unsigned>(2 * x.size()));
  if (!c) throw InvalidInput("pair code does not fit in 64 bits");
  return encode_vector(ring, x) * vector_count(ring, x.size()) + encode_vector(ring, y);
}

std::pair<Vector, Vector> decode_pair(const ModulusRing& ring, std::size_t dimension, Symbol code) {
  const auto c = vector_count(ring, dimension);
  return {decode_vector(ring, dimension, code / c), decode_vector(ring, dimension, code % c)};
}

bool is_symplectic(const SymplecticSpace& space, const IntMatrix& a) {
  const auto d = space.dimension();
  if (a.rows() != d || a.cols() != d) return false;
  const auto m = space.ring().modulus();
  const auto lhs = IntMatrix::multiply_mod(IntMatrix::multiply_mod(a.transposed(), space.q(), m), a, m);
  return lhs == space.q().reduced_mod(m);
}

SymplecticMatrix::SymplecticMatrix(SymplecticSpace space, IntMatrix a)
    : space_(std::move(space)), a_(a.reduced_mod(space_.ring().modulus())) {
  if (!is_symplectic(space_, a_)) throw InvalidInput("matrix is not symplectic");
}

SymplecticMatrix::SymplecticMatrix(SymplecticSpace space, IntMatrix a, bool)
    : space_(std::move(space)), a_(std::move(a)) {}

SymplecticMatrix SymplecticMatrix::identity(const SymplecticSpace& space) {
  return SymplecticMatrix(space, IntMatrix::identity(space.dimension()), true);
}

Vector SymplecticMatrix::apply(std::span<const std::int64_t> v) const {
  if (v.size() != space_.dimension()) throw InvalidInput("apply: length mismatch");
  const auto& r = space_.ring();
  Vector out(v.size(), 0);
  for (std::size_t i = 0; i < a_.rows(); ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < a_.cols(); ++j)
      if (a_(i, j) != 0 && v[j] != 0) s = r.add(s, r.mul(a_(i, j), v[j]));
    out[i] = s;
  }
  return out;
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const auto m = space_.ring().modulus();
  IntMatrix minus_q = space_.q();
  for (std::size_t i = 0; i < minus_q.rows(); ++i)
    for (std::size_t j = 0; j < minus_q.cols(); ++j) minus_q(i, j) = -minus_q(i, j);
  auto inv = IntMatrix::multiply_mod(IntMatrix::multiply_mod(minus_q, a_.transposed(), m), space_.q(), m);
  return SymplecticMatrix(space_, std::move(inv), true);
}

SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
  if (!(a.space_ == b.space_)) throw InvalidInput("product of matrices from different spaces");
  return SymplecticMatrix(a.space_, IntMatrix::multiply_mod(a.a_, b.a_, a.space_.ring().modulus()), true);
}

std::size_t sigma(std::size_t i) { return (i % 2 == 0) ? i - 1 : i + 1; }

SymplecticMatrix elementary_generator(const SymplecticSpace& space, std::size_t i, std::size_t j,
                                      std::int64_t r) {
  const auto d = space.dimension();
  if (i < 1 || j < 1 || i > d || j > d || i == j)
    throw InvalidInput("elementary_generator: need 1 <= i != j <= 2n");
  const auto& ring = space.ring();
  IntMatrix e = IntMatrix::identity(d);
  e(i - 1, j - 1) = ring.add(e(i - 1, j - 1), r);
  if (i != sigma(j)) {
    // The correction term sits at (sigma(j), sigma(i)); placing it at
    // (sigma(i), sigma(j)) does not preserve h.
    const std::int64_t sign = ((i + j) % 2 == 0) ? 1 : -1;
    auto& c = e(sigma(j) - 1, sigma(i) - 1);
    c = ring.sub(c, ring.mul(sign, r));
  }
  e = e.reduced_mod(ring.modulus());
  if (!is_symplectic(space, e))
    throw InternalInconsistency("E_{" + std::to_string(i) + "," + std::to_string(j) + "}(" + std::to_string(r) +
                                ") is not symplectic");
  return SymplecticMatrix(space, std::move(e));
}

std::vector<SymplecticMatrix> elementary_generators(const SymplecticSpace& space) {
  std::vector<SymplecticMatrix> out;
  const auto d = space.dimension();
  for (std::size_t i = 1; i <= d; ++i)
    for (std::size_t j = 1; j <= d; ++j) {
      if (i == j) continue;
      for (std::int64_t r = 1; r < space.ring().modulus(); ++r) out.push_back(elementary_generator(space, i, j, r));
    }
  return out;
}

SymplecticMatrix stabilization(const SymplecticMatrix& a) {
  const SymplecticSpace big(a.space().ring(), a.space().n() + 1);
  return SymplecticMatrix(big, IntMatrix::block_diagonal(a.entries(), IntMatrix::identity(2)));
}

namespace {

// Gauss-Jordan over Z/p^e: pivots must be units, i.e. prime to p.
std::optional<IntMatrix> inverse_prime_power(const IntMatrix& a, std::int64_t p, std::int64_t q) {
  const ModulusRing r(q);
  const auto n = a.rows();
  IntMatrix m = a.reduced_mod(q);
  IntMatrix inv = IntMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (m(i, c) % p != 0) {
        piv = i;
        break;
      }
    if (piv == n) return std::nullopt;
    for (std::size_t k = 0; k < n; ++k) {
      std::swap(m(c, k), m(piv, k));
      std::swap(inv(c, k), inv(piv, k));
    }
    const auto u = *r.inverse(m(c, c));
    for (std::size_t k = 0; k < n; ++k) {
      m(c, k) = r.mul(m(c, k), u);
      inv(c, k) = r.mul(inv(c, k), u);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      const auto f = m(i, c);
      for (std::size_t k = 0; k < n; ++k) {
        m(i, k) = r.sub(m(i, k), r.mul(f, m(c, k)));
        inv(i, k) = r.sub(inv(i, k), r.mul(f, inv(c, k)));
      }
    }
  }
  return inv;
}

}  // namespace

std::optional<IntMatrix> inverse_mod(const IntMatrix& a, const ModulusRing& ring) {
  if (a.rows() != a.cols()) throw InvalidInput("inverse_mod: matrix must be square");
  const auto n = a.rows();
  if (ring.modulus() == 1) return IntMatrix(n, n, 0);
  IntMatrix acc(n, n, 0);
  std::int64_t mod = 1;
  for (const auto& pp : ring.prime_factors()) {
    std::int64_t q = 1;
    for (int e = 0; e < pp.exponent; ++e) q *= pp.prime;
    const auto part = inverse_prime_power(a, pp.prime, q);
    if (!part) return std::nullopt;
    // x = acc mod `mod`, x = part mod q.
    const ModulusRing qr(q);
    const auto t = *qr.inverse(mod % q);
    const ModulusRing full(mod * q);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const auto k = qr.mul(qr.sub((*part)(i, j), acc(i, j)), t);
        acc(i, j) = full.add(acc(i, j), full.mul(mod, k));
      }
    mod *= q;
  }
  return acc;
}

std::vector<Vector> dual_basis(const SymplecticSpace& space, const std::vector<Vector>& b) {
  const auto d = space.dimension();
  if (b.size() != d) throw InvalidInput("dual_basis: need 2n vectors");
  IntMatrix bm(d, d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (b[i].size() != d) throw InvalidInput("dual_basis: vector length mismatch");
    for (std::size_t j = 0; j < d; ++j) bm(i, j) = space.ring().reduce(b[i][j]);
  }
  const auto m = space.ring().modulus();
  const auto c = inverse_mod(IntMatrix::multiply_mod(bm, space.q(), m), space.ring());
  if (!c) throw InvalidInput("dual_basis: input is not a basis");
  std::vector<Vector> out;
  for (std::size_t j = 0; j < d; ++j) out.push_back(space.reduce(c->column(j)));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (space.form(b[i], out[j]) != (i == j ? space.ring().reduce(1) : 0))
        throw InternalInconsistency("dual_basis: h(b_i, c_j) != delta_ij");
  return out;
}

PerpResult perp(const SymplecticSpace& space, const std::vector<Vector>& s, const Budget& budget) {
  const auto& ring = space.ring();
  const auto d = space.dimension();
  const auto total = vector_count(ring, d);
  budget.require_elements(total, "perp");
  PerpResult out;
  for (Symbol code = 0; code < total; ++code) {
    const auto x = decode_vector(ring, d, code);
    bool ok = true;
    for (const auto& v : s)
      if (space.form(v, x) != 0) {
        ok = false;
        break;
      }
    if (ok) out.elements.push_back(code);
  }
  std::set<Symbol> span{0};
  for (auto code : out.elements) {
    if (span.count(code)) continue;
    const auto g = decode_vector(ring, d, code);
    out.generators.push_back(g);
    std::set<Symbol> next;
    for (auto w : span) {
      const auto wv = decode_vector(ring, d, w);
      for (std::int64_t r = 0; r < ring.modulus(); ++r) {
        Vector sum(d);
        for (std::size_t i = 0; i < d; ++i) sum[i] = ring.add(wv[i], ring.mul(r, g[i]));
        next.insert(encode_vector(ring, sum));
      }
    }
    span = std::move(next);
  }
  return out;
}

}  // namespace framecomplex
