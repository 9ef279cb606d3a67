#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "framecomplex/ring.hpp"
#include "framecomplex/smith.hpp"
#include "framecomplex/sparse_matrix.hpp"

using namespace framecomplex;

namespace {

// Brute force: is there s with sum s_i v_i == 1 mod m?
bool unimodular_by_search(std::int64_t m, const std::vector<std::int64_t>& v) {
  std::vector<std::int64_t> s(v.size(), 0);
  while (true) {
    std::int64_t t = 0;
    for (std::size_t i = 0; i < v.size(); ++i) t += s[i] * v[i];
    if (((t % m) + m) % m == 1 % m) return true;
    std::size_t i = 0;
    while (i < s.size() && ++s[i] == m) s[i++] = 0;
    if (i == s.size()) return false;
  }
}

// Brute force right inverse of a rows x cols matrix over Z/m.
bool right_inverse_by_search(std::int64_t m, const IntMatrix& a) {
  const std::size_t cells = a.cols() * a.rows();
  std::vector<std::int64_t> x(cells, 0);
  while (true) {
    bool ok = true;
    for (std::size_t i = 0; i < a.rows() && ok; ++i)
      for (std::size_t j = 0; j < a.rows() && ok; ++j) {
        std::int64_t t = 0;
        for (std::size_t c = 0; c < a.cols(); ++c) t += a(i, c) * x[c * a.rows() + j];
        ok = ((t % m) + m) % m == (i == j ? 1 : 0);
      }
    if (ok) return true;
    std::size_t i = 0;
    while (i < cells && ++x[i] == m) x[i++] = 0;
    if (i == cells) return false;
  }
}

SparseIntMatrix dense(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  return SparseIntMatrix::from_dense(IntMatrix(rows));
}

}  // namespace

TEST(ModulusRing, Factorization) {
  for (std::int64_t m : {2, 4, 6, 12, 30, 97, 360}) {
    const ModulusRing r(m);
    std::int64_t prod = 1;
    for (const auto& f : r.prime_factors())
      for (int e = 0; e < f.exponent; ++e) prod *= f.prime;
    EXPECT_EQ(prod, m);
  }
  EXPECT_THROW(ModulusRing(1), InvalidInput);
}

TEST(ModulusRing, Inverses) {
  const ModulusRing r(12);
  for (std::int64_t a = 0; a < 12; ++a) {
    const auto inv = r.inverse(a);
    EXPECT_EQ(inv.has_value(), std::gcd(a, std::int64_t{12}) == 1);
    if (inv) EXPECT_EQ(r.mul(a, *inv), 1);
  }
}

TEST(Unimodular, SpecExamples) {
  EXPECT_TRUE(is_unimodular_vector(ModulusRing(4), std::vector<std::int64_t>{1, 0}));
  EXPECT_FALSE(is_unimodular_vector(ModulusRing(4), std::vector<std::int64_t>{2, 2}));
  EXPECT_TRUE(is_unimodular_vector(ModulusRing(6), std::vector<std::int64_t>{2, 3}));
}

TEST(Unimodular, AgreesWithSearch) {
  for (std::int64_t m : {2, 3, 4, 6, 8, 9}) {
    const ModulusRing r(m);
    for (std::int64_t a = 0; a < m; ++a)
      for (std::int64_t b = 0; b < m; ++b) {
        const std::vector<std::int64_t> v{a, b};
        EXPECT_EQ(is_unimodular_vector(r, v), unimodular_by_search(m, v)) << m << ": " << a << "," << b;
        // appending a coordinate keeps unimodularity
        if (is_unimodular_vector(r, v)) {
          EXPECT_TRUE(is_unimodular_vector(r, std::vector<std::int64_t>{a, b, (a * 5 + 1) % m}));
          EXPECT_TRUE(is_unimodular_vector(r, std::vector<std::int64_t>{b, a}));
        }
      }
  }
}

TEST(StableRange, SpecExamples) {
  EXPECT_EQ(check_stable_range(ModulusRing(2), 1).holds, std::optional<bool>(true));
  EXPECT_EQ(check_stable_range(ModulusRing(6), 1).holds, std::optional<bool>(true));
  EXPECT_EQ(check_stable_range(ModulusRing(4), 2).holds, std::optional<bool>(true));
  EXPECT_EQ(check_matrix_stable_range(ModulusRing(2), 1, 1).holds, std::optional<bool>(true));
  EXPECT_EQ(check_matrix_stable_range(ModulusRing(2), 2, 1).holds, std::optional<bool>(true));
  EXPECT_EQ(check_matrix_stable_range(ModulusRing(3), 1, 1).holds, std::optional<bool>(true));
}

TEST(StableRange, StableRankOfSmallRings) {
  for (std::int64_t m : {2, 3, 4, 5, 6}) {
    const auto r = stable_rank(ModulusRing(m));
    ASSERT_TRUE(r.value);
    EXPECT_EQ(*r.value, 1);
    EXPECT_EQ(r.ring.stable_rank_hint(), std::optional<int>(1));
  }
}

TEST(StableRange, MatrixConditionMatchesVectorCondition) {
  for (std::int64_t m : {2, 3})
    for (int n = 1; n <= 2; ++n)
      for (int k = 1; n + k <= 3; ++k) {
        const auto r = check_matrix_stable_range(ModulusRing(m), n, k);
        ASSERT_TRUE(r.consistent_with_vector_condition);
        EXPECT_TRUE(*r.consistent_with_vector_condition);
        EXPECT_FALSE(r.convention.empty());
      }
}

TEST(StableRange, BudgetGivesUnknown) {
  Budget b;
  b.element_limit = 3;
  const auto r = check_stable_range(ModulusRing(5), 1, b);
  EXPECT_FALSE(r.holds);
}

TEST(Smith, SpecExamples) {
  const auto id = smith_normal_form(SparseIntMatrix::identity(3));
  EXPECT_EQ(id.diagonal, (std::vector<std::int64_t>{1, 1, 1}));
  const auto zero = smith_normal_form(SparseIntMatrix(3, 4));
  EXPECT_TRUE(zero.diagonal.empty());
  EXPECT_EQ(zero.rank, 0U);
  const auto d = smith_normal_form(dense({{2, 0}, {0, 3}}));
  EXPECT_EQ(d.diagonal, (std::vector<std::int64_t>{1, 6}));
}

TEST(Smith, TransformsAreVerified) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::int64_t> v(-4, 4);
  for (int t = 0; t < 30; ++t) {
    IntMatrix a(4, 5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) a(i, j) = v(rng);
    const auto s = smith_normal_form(SparseIntMatrix::from_dense(a), true);
    ASSERT_TRUE(s.transforms);
    IntMatrix d(4, 5);
    for (std::size_t i = 0; i < s.diagonal.size(); ++i) d(i, i) = s.diagonal[i];
    EXPECT_EQ(s.transforms->u * a * s.transforms->v, d);
    EXPECT_EQ(std::abs(s.transforms->u.determinant()), 1);
    EXPECT_EQ(std::abs(s.transforms->v.determinant()), 1);
    for (std::size_t i = 1; i < s.diagonal.size(); ++i) EXPECT_EQ(s.diagonal[i] % s.diagonal[i - 1], 0);
  }
}

TEST(Smith, RankMatchesPrimeRanksAndPermutation) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> v(-3, 3);
  for (int t = 0; t < 40; ++t) {
    IntMatrix a(5, 4);
    for (std::size_t i = 0; i < 5; ++i)
      for (std::size_t j = 0; j < 4; ++j) a(i, j) = v(rng);
    const auto sp = SparseIntMatrix::from_dense(a);
    const auto s = smith_normal_form(sp);
    for (std::int64_t p : {2, 3, 5, 7, 11}) {
      bool divides = false;
      for (auto d : s.diagonal) divides = divides || d % p == 0;
      if (!divides) EXPECT_EQ(rank_mod_prime(sp, p), s.rank);
    }
    const auto perm = sp.permuted({4, 2, 0, 3, 1}, {3, 1, 0, 2});
    EXPECT_EQ(smith_normal_form(perm).diagonal, s.diagonal);
  }
}

TEST(Smith, RankModPrimeExamples) {
  EXPECT_EQ(rank_mod_prime(SparseIntMatrix::identity(3), 2), 3U);
  EXPECT_EQ(rank_mod_prime(dense({{2, 0}, {0, 3}}), 2), 1U);
  EXPECT_EQ(rank_mod_prime(dense({{2, 0}, {0, 3}}), 5), 2U);
  EXPECT_THROW(rank_mod_prime(SparseIntMatrix::identity(2), 4), InvalidInput);
}

TEST(RightInverse, SpecExamples) {
  EXPECT_TRUE(has_right_inverse_mod_m(SparseIntMatrix::identity(3), ModulusRing(4)));
  EXPECT_FALSE(has_right_inverse_mod_m(dense({{2, 2}}), ModulusRing(4)));
  EXPECT_TRUE(has_right_inverse_mod_m(dense({{1, 0, 0, 0}, {0, 0, 1, 0}}), ModulusRing(6)));
}

TEST(RightInverse, AgreesWithExhaustiveSearch) {
  for (std::int64_t m : {2, 3, 4}) {
    const ModulusRing ring(m);
    std::mt19937_64 rng(static_cast<std::uint64_t>(m));
    std::uniform_int_distribution<std::int64_t> v(0, m - 1);
    for (int t = 0; t < 25; ++t) {
      const std::size_t rows = 1 + static_cast<std::size_t>(t % 2);
      const std::size_t cols = m == 4 ? 3 : 4;
      IntMatrix a(rows, cols);
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a(i, j) = v(rng);
      EXPECT_EQ(has_right_inverse_mod_m(SparseIntMatrix::from_dense(a), ring), right_inverse_by_search(m, a))
          << a.to_string();
    }
  }
}

TEST(AbelianGroup, InvariantFactorForm) {
  const std::vector<std::int64_t> orders{4, 6, 0, 1};
  const auto g = AbelianGroup::from_cyclic_orders(orders);
  EXPECT_EQ(g.free_rank, 1U);
  EXPECT_EQ(g.torsion, (std::vector<std::int64_t>{2, 12}));
  EXPECT_EQ(g.to_string(), "Z + Z/2 + Z/12");
}

TEST(IntMatrix, OverflowIsDetected) {
  const IntMatrix a{{std::int64_t{1} << 62, 0}, {0, 1}};
  EXPECT_THROW(a * a, ArithmeticOverflow);
}
