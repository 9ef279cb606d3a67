#include <cstdint>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "framecomplex/frames.hpp"
#include "framecomplex/symplectic.hpp"

using namespace framecomplex;

namespace {

// Form h on bitmask vectors of F_2^{2n}; bit i is coordinate i (0-based).
int h2(std::uint32_t x, std::uint32_t y, std::size_t n) {
  int s = 0;
  for (std::size_t i = 0; i < n; ++i)
    s += static_cast<int>(((x >> (2 * i)) & (y >> (2 * i + 1)) & 1U) + ((x >> (2 * i + 1)) & (y >> (2 * i)) & 1U));
  return s % 2;
}

bool in_span_f2(std::uint32_t v, const std::vector<std::uint32_t>& basis) {
  // basis is independent; brute force over combinations
  for (std::uint32_t c = 0; c < (1U << basis.size()); ++c) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (c >> i & 1U) s ^= basis[i];
    if (s == v) return true;
  }
  return false;
}

// Isotropic frames of F_2^{2n} (nonempty, independent, pairwise orthogonal).
std::size_t count_iu_f2(std::size_t n) {
  std::size_t total = 0;
  std::vector<std::uint32_t> cur;
  std::function<void()> rec = [&]() {
    for (std::uint32_t v = 1; v < (1U << (2 * n)); ++v) {
      if (in_span_f2(v, cur)) continue;
      bool ok = h2(v, v, n) == 0;
      for (auto w : cur) ok = ok && h2(v, w, n) == 0;
      if (!ok) continue;
      ++total;
      cur.push_back(v);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return total;
}

// Hyperbolic sequences ((x1,y1),...) of F_2^{2n}.
std::size_t count_hu_f2(std::size_t n) {
  std::size_t total = 0;
  std::vector<std::uint32_t> used;
  std::function<void()> rec = [&]() {
    const std::uint32_t top = 1U << (2 * n);
    for (std::uint32_t x = 1; x < top; ++x)
      for (std::uint32_t y = 1; y < top; ++y) {
        if (h2(x, y, n) != 1) continue;
        bool ok = true;
        for (auto w : used) ok = ok && h2(x, w, n) == 0 && h2(y, w, n) == 0;
        if (!ok) continue;
        ++total;
        used.push_back(x);
        used.push_back(y);
        rec();
        used.pop_back();
        used.pop_back();
      }
  };
  rec();
  return total;
}

bool preserves_form(const SymplecticSpace& s, const IntMatrix& a) {
  const auto lhs = IntMatrix::multiply_mod(IntMatrix::multiply_mod(a.transposed(), s.q(), s.ring().modulus()), a,
                                           s.ring().modulus());
  return lhs == s.q().reduced_mod(s.ring().modulus());
}

}  // namespace

TEST(Symplectic, FormOnBasis) {
  const SymplecticSpace s(ModulusRing(5), 2);
  EXPECT_EQ(s.form(s.basis_vector(1), s.basis_vector(2)), 1);
  EXPECT_EQ(s.form(s.basis_vector(2), s.basis_vector(1)), 4);
  EXPECT_EQ(s.form(s.basis_vector(1), s.basis_vector(3)), 0);
  EXPECT_EQ(s.form_prime(s.basis_vector(1), s.basis_vector(2)), 1);
}

TEST(Symplectic, FormIsAlternating) {
  const SymplecticSpace s(ModulusRing(6), 2);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::int64_t> d(0, 5);
  for (int t = 0; t < 100; ++t) {
    Vector x(4);
    for (auto& c : x) c = d(rng);
    EXPECT_EQ(s.form(x, x), 0);
  }
}

TEST(Symplectic, VectorCodes) {
  const ModulusRing r(3);
  const Vector v{1, 0, 2};
  EXPECT_EQ(encode_vector(r, v), 11U);
  EXPECT_EQ(decode_vector(r, 3, 11), v);
  const Vector w{0, 1, 1};
  EXPECT_EQ(decode_pair(r, 3, encode_pair(r, v, w)), std::make_pair(v, w));
  EXPECT_THROW(vector_count(ModulusRing(1000003), 8), InvalidInput);
}

TEST(Symplectic, ElementaryGenerators) {
  const SymplecticSpace s(ModulusRing(7), 2);
  const auto e12 = elementary_generator(s, 1, 2, 3).entries();
  IntMatrix expected{{1, 3, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  EXPECT_EQ(e12, expected);
  const auto e13 = elementary_generator(s, 1, 3, 3).entries();
  // I + r e_{13} with the compensating entry at (sigma(3), sigma(1)) = (4, 2).
  EXPECT_EQ(e13(0, 2), 3);
  EXPECT_EQ(e13(3, 1), 4);
  std::size_t off = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) off += (i != j && e13(i, j) != 0) ? 1 : 0;
  EXPECT_EQ(off, 2U);
  EXPECT_EQ(sigma(3), 4U);
  EXPECT_EQ(sigma(4), 3U);
}

TEST(Symplectic, GeneratorsPreserveForm) {
  for (std::int64_t m : {2, 3, 4}) {
    const SymplecticSpace s(ModulusRing(m), 2);
    const auto gens = elementary_generators(s);
    EXPECT_EQ(gens.size(), 12U * static_cast<std::size_t>(m - 1));
    for (const auto& g : gens) {
      EXPECT_TRUE(preserves_form(s, g.entries()));
      EXPECT_EQ(g * g.inverse(), SymplecticMatrix::identity(s));
    }
  }
  const SymplecticSpace s(ModulusRing(3), 1);
  EXPECT_THROW(SymplecticMatrix(s, IntMatrix{{1, 0}, {0, 2}}), InvalidInput);
}

TEST(Symplectic, StabilizationIsHomomorphism) {
  const SymplecticSpace s(ModulusRing(3), 1);
  const auto gens = elementary_generators(s);
  for (const auto& a : gens)
    for (const auto& b : gens) EXPECT_EQ(stabilization(a * b), stabilization(a) * stabilization(b));
}

TEST(Symplectic, Perp) {
  const SymplecticSpace s(ModulusRing(2), 2);
  EXPECT_EQ(perp(s, {s.basis_vector(1)}).elements.size(), 8U);
  EXPECT_EQ(perp(s, {}).elements.size(), 16U);
  EXPECT_EQ(perp(s, {s.basis_vector(1), s.basis_vector(2)}).elements.size(), 4U);
  for (auto code : perp(s, {s.basis_vector(3)}).elements)
    EXPECT_EQ(s.form(decode_vector(s.ring(), 4, code), s.basis_vector(3)), 0);
}

TEST(Symplectic, DualBasis) {
  const SymplecticSpace s(ModulusRing(6), 2);
  std::vector<Vector> b;
  for (std::size_t i = 1; i <= 4; ++i) b.push_back(s.basis_vector(i));
  b[1][0] = 5;
  b[3][2] = 2;
  const auto c = dual_basis(s, b);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(s.form(b[i], c[j]), i == j ? 1 : 0);
  EXPECT_THROW(dual_basis(s, {s.basis_vector(1)}), InvalidInput);
}

TEST(Frames, IsFrame) {
  const SymplecticSpace s4(ModulusRing(4), 2);
  Vector two_e3{0, 0, 2, 0};
  EXPECT_FALSE(is_frame(s4, {s4.basis_vector(1), two_e3}, FrameMode::kUnimodular));
  EXPECT_TRUE(is_frame(s4, {s4.basis_vector(1), s4.basis_vector(3)}, FrameMode::kIsotropic));
  EXPECT_TRUE(is_frame(s4, {s4.basis_vector(1), s4.basis_vector(2)}, FrameMode::kUnimodular));
  EXPECT_FALSE(is_frame(s4, {s4.basis_vector(1), s4.basis_vector(2)}, FrameMode::kIsotropic));
  EXPECT_FALSE(is_frame(s4, {}, FrameMode::kUnimodular));
  EXPECT_FALSE(is_frame(s4, {s4.basis_vector(1), s4.basis_vector(1)}, FrameMode::kUnimodular));
}

TEST(Frames, EnumerationCountsMatchBruteForce) {
  const SymplecticSpace s2(ModulusRing(2), 2);
  FrameQuery iu;
  iu.family = FrameFamily::kIU;
  const auto iu4 = enumerate_poset(s2, iu);
  EXPECT_EQ(iu4.size(), 105U);
  EXPECT_EQ(iu4.size(), count_iu_f2(2));
  EXPECT_TRUE(iu4.check_chain_condition());
  FrameQuery hu;
  hu.family = FrameFamily::kHU;
  const auto hu4 = enumerate_poset(s2, hu);
  EXPECT_EQ(hu4.count_of_length(1), 120U);
  EXPECT_EQ(hu4.size(), 840U);
  EXPECT_EQ(hu4.size(), count_hu_f2(2));
  const SymplecticSpace s3(ModulusRing(2), 3);
  EXPECT_EQ(enumerate_poset(s3, iu).size(), 24633U);
  EXPECT_EQ(enumerate_poset(s3, iu).size(), count_iu_f2(3));
}

TEST(Frames, UnimodularCounts) {
  // U((Z/2)^3): ordered linearly independent tuples, 7 + 42 + 168.
  const auto u = enumerate_unimodular(ModulusRing(2), 3, 3);
  EXPECT_EQ(u.size(), 217U);
  EXPECT_EQ(u.count_of_length(2), 42U);
  // (Z/4)^2: unimodular vectors are those with an odd entry, 16 - 4.
  EXPECT_EQ(enumerate_unimodular(ModulusRing(4), 2, 1).size(), 12U);
}

TEST(Frames, SuffixAndMembership) {
  const SymplecticSpace s(ModulusRing(2), 2);
  const Sequence e1{encode_vector(s.ring(), s.basis_vector(1))};
  FrameQuery q;
  q.family = FrameFamily::kIU;
  q.suffix = e1;
  q.suffix_family = FrameFamily::kIU;
  const auto fv = enumerate_poset(s, q);
  EXPECT_EQ(fv.size(), 6U);
  for (const auto& w : fv.members()) {
    Sequence wv = w;
    wv.push_back(e1[0]);
    EXPECT_TRUE(in_family(s, FrameFamily::kIU, wv));
  }
}

TEST(Frames, Orbits) {
  const SymplecticSpace s2(ModulusRing(2), 2);
  const auto& r = s2.ring();
  const auto o1 = esp_orbit(s2, FrameFamily::kIU, {encode_vector(r, s2.basis_vector(1))});
  EXPECT_EQ(o1.orbit_size, 15U);
  EXPECT_EQ(o1.transitive, std::optional<bool>(true));
  EXPECT_TRUE(o1.closed);
  const auto o2 = esp_orbit(s2, FrameFamily::kHU, {encode_pair(r, s2.basis_vector(1), s2.basis_vector(2))});
  EXPECT_EQ(o2.orbit_size, 120U);
  EXPECT_EQ(o2.transitive, std::optional<bool>(true));
  const SymplecticSpace s3(ModulusRing(2), 3);
  const auto o3 = esp_orbit(s3, FrameFamily::kIU,
                            {encode_vector(r, s3.basis_vector(1)), encode_vector(r, s3.basis_vector(3))});
  EXPECT_EQ(o3.orbit_size, 1890U);
  EXPECT_EQ(o3.transitive, std::optional<bool>(true));
}

TEST(Frames, CompletionOfAllUnitVectors) {
  const SymplecticSpace s(ModulusRing(2), 2);
  for (std::uint32_t code = 1; code < 16; ++code) {
    const Vector v = decode_vector(s.ring(), 4, code);
    const auto res = complete_to_hyperbolic(s, {v}, 1, code);
    ASSERT_TRUE(res.basis) << code;
    EXPECT_EQ(res.verdict, Verdict::kPass);
    const auto& b = *res.basis;
    ASSERT_EQ(b.x.size(), 2U);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        EXPECT_EQ(s.form(b.x[i], b.y[j]), i == j ? 1 : 0);
        EXPECT_EQ(s.form(b.x[i], b.x[j]), 0);
        EXPECT_EQ(s.form(b.y[i], b.y[j]), 0);
      }
    EXPECT_EQ(b.x[0], v);
    EXPECT_TRUE(verify_hyperbolic_completion(s, {v}, b));
  }
  EXPECT_THROW(complete_to_hyperbolic(s, {s.basis_vector(1), s.basis_vector(3)}, 1), InvalidInput);
}

TEST(Frames, CompletionOverZ6) {
  const SymplecticSpace s(ModulusRing(6), 3);
  const std::vector<Vector> v{{2, 1, 3, 0, 0, 0}, {0, 0, 1, 0, 5, 0}};
  ASSERT_TRUE(is_frame(s, v, FrameMode::kIsotropic));
  const auto res = complete_to_hyperbolic(s, v, 1, 4);
  ASSERT_TRUE(res.basis);
  EXPECT_TRUE(verify_hyperbolic_completion(s, v, *res.basis));
}
