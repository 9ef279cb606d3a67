#include <gtest/gtest.h>

#include "framecomplex/homology.hpp"
#include "framecomplex/nerve.hpp"
#include "framecomplex/symplectic.hpp"
#include "framecomplex/theorems.hpp"

using namespace framecomplex;

TEST(Nerve, SimplicialClosure) {
  const auto tri = simplicial_closure({{0, 1, 2}});
  EXPECT_EQ(tri.size(), 7U);
  EXPECT_TRUE(tri.check_chain_condition());
  EXPECT_EQ(is_acyclic_through(tri, 3), Tristate::kTrue);
  const auto two_edges = simplicial_closure({{0, 1}, {1, 2}});
  EXPECT_EQ(two_edges.size(), 5U);
}

TEST(Nerve, NerveOfPieces) {
  const auto a = simplicial_closure({{0, 1}});
  const auto b = simplicial_closure({{2, 3}});
  const auto c = simplicial_closure({{1, 2}});
  EXPECT_EQ(nerve_of({a, b}, 2).size(), 2U);
  // a-c and c-b meet, a-b do not: a path with three vertices and two edges
  EXPECT_EQ(nerve_of({a, b, c}, 3).size(), 5U);
}

TEST(Nerve, Octahedron) {
  const auto [k, faces] = octahedron_faces();
  EXPECT_EQ(faces.size(), 8U);
  const auto h = integer_homology(k, 3, true);
  EXPECT_EQ(h.group(2).free_rank, 1U);
  EXPECT_EQ(classical_nerve(k, faces, 1).verdict, Verdict::kPass);
}

TEST(Nerve, HexagonArcs) {
  const auto c0 = hexagon_arc_cover(0);
  EXPECT_NO_THROW(validate_cover(c0));
  EXPECT_EQ(verify_poset_nerve(c0).verdict, Verdict::kPass);
  // The two arcs meet in two points, so the pieces fail 0-acyclicity of the
  // intersection required at l = 1.
  EXPECT_EQ(verify_poset_nerve(hexagon_arc_cover(1)).verdict, Verdict::kHypothesisViolation);
}

TEST(Nerve, RandomFacetCovers) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto cover = random_facet_cover(seed, 6, 5, 1);
    EXPECT_NO_THROW(validate_cover(cover));
    EXPECT_EQ(verify_poset_nerve(cover).verdict, Verdict::kPass) << seed;
  }
}

TEST(Nerve, AlphaIsSubposetOfIndex) {
  const auto cover = random_facet_cover(3, 6, 4, 1);
  const auto alphas = all_alphas(cover);
  ASSERT_EQ(alphas.size(), cover.total.size());
  for (std::uint32_t x = 0; x < cover.total.size(); ++x) {
    EXPECT_FALSE(alphas[x].empty());
    for (const auto& v : alphas[x].members()) {
      const auto i = cover.index.index_of(v);
      ASSERT_TRUE(i);
      EXPECT_TRUE(cover.pieces[*i].contains(cover.total.member(x)));
    }
  }
}

TEST(Nerve, Maazen5OnInjectiveWords) {
  const std::vector<Symbol> v{0, 1, 2, 3};
  const auto f = ordered_sequences(v, 3);
  EXPECT_EQ(verify_maazen5(f, 2, 0, 1).verdict, Verdict::kPass);
  EXPECT_EQ(verify_maazen5(f, 3, 1, 1).verdict, Verdict::kPass);
}

TEST(Nerve, SymplecticCoversAreValid) {
  const SymplecticSpace s(ModulusRing(2), 3);
  const int l = connectivity_bound("b-w1", 3, 0, 1);
  ASSERT_EQ(l, 0);
  const auto c1 = bw1_cover(s, l, 2);
  EXPECT_NO_THROW(validate_cover(c1));
  EXPECT_EQ(verify_poset_nerve(c1).verdict, Verdict::kPass);
  const SymplecticSpace s2(ModulusRing(2), 2);
  const auto c2 = bw2_cover(s2, connectivity_bound("b-w2", 2, 0, 1), 1);
  EXPECT_NO_THROW(validate_cover(c2));
  EXPECT_NE(verify_surjectivity(c2).verdict, Verdict::kFail);
}

TEST(Nerve, TruncationKeepsShape) {
  const auto cover = random_facet_cover(1, 6, 5, 1);
  const auto t = truncate_cover(cover, 1);
  EXPECT_EQ(t.total.max_length(), 1U);
  EXPECT_EQ(t.pieces.size(), t.index.size());
  EXPECT_LE(t.index.max_length(), 1U);
}
