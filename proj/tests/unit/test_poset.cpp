#include <memory>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "framecomplex/poset.hpp"
#include "framecomplex/random_structures.hpp"
#include "framecomplex/sequence_poset.hpp"

using namespace framecomplex;

namespace {

std::shared_ptr<const FinitePoset> chain2() {
  return std::make_shared<const FinitePoset>(std::vector<std::string>{"a", "b"},
                                             std::vector<FinitePoset::Relation>{{0, 1}});
}

}  // namespace

TEST(FinitePoset, RejectsCycles) {
  EXPECT_THROW(FinitePoset({"a", "b"}, {{0, 1}, {1, 0}}), InvalidInput);
  EXPECT_THROW(FinitePoset({"a"}, {{0, 0}}), InvalidInput);
  EXPECT_THROW(FinitePoset({"a"}, {{0, 3}}), InvalidInput);
}

TEST(FinitePoset, ClosureAndDimension) {
  const FinitePoset p({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {0, 3}});
  EXPECT_TRUE(p.less(0, 2));
  EXPECT_FALSE(p.less(3, 2));
  EXPECT_EQ(p.dimension(), 2);
  EXPECT_EQ(p.strictly_above(0), (std::vector<std::uint32_t>{1, 2, 3}));
  EXPECT_EQ(p.depth(), (std::vector<int>{0, 1, 2, 1}));
}

TEST(FinitePoset, OppositeIsInvolution) {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_poset(rng, 12, 0.3);
    const auto pp = p.opposite().opposite();
    for (std::uint32_t a = 0; a < p.size(); ++a)
      for (std::uint32_t b = 0; b < p.size(); ++b) EXPECT_EQ(p.less(a, b), pp.less(a, b));
  }
}

TEST(FinitePoset, LinkOfMaximumIsEmpty) {
  const FinitePoset p({"a", "b", "top"}, {{0, 2}, {1, 2}});
  EXPECT_TRUE(p.link(2, LinkSign::kPlus).empty());
  EXPECT_EQ(p.link(2, LinkSign::kMinus).size(), 2U);
}

TEST(FinitePoset, TextRoundTrip) {
  Rng rng(9);
  const auto p = random_poset(rng, 10, 0.4);
  std::stringstream ss;
  write_poset_text(ss, p);
  const auto q = read_poset_text(ss);
  EXPECT_EQ(p.labels(), q.labels());
  for (std::uint32_t a = 0; a < p.size(); ++a)
    for (std::uint32_t b = 0; b < p.size(); ++b) EXPECT_EQ(p.less(a, b), q.less(a, b));
}

TEST(PosetMap, FiberExamples) {
  auto x = chain2();
  auto y = std::make_shared<const FinitePoset>(std::vector<std::string>{"0", "1"},
                                               std::vector<FinitePoset::Relation>{{0, 1}});
  const PosetMap f(x, y, {0, 1});
  EXPECT_EQ(f.fiber_under_elements(0), (std::vector<std::uint32_t>{0}));
  const auto id = PosetMap::identity(y);
  EXPECT_EQ(id.fiber_under_elements(1), (std::vector<std::uint32_t>{0, 1}));
  auto point = std::make_shared<const FinitePoset>(std::vector<std::string>{"*"},
                                                   std::vector<FinitePoset::Relation>{});
  const auto c = PosetMap::constant(x, point, 0);
  EXPECT_EQ(fiber_under(c, 0).size(), 2U);
  EXPECT_THROW(PosetMap(x, y, {1, 0}), InvalidInput);
}

TEST(HeightFunction, StrictlyIncreasing) {
  Rng rng(4);
  for (int i = 0; i < 10; ++i) {
    auto p = std::make_shared<const FinitePoset>(random_poset(rng, 15, 0.3));
    const auto ht = HeightFunction::standard(p);
    for (const auto& [a, b] : p->relations()) EXPECT_LT(ht(a), ht(b));
  }
  EXPECT_THROW(HeightFunction(chain2(), {1, 1}), InvalidInput);
}

TEST(SequencePoset, ChainCondition) {
  const std::vector<Symbol> v{0, 1, 2};
  EXPECT_TRUE(ordered_sequences(v, 3).check_chain_condition());
  EXPECT_EQ(ordered_sequences(v, 3).size(), 15U);
  EXPECT_FALSE(SequencePoset({{0, 1}}).check_chain_condition());
  EXPECT_THROW(SequencePoset({{0, 0}}), InvalidInput);
  EXPECT_THROW(SequencePoset({{0}, {0}}), InvalidInput);
}

TEST(SequencePoset, SubsequenceOrder) {
  const SequencePoset f({{1}, {2}, {3}, {1, 3}, {3, 1}, {1, 2, 3}});
  EXPECT_TRUE(f.less(0, 3));
  EXPECT_TRUE(f.less(3, 5));
  EXPECT_FALSE(f.less(4, 5));
}

TEST(SequencePoset, SubAfter) {
  const std::vector<Symbol> abc{0, 1, 2};
  const auto o = ordered_sequences(abc, 3);
  const Sequence a{0};
  const auto fa = o.sub_after(a);
  const std::vector<Symbol> bc{1, 2};
  const auto expected = ordered_sequences(bc, 2);
  EXPECT_EQ(fa.size(), expected.size());
  for (const auto& s : expected.members()) EXPECT_TRUE(fa.contains(s));
}

TEST(SequencePoset, SubAfterComposes) {
  const std::vector<Symbol> v{0, 1, 2, 3};
  const auto f = ordered_sequences(v, 4);
  for (const auto& vv : f.members()) {
    if (vv.size() > 2) continue;
    const auto fv = f.sub_after(vv);
    for (const auto& w : fv.members()) {
      Sequence wv = w;
      wv.insert(wv.end(), vv.begin(), vv.end());
      EXPECT_EQ(fv.sub_after(w), f.sub_after(wv));
    }
  }
}

TEST(SequencePoset, TensorCounts) {
  const SequencePoset single(std::vector<Sequence>{Sequence{7}});
  const auto t = tensor_with_set(single, 2);
  EXPECT_EQ(t.poset.size(), 2U);
  const std::vector<Symbol> v{0, 1, 2};
  const auto f = ordered_sequences(v, 3);
  const auto t3 = tensor_with_set(f, 3);
  for (std::size_t k = 1; k <= 3; ++k) {
    std::size_t pow = 1;
    for (std::size_t i = 0; i < k; ++i) pow *= 3;
    EXPECT_EQ(t3.poset.count_of_length(k), f.count_of_length(k) * pow);
  }
  for (std::uint32_t i = 0; i < f.size(); ++i) EXPECT_EQ(t3.projection[t3.section[i]], i);
}

TEST(SequencePoset, Truncation) {
  const std::vector<Symbol> v{0, 1, 2};
  const auto f = ordered_sequences(v, 3);
  EXPECT_EQ(f.truncate_by_length(5), f);
  const auto one = f.truncate_by_length(1);
  EXPECT_EQ(one.size(), 3U);
  EXPECT_TRUE(f.truncate_by_length(2).check_chain_condition());
}

TEST(SequencePoset, LinkMinusOfTwoFrame) {
  const std::vector<Symbol> v{0, 1, 2};
  const auto f = ordered_sequences(v, 3);
  const auto i = *f.index_of(Sequence{0, 1});
  const auto l = f.link_minus(i);
  EXPECT_EQ(l.size(), 2U);
  EXPECT_FALSE(l.less(0, 1));
  EXPECT_FALSE(l.less(1, 0));
}

TEST(SequencePoset, TextRoundTrip) {
  Rng rng(2);
  const auto f = random_chain_condition_poset(rng, 6, 4, 3);
  EXPECT_TRUE(f.check_chain_condition());
  std::stringstream ss;
  write_sequence_text(ss, f);
  EXPECT_EQ(read_sequence_text(ss), f);
}

TEST(SequencePoset, ToPosetCoversAreDeletions) {
  const std::vector<Symbol> v{0, 1, 2};
  const auto f = ordered_sequences(v, 3);
  const auto p = f.to_poset();
  for (const auto& [a, b] : p.relations()) EXPECT_EQ(f.member(a).size() + 1, f.member(b).size());
  for (std::uint32_t a = 0; a < f.size(); ++a)
    for (std::uint32_t b = 0; b < f.size(); ++b) EXPECT_EQ(f.less(a, b), p.less(a, b));
}
