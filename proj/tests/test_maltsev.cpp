#include <gtest/gtest.h>

#include "cspw/errors.hpp"
#include "cspw/generators.hpp"
#include "cspw/maltsev.hpp"
#include "oracles.hpp"

using namespace cspw;

namespace {

Relation rel(int d, std::vector<Tuple> ts) {
  const int n = static_cast<int>(ts.front().size());
  return Relation(d, n, std::move(ts));
}

Relation xor_rel() { return rel(2, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}}); }

}  // namespace

TEST(Maltsev, IsMaltsev) {
  EXPECT_TRUE(is_maltsev(2, MaltsevMap::xor3().table()));
  std::vector<int> maj(8), first(8);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) {
        maj[(a * 2 + b) * 2 + c] = (a + b + c) >= 2;
        first[(a * 2 + b) * 2 + c] = a;
      }
  EXPECT_FALSE(is_maltsev(2, maj));
  EXPECT_FALSE(is_maltsev(2, first));
  EXPECT_THROW(MaltsevMap(2, maj), Error);
}

TEST(Maltsev, Polymorphism) {
  const MaltsevMap x = MaltsevMap::xor3();
  EXPECT_TRUE(is_polymorphism(x, rel(2, {{0, 0}, {1, 1}})));
  EXPECT_TRUE(is_polymorphism(x, xor_rel()));
  Relation bad = rel(2, {{0, 0}, {1, 1}, {0, 1}});
  auto v = polymorphism_violation(x, bad);
  ASSERT_TRUE(v);
  EXPECT_FALSE(bad.contains(v->image));
  EXPECT_EQ(v->image, x.apply(v->u, v->v, v->w));
}

TEST(Maltsev, Closure) {
  const MaltsevMap x = MaltsevMap::xor3();
  EXPECT_EQ(closure(rel(2, {{0, 0}, {1, 1}, {0, 1}}), x), Relation::full(2, 2));
  EXPECT_EQ(closure(xor_rel(), x), xor_rel());
  EXPECT_EQ(closure(rel(3, {{2, 1}}), MaltsevMap::affine(3)), rel(3, {{2, 1}}));
}

TEST(Maltsev, Search) {
  auto found = search_shared_maltsev({rel(2, {{0, 0}, {1, 1}}), xor_rel()}, 2);
  ASSERT_TRUE(found);
  EXPECT_EQ(*found, MaltsevMap::xor3());
  EXPECT_FALSE(search_shared_maltsev({rel(2, {{0, 1}, {1, 0}, {1, 1}})}, 2));
  auto full = search_shared_maltsev({Relation::full(3, 3)}, 3);
  ASSERT_TRUE(full);
  // The least table: every free entry is 0.
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) {
        if (b == c)
          EXPECT_EQ((*full)(a, b, c), a);
        else if (a == b)
          EXPECT_EQ((*full)(a, b, c), c);
        else
          EXPECT_EQ((*full)(a, b, c), 0);
      }
}

TEST(Maltsev, SearchOverCandidates) {
  std::vector<MaltsevMap> cands = {MaltsevMap::xor3()};
  EXPECT_TRUE(search_shared_maltsev({xor_rel()}, 2, &cands));
  EXPECT_FALSE(search_shared_maltsev({rel(2, {{0, 1}, {1, 0}, {1, 1}})}, 2, &cands));
}

// closure agrees with fixpoint iteration; search results preserve every relation.
TEST(MaltsevProperty, ClosureAndSearch) {
  Rng rng(31);
  for (int i = 0; i < 60; ++i) {
    const int d = uniform(rng, 2, 3), n = uniform(rng, 1, 3);
    MaltsevMap phi = random_maltsev(rng, d);
    EXPECT_TRUE(is_maltsev(d, phi.table()));
    std::vector<Tuple> seeds;
    for (int k = 0; k < uniform(rng, 1, 3); ++k) {
      Tuple t(n);
      for (int& x : t) x = uniform(rng, 0, d - 1);
      seeds.push_back(t);
    }
    Relation c = closure(Relation(d, n, seeds), phi);
    EXPECT_EQ(oracle::TupleSet(c.tuples().begin(), c.tuples().end()),
              oracle::closure({seeds.begin(), seeds.end()}, phi));
    auto found = search_shared_maltsev({c}, d);
    ASSERT_TRUE(found);
    EXPECT_TRUE(oracle::preserves(*found, {c.tuples().begin(), c.tuples().end()}));
  }
}
