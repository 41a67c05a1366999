#include <gtest/gtest.h>

#include "cspw/errors.hpp"
#include "cspw/generators.hpp"
#include "cspw/split.hpp"
#include "oracles.hpp"

using namespace cspw;

namespace {

const MaltsevMap kXor = MaltsevMap::xor3();
oracle::TupleSet as_set(const Relation& r) { return {r.tuples().begin(), r.tuples().end()}; }

}  // namespace

TEST(Split, QueryBudget) {
  EXPECT_EQ(split_query_budget(2, 3), 7u * 4u * 3u);
  EXPECT_EQ(split_query_budget(3, 1), 4u * 5u);
}

TEST(Split, SingletonsOfOneCoordinate) {
  WitnessFunction w = build_witness_enumerative(Relation::full(2, 1), kXor);
  SplitResult r = split(w, [](const Tuple& x) { return x[0] == 0 ? 7 : 9; });
  ASSERT_EQ(r.parts, 2);
  for (int k = 0; k < 2; ++k) {
    EXPECT_EQ(materialize(r.witnesses[k]), Relation(2, 1, {{r.labels[k] == 7 ? 0 : 1}}));
  }
}

TEST(Split, ConstantLabeler) {
  Relation x(2, 3, {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}, {1, 1, 0}});
  SplitResult r = split(build_witness_enumerative(x, kXor), [](const Tuple&) { return 5; });
  ASSERT_EQ(r.parts, 1);
  EXPECT_EQ(materialize(r.witnesses[0]), x);
  EXPECT_EQ(r.root_type, 1u);
}

TEST(Split, ThreePartSquareViolates) {
  WitnessFunction w = build_witness_enumerative(Relation::full(2, 2), kXor);
  auto label = [](const Tuple& x) -> std::int64_t { return x[0] == x[1] ? 1 : (x[0] == 0 ? 2 : 3); };
  // Brute-force types: type(0) = {1,2}, type(1) = {1,3}.
  oracle::TupleSet s = as_set(Relation::full(2, 2));
  EXPECT_EQ(oracle::type_of(s, label, {0}), (std::set<std::int64_t>{1, 2}));
  EXPECT_EQ(oracle::type_of(s, label, {1}), (std::set<std::int64_t>{1, 3}));
  EXPECT_THROW(split(w, label), TypePartitionViolation);
}

TEST(Split, TooManyParts) {
  WitnessFunction w = build_witness_enumerative(Relation::full(2, 2), kXor);
  // Four singleton parts of {0,1}^2 form a type partition but exceed d = 2.
  EXPECT_THROW(split(w, [](const Tuple& x) { return x[0] * 2 + x[1]; }), TooManyParts);
}

TEST(Split, EmptyRelationRejected) {
  EXPECT_THROW(split(WitnessFunction(2, kXor), [](const Tuple&) { return 0; }), Error);
}

// Random valid partitions: exact parts, budget, and ComputeType of the empty prefix.
TEST(SplitProperty, ValidPartitions) {
  Rng rng(51);
  for (int i = 0; i < 60; ++i) {
    PartitionCase pc = random_valid_partition(rng);
    SplitResult r = split(build_witness_enumerative(pc.rel, pc.phi), pc.label);
    EXPECT_LE(r.queries, split_query_budget(pc.rel.domain(), pc.rel.arity())) << pc.name;
    std::map<std::int64_t, oracle::TupleSet> expect;
    for (const Tuple& t : pc.rel.tuples()) expect[pc.label(t)].insert(t);
    ASSERT_EQ(static_cast<std::size_t>(r.parts), expect.size()) << pc.name;
    for (int k = 0; k < r.parts; ++k) {
      EXPECT_EQ(as_set(materialize(r.witnesses[k])), expect[r.labels[k]]) << pc.name;
    }
    EXPECT_EQ(r.root_type, (1u << r.parts) - 1) << pc.name;
  }
}

TEST(SplitProperty, ViolatingPartitions) {
  for (const auto& pc : violating_partitions()) {
    EXPECT_THROW(split(build_witness_enumerative(pc.rel, pc.phi), pc.label), TypePartitionViolation) << pc.name;
  }
}
