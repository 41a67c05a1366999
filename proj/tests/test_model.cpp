#include <gtest/gtest.h>

#include "cspw/errors.hpp"
#include "cspw/generators.hpp"
#include "cspw/model.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cspw;
using fixtures::q;

TEST(Model, EvalInstance) {
  Instance h = fixtures::hadamard();
  EXPECT_EQ(eval_instance(h, {1, 1}), q(-1, 1, 2));
  h.apply("h", {0, 1});
  EXPECT_EQ(eval_instance(h, {1, 1}), q(1, 1, 2));
  EXPECT_TRUE(eval_instance(fixtures::xor_instance(), {1, 0, 0}).is_zero());
}

TEST(Model, BruteForceZ) {
  EXPECT_EQ(brute_force_Z(fixtures::hadamard()), q(2));
  EXPECT_EQ(brute_force_Z(fixtures::xor_instance()), q(4));
  EXPECT_EQ(brute_force_Z(Instance(2, 1, 2)), q(4));
}

TEST(Model, Marginals) {
  Instance h = fixtures::hadamard();
  EXPECT_EQ(marginal(h, 1, {0}), q(2));
  EXPECT_TRUE(marginal(h, 1, {1}).is_zero());
  EXPECT_EQ(marginal(h, 2, {1, 1}), eval_instance(h, {1, 1}));
  auto row = marginal_row(h, 2, {1});
  EXPECT_EQ(row, (std::vector<CycloValue>{q(1, 1, 2), q(-1, 1, 2)}));
}

TEST(Model, ValueHistogram) {
  ValueHistogram h = value_histogram(fixtures::hadamard());
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h[q(1, 1, 2)], 3u);
  EXPECT_EQ(h[q(-1, 1, 2)], 1u);
  ValueHistogram e = value_histogram(Instance(3, 1, 2));
  EXPECT_EQ(e[q(1)], 9u);
  Instance z(2, 1, 2);
  z.add_function(TableFunction("zero", 1, 2, 1));
  z.apply("zero", {0});
  EXPECT_EQ(value_histogram(z)[q(0)], 4u);
}

TEST(Model, PowerInstance) {
  Instance h = fixtures::hadamard();
  EXPECT_EQ(brute_force_Z(power_instance(h, 1)), brute_force_Z(h));
  Instance h2 = power_instance(h, 2);
  EXPECT_EQ(brute_force_Z(h2), q(4));
  for (const Tuple& x : oracle::all_tuples(2, 2)) EXPECT_EQ(eval_instance(h2, x), eval_instance(h, x).pow(2));
}

TEST(Model, AbsTable) {
  TableFunction a = abs_table(fixtures::hadamard_fn());
  for (const Tuple& x : oracle::all_tuples(2, 2)) EXPECT_EQ(a.at(x), q(1));
  TableFunction f("f", 1, 2, 4);
  f.set({0}, CycloValue::parse("2w^3", 4));
  EXPECT_EQ(abs_table(f).at({0}), q(2));
  f.set({1}, CycloValue::parse("1+w", 4));
  EXPECT_THROW(abs_table(f), Unsupported);
}

TEST(Model, ApplyValidates) {
  Instance inst(2, 1, 2);
  inst.add_function(fixtures::xor_fn());
  EXPECT_THROW(inst.apply("eq", {0, 1}), Error);
  EXPECT_THROW(inst.apply("nope", {0}), Error);
}

// brute_force_Z, eliminate_Z and the oracle sum agree; marginals match the oracle.
TEST(ModelProperty, EvaluatorsAgree) {
  Rng rng(21);
  for (int i = 0; i < 80; ++i) {
    Instance inst = random_pure_instance(rng, uniform(rng, 2, 3), 4, uniform(rng, 1, 5), uniform(rng, 1, 5), i % 2);
    const CycloValue z = oracle::z(inst);
    EXPECT_EQ(brute_force_Z(inst), z);
    EXPECT_EQ(eliminate_Z(inst), z);
    auto tables = marginal_tables(inst);
    EXPECT_EQ(tables[0][0], z);
    const int t = uniform(rng, 1, inst.num_vars());
    for (const Tuple& x : oracle::all_tuples(inst.domain(), t)) {
      CycloValue s = CycloValue::zero(inst.order());
      for (const Tuple& y : oracle::all_tuples(inst.domain(), inst.num_vars() - t)) {
        s = s + oracle::weight(inst, oracle::concat(x, y));
      }
      EXPECT_EQ(marginal(inst, t, x), s);
    }
  }
}

TEST(ModelProperty, HistogramSumsToDn) {
  Rng rng(22);
  for (int i = 0; i < 40; ++i) {
    const int d = uniform(rng, 2, 3), n = uniform(rng, 1, 5);
    Instance inst = random_pure_instance(rng, d, 6, n, uniform(rng, 1, 4), true);
    std::uint64_t total = 0;
    for (auto& [v, c] : value_histogram(inst)) total += c;
    EXPECT_EQ(total, oracle::all_tuples(d, n).size());
  }
}

TEST(Model, BudgetExceeded) {
  Instance big(3, 1, 30);
  Budget b;
  b.assignments = 1000;
  EXPECT_THROW(brute_force_Z(big, b), BudgetExceeded);
}
