#include <gtest/gtest.h>

#include "cspw/errors.hpp"
#include "cspw/generators.hpp"
#include "cspw/pipeline.hpp"
#include "cspw/reductions.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cspw;
using fixtures::q;
using fixtures::zeta;

namespace {

GadgetMatrix square(std::vector<std::vector<CycloValue>> e) {
  GadgetMatrix m;
  for (std::size_t i = 0; i < e.size(); ++i) m.labels.push_back({static_cast<int>(i)});
  m.entries = std::move(e);
  return m;
}

Graph triangle() { return Graph{3, false, {{0, 1}, {1, 2}, {2, 0}}}; }

}  // namespace

TEST(Reductions, CandidateValueSet) {
  EXPECT_EQ(candidate_value_set({q(1), q(2)}, 2), (ValueSet{q(1), q(2), q(4)}));
  EXPECT_EQ(candidate_value_set({zeta(4)}, 3), (ValueSet{zeta(4, 3)}));
  EXPECT_EQ(candidate_value_set({q(1)}, 5), (ValueSet{q(1)}));
}

TEST(Reductions, CountViaVandermonde) {
  TableFunction u("u", 1, 2, 1);
  u.set({0}, q(1));
  u.set({1}, q(2));
  Instance inst = fixtures::single(u);
  std::vector<CycloValue> calls;
  auto z = [&](const Instance& i) {
    calls.push_back(brute_force_Z(i));
    return calls.back();
  };
  ValueHistogram h = count_via_vandermonde(inst, z);
  EXPECT_EQ(h, (ValueHistogram{{q(1), 1}, {q(2), 1}}));
  ASSERT_GE(calls.size(), 2u);
  EXPECT_EQ(calls[0], q(3));
  EXPECT_EQ(calls[1], q(5));

  auto bz = [](const Instance& i) { return brute_force_Z(i); };
  EXPECT_EQ(count_via_vandermonde(fixtures::hadamard(), bz), value_histogram(fixtures::hadamard()));
  ValueHistogram x = count_via_vandermonde(fixtures::xor_instance(), bz);
  EXPECT_EQ(x[q(0)], 4u);
  EXPECT_EQ(x[q(1)], 4u);
}

TEST(Reductions, OrderOf) {
  TableFunction f("f", 1, 2, 4);
  f.set({0}, q(1, 1, 4));
  f.set({1}, zeta(4));
  EXPECT_EQ(order_of(f), 4);
  TableFunction g("g", 1, 2, 1);
  g.set({0}, q(3, 2));
  EXPECT_EQ(order_of(g), 1);
  g.set({1}, q(-2));
  EXPECT_EQ(order_of(g), 2);
  f.set({1}, CycloValue::parse("1+w", 4));
  EXPECT_THROW(order_of(f), Unsupported);
}

TEST(Reductions, Purify) {
  auto one = [](const CycloValue& v) {
    TableFunction f("f", 1, 2, v.order());
    f.set({0}, v);
    return std::vector<TableFunction>{f};
  };
  EXPECT_EQ(purify(one(CycloValue::parse("2w", 4)))[0].at({0}), CycloValue::parse("2w", 4));
  EXPECT_EQ(purify(one(CycloValue::parse("3w", 4)))[0].at({0}), CycloValue::parse("2w", 4));
  TableFunction f("f", 1, 2, 4);
  f.set({0}, q(6, 1, 4));
  f.set({1}, zeta(4));
  TableFunction p = purify({f})[0];
  EXPECT_EQ(p.at({0}), q(6, 1, 4));
  EXPECT_EQ(p.at({1}), zeta(4));
  TableFunction r("r", 1, 2, 1);
  r.set({0}, q(5, 7));
  EXPECT_EQ(purify({r})[0].at({0}), q(2, 3));
  f.set({1}, CycloValue::parse("1+w", 4));
  EXPECT_THROW(purify({f}), Unsupported);
}

// Support and the dependence pattern of rows survive purification.
TEST(ReductionsProperty, PurifyPreservesStructure) {
  Rng rng(71);
  for (int i = 0; i < 60; ++i) {
    Instance inst = random_pure_instance(rng, uniform(rng, 2, 3), 4, 2, 1, true);
    TableFunction f = inst.library()[0];
    if (f.arity() < 2) continue;
    TableFunction p = purify({f})[0];
    EXPECT_EQ(p.entries().size(), f.entries().size());
    for (auto& [code, v] : f.entries()) EXPECT_TRUE(p.find(code));
    RowMatrix a = rows_of(f), b = rows_of(p);
    for (std::size_t x = 0; x < a.rows.size(); ++x) {
      for (std::size_t y = 0; y < a.rows.size(); ++y) {
        if (is_zero_row(a.rows[x]) || is_zero_row(a.rows[y])) continue;
        EXPECT_EQ(linearly_dependent(a.rows[x], a.rows[y]), linearly_dependent(b.rows[x], b.rows[y]));
      }
    }
  }
}

TEST(Reductions, PowerSum) {
  Row x = {q(1, 1, 2), q(1, 1, 2)}, y = {q(1, 1, 2), q(-1, 1, 2)};
  for (int s = 0; s <= 2; ++s)
    for (int r = 1; r <= 3; ++r) EXPECT_TRUE(power_sum(x, y, 2, s, r).is_zero());
  EXPECT_FALSE(power_sum(x, x, 2, 0, 1).is_zero());
}

TEST(Reductions, GadgetAr) {
  Gadget z = gadget_A_r(fixtures::zeta_rows_fn(), 1);
  EXPECT_EQ(z.K, 4);
  EXPECT_EQ(z.matrix.at(0, 0), q(2, 1, 4));
  EXPECT_EQ(z.matrix.at(0, 1), CycloValue::parse("1-w", 4));
  EXPECT_EQ(z.matrix.at(1, 0), CycloValue::parse("1+w", 4));
  EXPECT_EQ(z.matrix.at(1, 1), q(2, 1, 4));
  EXPECT_TRUE(abs_block_rank1_violation(z.matrix));

  Gadget h = gadget_A_r(fixtures::hadamard_fn(), 1);
  EXPECT_EQ(h.K, 2);
  EXPECT_EQ(h.matrix.at(0, 0), q(2));
  EXPECT_TRUE(h.matrix.at(0, 1).is_zero());
  EXPECT_FALSE(abs_block_rank1_violation(h.matrix));

  Graph arc{2, true, {{0, 1}}};
  EXPECT_EQ(eval_graph_hom(z.matrix, arc), brute_force_Z(z.realize(arc)));
}

TEST(Reductions, GadgetTypePartition) {
  Gadget g = gadget_A_typepartition(fixtures::typepartition_fn(), 1);
  EXPECT_EQ(g.K, 2);
  EXPECT_EQ(g.matrix.at(0, 0), q(8));
  EXPECT_EQ(g.matrix.at(1, 1), q(4));
  EXPECT_EQ(g.matrix.at(0, 1), q(4));
  EXPECT_EQ(g.matrix.at(1, 0), q(4));
  EXPECT_TRUE(abs_block_rank1_violation(g.matrix));
  EXPECT_EQ(eval_graph_hom(g.matrix, triangle()), eliminate_Z(g.realize(triangle())));
  EXPECT_THROW(gadget_A_typepartition(fixtures::typepartition_fn(), 2), Error);
}

// A function whose prefixes of length 1 share one type gives a rank-1 2x2 block.
TEST(Reductions, GadgetTypePartitionRespecting) {
  TableFunction f("f", 3, 2, 2);
  for (const Tuple& x : oracle::all_tuples(2, 2)) {
    const bool eq = x[0] == x[1];
    f.set({x[0], x[1], 0}, q(1, 1, 2));
    f.set({x[0], x[1], 1}, q(eq ? 1 : -1, 1, 2));
  }
  Gadget g = gadget_A_typepartition(f, 1);
  EXPECT_EQ(g.matrix.at(0, 0) * g.matrix.at(1, 1), g.matrix.at(0, 1) * g.matrix.at(1, 0));
}

TEST(Reductions, GadgetH) {
  TableFunction h = gadget_H(fixtures::hadamard_fn());
  EXPECT_EQ(h.arity(), 2);
  EXPECT_EQ(h.at({0, 0}), q(2));
  EXPECT_TRUE(h.at({0, 1}).is_zero());
  EXPECT_EQ(h.at({1, 1}), q(2));

  TableFunction same("s", 2, 2, 1);
  for (const Tuple& x : oracle::all_tuples(2, 2)) same.set(x, q(1 + x[0]));
  TableFunction hs = gadget_H(same);
  EXPECT_EQ(hs.entries().size(), 4u);

  // Two H constraints expanded into F copies keep Z.
  Instance inst(2, 2, 3);
  inst.add_function(fixtures::hadamard_fn());
  inst.add_function(h);
  inst.apply(h.name(), {0, 1});
  inst.apply(h.name(), {1, 2});
  Instance ex = expand_H_constraints(inst, h.name(), "h", 2);
  EXPECT_EQ(brute_force_Z(ex), brute_force_Z(inst));
}

TEST(Reductions, GraphHom) {
  GadgetMatrix ones = square({{q(1), q(1)}, {q(1), q(1)}});
  EXPECT_EQ(eval_graph_hom(ones, triangle()), q(8));
  EXPECT_EQ(eval_graph_hom(ones, Graph{0, false, {}}), q(1));
}

TEST(Reductions, GadgetB) {
  GadgetMatrix a = square({{q(1), q(1)}, {q(1), q(2)}});
  GadgetB b = gadget_B(a);
  EXPECT_EQ(b.matrix.at(0, 0), q(2));
  EXPECT_EQ(b.matrix.at(0, 1), q(3));
  EXPECT_EQ(b.matrix.at(1, 0), q(3));
  EXPECT_EQ(b.matrix.at(1, 1), q(5));
  EXPECT_TRUE(abs_block_rank1_violation(b.matrix));
  EXPECT_EQ(eval_graph_hom(b.matrix, triangle()), eval_graph_hom(b.abs, b.transform(triangle())));
  EXPECT_THROW(gadget_B(square({{CycloValue::parse("1+w", 4)}})), Unsupported);
}

// Whenever |A| is not block-rank-1, neither is B.
TEST(ReductionsProperty, BInheritsRankFailure) {
  Rng rng(72);
  for (int i = 0; i < 60; ++i) {
    const int k = uniform(rng, 2, 3);
    std::vector<std::vector<CycloValue>> e(k);
    for (auto& row : e)
      for (int j = 0; j < k; ++j)
        row.push_back(uniform(rng, 0, 3) ? CycloValue::root_power(4, uniform(rng, 0, 3), uniform(rng, 1, 3))
                                         : CycloValue::zero(4));
    GadgetMatrix a = square(e);
    GadgetB b = gadget_B(a);
    if (abs_block_rank1_violation(b.abs)) EXPECT_TRUE(abs_block_rank1_violation(b.matrix));
    for (const Graph& g : oracle::small_graphs(rng, 4, false)) {
      EXPECT_EQ(oracle::graph_hom(b.matrix, g), oracle::graph_hom(b.abs, b.transform(g)));
    }
  }
}

// Boolean(H) equals the omega relation for pure block-orthogonal functions.
TEST(ReductionsProperty, HSupportIsOmega) {
  std::vector<TableFunction> corpus = {fixtures::hadamard_fn(), fixtures::typepartition_fn()};
  TableFunction four("c", 2, 4, 4);
  for (const Tuple& x : oracle::all_tuples(4, 2)) four.set(x, zeta(4, x[0] * x[1]));
  corpus.push_back(four);
  TableFunction dup("d", 2, 3, 2);
  for (const Tuple& x : oracle::all_tuples(3, 2)) {
    if (x[1] < 2) dup.set(x, q(x[0] == 2 && x[1] == 1 ? -1 : 1, 1, 2));
  }
  corpus.push_back(dup);
  for (const TableFunction& f : corpus) {
    ASSERT_EQ(classify_function(rows_of(f)).kind, Classification::BlockOrthogonal) << f.name();
    TableFunction h = gadget_H(f);
    std::vector<Tuple> support;
    for (auto& [code, v] : h.entries()) support.push_back(decode_tuple(code, h.domain(), h.arity()));
    EXPECT_EQ(Relation(f.domain(), h.arity(), support), omega_relation(fixtures::single(f), f.arity())) << f.name();
  }
}
