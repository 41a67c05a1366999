#include "cspw/selftest.hpp"

#include <exception>
#include <functional>

#include "cspw/errors.hpp"
#include "cspw/generators.hpp"
#include "cspw/pipeline.hpp"
#include "cspw/reductions.hpp"
#include "cspw/split.hpp"
#include "cspw/witness.hpp"

namespace cspw {

namespace {

/// Runs `cases` checks; each returns an empty string on success or a failure description.
SuiteResult suite(const std::string& name, int cases, const std::function<std::string(int)>& check) {
  SuiteResult r{name, 0, 0, ""};
  for (int i = 0; i < cases; ++i) {
    std::string why;
    try {
      why = check(i);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    ++r.cases;
    if (!why.empty()) {
      if (r.failures++ == 0) r.detail = "case " + std::to_string(i) + ": " + why;
    }
  }
  return r;
}

CycloValue random_value(Rng& rng, int order) {
  std::vector<Rational> raw(order);
  for (auto& q : raw) q = Rational(uniform(rng, -3, 3), uniform(rng, 1, 3));
  return canonicalize(raw, order);
}

}  // namespace

std::vector<SuiteResult> run_selftest(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SuiteResult> out;

  out.push_back(suite("cyclo field axioms", 60, [&](int) -> std::string {
    const int orders[] = {1, 2, 3, 4, 5, 6, 8, 12};
    int order = orders[uniform(rng, 0, 7)];
    CycloValue a = random_value(rng, order), b = random_value(rng, order), c = random_value(rng, order);
    if ((a + b) * c != a * c + b * c) return "distributivity fails";
    if (!a.is_zero() && !(a * a.inv()).is_one()) return "inverse fails for " + a.to_string();
    if (CycloValue::parse(a.to_string(), order) != a) return "print/parse roundtrip fails for " + a.to_string();
    if (CycloValue::root_power(order, order).is_one() == false) return "zeta^N != 1";
    return "";
  }));

  out.push_back(suite("witness operations", 40, [&](int) -> std::string {
    const int d = uniform(rng, 2, 3);
    const int n = uniform(rng, 1, 4);
    MaltsevMap phi = d == 2 ? MaltsevMap::xor3() : random_maltsev(rng, 3);
    Relation rel = random_closed_relation(rng, d, n, phi, uniform(rng, 1, 3));
    WitnessFunction w = build_witness_enumerative(rel, phi);
    if (materialize(w) != rel) return "member disagrees with " + format_relation(rel);
    if (auto why = validity_defect(w, rel)) return *why;
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = n - 1 - i;
    std::vector<Tuple> expect;
    for (const Tuple& t : rel.tuples()) {
      Tuple p(n);
      for (int i = 0; i < n; ++i) p[i] = t[order[i]];
      expect.push_back(p);
    }
    if (materialize(permute(w, order)) != Relation(d, n, expect)) return "permute disagrees";
    return "";
  }));

  out.push_back(suite("split on valid partitions", 30, [&](int) -> std::string {
    PartitionCase pc = random_valid_partition(rng);
    WitnessFunction w = build_witness_enumerative(pc.rel, pc.phi);
    SplitResult sr = split(w, pc.label);
    if (sr.queries > split_query_budget(pc.rel.domain(), pc.rel.arity())) return "query budget exceeded";
    for (int k = 0; k < sr.parts; ++k) {
      Relation part = materialize(sr.witnesses[k]);
      for (const Tuple& t : part.tuples()) {
        if (!pc.rel.contains(t) || pc.label(t) != sr.labels[k]) return "part mismatch in " + pc.name;
      }
    }
    std::size_t total = 0;
    for (const auto& wk : sr.witnesses) total += materialize(wk).size();
    if (total != pc.rel.size()) return "parts do not cover the relation in " + pc.name;
    return "";
  }));

  const char* families[] = {"affine2", "hadamard", "affine3", "block"};
  out.push_back(suite("solve against brute force", 24, [&](int i) -> std::string {
    std::optional<TractableCase> tc;
    while (!tc) tc = random_tractable_case(rng, families[i % 4], 6, 8);
    PipelineResult res = solve(tc->inst, tc->phi, Mode::Auto);
    if (!res.Z) return tc->family + ": " + res.violation->kind + " " + res.violation->certificate;
    CycloValue z = brute_force_Z(tc->inst);
    if (*res.Z != z) return tc->family + ": Z " + res.Z->to_string() + " != " + z.to_string();
    return "";
  }));

  out.push_back(suite("vandermonde roundtrip", 20, [&](int) -> std::string {
    Instance inst = random_pure_instance(rng, uniform(rng, 2, 3), 4, uniform(rng, 1, 4), uniform(rng, 1, 4), true);
    auto oracle = [](const Instance& i) { return brute_force_Z(i); };
    if (count_via_vandermonde(inst, oracle) != value_histogram(inst)) return "histograms differ";
    return "";
  }));

  out.push_back(suite("gadget identities", 12, [&](int) -> std::string {
    Graph g;
    g.vertices = uniform(rng, 1, 3);
    g.directed = true;
    const int e = uniform(rng, 0, 3);
    for (int k = 0; k < e; ++k) g.edges.emplace_back(uniform(rng, 0, g.vertices - 1), uniform(rng, 0, g.vertices - 1));
    TableFunction f("F", 2, 2, 4);
    f.set({0, 0}, CycloValue::one(4));
    f.set({0, 1}, CycloValue::one(4));
    f.set({1, 0}, CycloValue::one(4));
    f.set({1, 1}, CycloValue::root_power(4, 1));
    Gadget ga = gadget_A_r(f, 1);
    if (eval_graph_hom(ga.matrix, g) != eliminate_Z(ga.realize(g))) return "A_r identity fails";
    return "";
  }));
  return out;
}

}  // namespace cspw
