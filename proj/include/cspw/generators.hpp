#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cspw/maltsev.hpp"
#include "cspw/model.hpp"

namespace cspw {

using Rng = std::mt19937_64;

/// Uniform integer in [lo, hi].
int uniform(Rng& rng, int lo, int hi);

/// A uniformly random table satisfying phi(a,b,b) = phi(b,b,a) = a.
MaltsevMap random_maltsev(Rng& rng, int d);
/// Mal'tsev map on D that acts as a xor b xor c on {0,1}.
MaltsevMap maltsev_extending_xor(int d);

/// closure(seeds, phi) for `seeds` random tuples.
Relation random_closed_relation(Rng& rng, int d, int n, const MaltsevMap& phi, int seeds, const Budget& budget = {});

/// A system sum_j rows[i][j] x_j = rhs[i] over Z_p.
struct LinearSystem {
  int p = 2;
  int n = 0;
  std::vector<std::vector<int>> rows;
  std::vector<int> rhs;
};

/// m random equations with 1..max_arity variables each, all satisfied by a random point.
LinearSystem random_consistent_system(Rng& rng, int p, int n, int m, int max_arity);
/// One indicator function per equation, with value `weight` on solutions.
Instance affine_instance(const LinearSystem& sys, int weight = 1);

struct TractableCase {
  std::string family;
  Instance inst;
  MaltsevMap phi;
};

/// Families: "affine2" (0/1 equations over Z_2, xor3), "hadamard" ((-1)^{xy} with +-1 and zeta_4 unaries, xor3),
/// "block" (nonnegative block-diagonal binary weights, phi from search), "affine3" (equations over Z_3, a-b+c).
std::optional<TractableCase> random_tractable_case(Rng& rng, const std::string& family, int max_vars = 8,
                                                   int max_constraints = 12);

struct PartitionCase {
  std::string name;
  Relation rel;
  MaltsevMap phi;
  std::function<std::int64_t(const Tuple&)> label;
};

/// A closed relation with a labeling whose parts are closed and form a type partition under every ordering.
PartitionCase random_valid_partition(Rng& rng);
/// Partitions whose type maps overlap without being equal.
std::vector<PartitionCase> violating_partitions();

/// Random instance with nonzero pure values; some entries zero when `zeros` is set.
Instance random_pure_instance(Rng& rng, int d, int order, int n, int m, bool zeros);

}  // namespace cspw
