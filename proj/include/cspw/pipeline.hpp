#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cspw/budget.hpp"
#include "cspw/maltsev.hpp"
#include "cspw/model.hpp"
#include "cspw/rowspace.hpp"
#include "cspw/witness.hpp"

namespace cspw {

enum class Condition { BlockOrthogonality, TypePartition, Maltsev };

std::string to_string(Condition c);

struct ConditionStatus {
  bool checked = false;
  bool ok = true;
  /// Level t at which the first failure was found.
  int level = 0;
  /// Reproducible witness: a row pair, a type pair, or a closure-violating triple.
  std::string certificate;
};

struct ConditionReport {
  ConditionStatus block_orthogonality;
  ConditionStatus type_partition;
  ConditionStatus maltsev;

  bool ok() const { return block_orthogonality.ok && type_partition.ok && maltsev.ok; }
  const ConditionStatus& status(Condition c) const;
  /// The first failing condition, in the order above.
  std::optional<Condition> first_failure() const;
};

struct CheckOptions {
  Budget budget;
  /// Permutations of t-1 coordinates are enumerated exhaustively when (t-1)! <= this.
  std::uint64_t permutation_cap = 720;
  int permutation_samples = 50;
  std::uint64_t seed = 1;
};

/// One (v, omega) pair of the row representation of F^{[t]}.
struct LevelPair {
  Row v;
  WitnessFunction omega;
};

struct LevelData {
  int t = 0;
  std::vector<LevelPair> pairs;
  int s() const { return static_cast<int>(pairs.size()); }
};

enum class Mode { Verified, Optimistic, Auto };

std::string to_string(Mode m);

struct Violation {
  /// BlockOrthogonality, TypePartition, Maltsev, TooManyParts, or QueryBudget.
  std::string kind;
  int level = 0;
  std::string certificate;
};

struct PipelineResult {
  std::optional<CycloValue> Z;
  /// Ordered by t ascending.
  std::vector<LevelData> levels;
  /// The mode actually run (Auto resolves to one of the other two).
  Mode mode = Mode::Verified;
  ConditionReport report;
  std::optional<Violation> violation;
  std::uint64_t queries = 0;
};

/// Witness function of Boolean(F_I); enumerates D^n.
WitnessFunction boolean_relation_witness(const Instance& inst, const MaltsevMap& phi, bool verify = true,
                                         const Budget& budget = {});

/// Boolean(F^{[t]}) as an explicit relation over t coordinates.
Relation boolean_marginal_relation(const Instance& inst, int t, const Budget& budget = {});
/// Omega_{F^{[t]}} over 2(t-1) coordinates.
Relation omega_relation(const Instance& inst, int t, const Budget& budget = {});

ConditionReport check_instance_conditions(const Instance& inst, const MaltsevMap& phi, const CheckOptions& opts = {});

/// Levels t = n..2 of the induction, returned in ascending t. Stops early (returning the levels so far) when some
/// F^{[t]} is identically zero. Throws TypePartitionViolation, TooManyParts, QueryBudgetExceeded, NotClosed.
std::vector<LevelData> run_levels(const Instance& inst, const MaltsevMap& phi, bool verify = false,
                                  const Budget& budget = {}, std::uint64_t* queries = nullptr);

/// F^{[t]}(a) for a in D^t, from the levels above t.
CycloValue compute_F(const std::vector<LevelData>& levels, const Instance& inst, int t, const Tuple& a);

PipelineResult solve(const Instance& inst, const MaltsevMap& phi, Mode mode = Mode::Verified,
                     const CheckOptions& opts = {});

/// Relations the shared polymorphism must preserve: Boolean(F^{[t]}) for t = 1..n and Omega_{F^{[t]}} for t = 2..n.
std::vector<Relation> condition_relations(const Instance& inst, const Budget& budget = {});
std::optional<MaltsevMap> search_phi_for_instance(const Instance& inst, const Budget& budget = {});

}  // namespace cspw
