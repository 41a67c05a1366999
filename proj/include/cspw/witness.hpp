#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cspw/budget.hpp"
#include "cspw/maltsev.hpp"
#include "cspw/tuple.hpp"

namespace cspw {

/// omega : [n] x D -> D^n or bottom, bound to a Mal'tsev map phi. Coordinates are 0-based;
/// the prefix of omega(i, a) is its first i entries.
class WitnessFunction {
 public:
  /// All entries bottom (the empty relation).
  WitnessFunction(int arity, MaltsevMap phi);
  /// The nullary relation {()}.
  static WitnessFunction unit(MaltsevMap phi);

  int arity() const { return arity_; }
  int domain() const { return phi_.domain(); }
  const MaltsevMap& phi() const { return phi_; }

  const std::optional<Tuple>& at(int i, int a) const { return table_[static_cast<std::size_t>(i) * domain() + a]; }
  void set(int i, int a, std::optional<Tuple> t);
  bool empty() const;

 private:
  int arity_;
  MaltsevMap phi_;
  std::vector<std::optional<Tuple>> table_;
  bool nullary_nonempty_ = false;
};

/// Witness function of an explicit relation; each non-representative class member is spliced
/// onto its representative's prefix with phi.
WitnessFunction build_witness_enumerative(const Relation& rel, const MaltsevMap& phi, bool check_polymorphism = true,
                                          const Budget& budget = {});

/// Some element of the relation whose first |prefix| entries equal `prefix`, if one exists.
std::optional<Tuple> complete_prefix(const WitnessFunction& w, const Tuple& prefix);
bool member(const WitnessFunction& w, const Tuple& x);

/// Witness function of {y : a o y in Phi}.
WitnessFunction pin(const WitnessFunction& w, const Tuple& a);
/// Witness function of the projection onto the first l coordinates.
WitnessFunction project_prefix(const WitnessFunction& w, int l);

struct ProjectedTuple {
  Tuple projected;
  Tuple lift;
};

inline constexpr int kExplicitProjectionCap = 8;

/// The explicit set Pr_[l] Phi in lexicographic order, each with a member of Phi extending it.
std::vector<ProjectedTuple> project_prefix_explicit(const WitnessFunction& w, int l, int cap = kExplicitProjectionCap);

/// Swaps coordinates j and j+1.
WitnessFunction swap_adjacent(const WitnessFunction& w, int j);
/// Witness function of {(x[order[0]], ..., x[order[n-1]]) : x in Phi}.
WitnessFunction permute(const WitnessFunction& w, const std::vector<int>& order);

/// Witness function of the union of pairwise disjoint parts whose union is closed under phi.
/// With `verify`, the parts are enumerated and a closure failure raises NotClosed.
WitnessFunction union_of(const std::vector<WitnessFunction>& parts, bool verify = false, const Budget& budget = {});

/// The represented relation, by testing every point of D^n.
Relation materialize(const WitnessFunction& w, const Budget& budget = {});

/// Structural validity: witnesses sit at their coordinate and every stored tuple is a member.
std::optional<std::string> validity_defect(const WitnessFunction& w);
/// Full validity (witness placement, prefix coverage, membership) against an explicit relation.
std::optional<std::string> validity_defect(const WitnessFunction& w, const Relation& rel);

}  // namespace cspw
