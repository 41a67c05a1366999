#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cspw/budget.hpp"
#include "cspw/tuple.hpp"

namespace cspw {

/// An explicit relation over D^n, stored as a sorted duplicate-free tuple list.
class Relation {
 public:
  Relation(int d, int arity);
  Relation(int d, int arity, std::vector<Tuple> tuples);
  static Relation full(int d, int arity);

  int domain() const { return d_; }
  int arity() const { return arity_; }
  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  bool contains(const Tuple& t) const;
  const std::vector<Tuple>& tuples() const { return tuples_; }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.d_ == b.d_ && a.arity_ == b.arity_ && a.tuples_ == b.tuples_;
  }
  friend bool operator!=(const Relation& a, const Relation& b) { return !(a == b); }

 private:
  int d_;
  int arity_;
  std::vector<Tuple> tuples_;
};

std::string format_relation(const Relation& r);

/// True iff phi(a,b,b) = phi(b,b,a) = a for all a, b. `table` is indexed by a*d*d + b*d + c.
bool is_maltsev(int d, const std::vector<int>& table);

/// A ternary operation on D satisfying the Mal'tsev identities.
class MaltsevMap {
 public:
  MaltsevMap(int d, std::vector<int> table);
  static MaltsevMap xor3();
  /// a - b + c mod d.
  static MaltsevMap affine(int d);

  int domain() const { return d_; }
  const std::vector<int>& table() const { return table_; }
  int operator()(int a, int b, int c) const { return table_[(a * d_ + b) * d_ + c]; }
  Tuple apply(const Tuple& u, const Tuple& v, const Tuple& w) const;

  friend bool operator==(const MaltsevMap& a, const MaltsevMap& b) { return a.d_ == b.d_ && a.table_ == b.table_; }

 private:
  int d_;
  std::vector<int> table_;
};

struct PolymorphismViolation {
  Tuple u, v, w, image;
};

/// First triple (in lexicographic order of the tuple indices) mapped outside the relation.
std::optional<PolymorphismViolation> polymorphism_violation(const MaltsevMap& phi, const Relation& rel,
                                                            const Budget& budget = {});
bool is_polymorphism(const MaltsevMap& phi, const Relation& rel, const Budget& budget = {});

/// Least superset of `rel` closed under phi.
Relation closure(const Relation& rel, const MaltsevMap& phi, const Budget& budget = {});

/// Lexicographically least Mal'tsev table that is a polymorphism of every relation.
/// Enumerates all identity-respecting tables when `candidates` is null (requires d <= 3);
/// otherwise searches only the given candidates.
std::optional<MaltsevMap> search_shared_maltsev(const std::vector<Relation>& relations, int d,
                                                const std::vector<MaltsevMap>* candidates = nullptr,
                                                const Budget& budget = {});

}  // namespace cspw
