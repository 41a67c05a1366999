#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cspw/budget.hpp"
#include "cspw/cyclo.hpp"
#include "cspw/tuple.hpp"

namespace cspw {

/// A function D^r -> Q(zeta_N) stored sparsely; absent entries are 0.
class TableFunction {
 public:
  TableFunction(std::string name, int arity, int d, int order);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  int domain() const { return d_; }
  int order() const { return order_; }

  CycloValue at(const Tuple& x) const;
  CycloValue at_code(std::uint64_t code) const;
  /// nullptr when the entry is zero.
  const CycloValue* find(std::uint64_t code) const;
  void set(const Tuple& x, const CycloValue& v);

  /// Nonzero entries keyed by lexicographic tuple index.
  const std::map<std::uint64_t, CycloValue>& entries() const { return entries_; }
  /// Distinct nonzero values.
  std::vector<CycloValue> image() const;

  friend bool operator==(const TableFunction& a, const TableFunction& b);

 private:
  std::string name_;
  int arity_;
  int d_;
  int order_;
  std::map<std::uint64_t, CycloValue> entries_;
};

struct Constraint {
  std::size_t fn;
  std::vector<int> vars;
};

/// A #CSP input: variables 0..n-1 over D = {0..d-1}, a function library, and applied constraints.
class Instance {
 public:
  Instance(int d, int order, int n);

  int domain() const { return d_; }
  int order() const { return order_; }
  int num_vars() const { return n_; }

  std::size_t add_function(TableFunction f);
  void apply(std::size_t fn, std::vector<int> vars);
  void apply(const std::string& name, std::vector<int> vars);

  const std::vector<TableFunction>& library() const { return library_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  std::optional<std::size_t> find_function(const std::string& name) const;
  const TableFunction& function(const std::string& name) const;

 private:
  int d_;
  int order_;
  int n_;
  std::vector<TableFunction> library_;
  std::vector<Constraint> constraints_;
};

using ValueHistogram = std::map<CycloValue, std::uint64_t, CycloLess>;

CycloValue eval_instance(const Instance& inst, const Tuple& x);
CycloValue brute_force_Z(const Instance& inst, const Budget& budget = {});
/// Z by exact variable elimination (greedy min-scope order); intermediate tables are capped by the budget.
CycloValue eliminate_Z(const Instance& inst, const Budget& budget = {});
/// F^{[t]}(x) for x in D^t.
CycloValue marginal(const Instance& inst, int t, const Tuple& x, const Budget& budget = {});
/// The d-vector F^{[t]}(x, *) for x in D^{t-1}.
std::vector<CycloValue> marginal_row(const Instance& inst, int t, const Tuple& x, const Budget& budget = {});
/// tables[t][code] = F^{[t]}(decode(code)) for t = 0..n; tables[0] holds Z.
std::vector<std::vector<CycloValue>> marginal_tables(const Instance& inst, const Budget& budget = {});
ValueHistogram value_histogram(const Instance& inst, const Budget& budget = {});
/// Each constraint repeated l times, so F_{I_l} = (F_I)^l.
Instance power_instance(const Instance& inst, int l);
/// |F|; throws Unsupported on values that are not magnitude * root of unity.
TableFunction abs_table(const TableFunction& f);

}  // namespace cspw
