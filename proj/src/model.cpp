#include "cspw/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "cspw/errors.hpp"

namespace cspw {

TableFunction::TableFunction(std::string name, int arity, int d, int order)
    : name_(std::move(name)), arity_(arity), d_(d), order_(order) {
  if (arity < 1) throw InvalidArgument("function arity must be positive");
  if (d < 1) throw InvalidArgument("domain size must be positive");
  if (arity > 64 || (d > 1 && arity * std::log2(static_cast<double>(d)) > 62)) {
    throw InvalidArgument("function table too large to index");
  }
}

CycloValue TableFunction::at_code(std::uint64_t code) const {
  auto it = entries_.find(code);
  return it == entries_.end() ? CycloValue(order_) : it->second;
}

CycloValue TableFunction::at(const Tuple& x) const { return at_code(encode_tuple(x, d_)); }

const CycloValue* TableFunction::find(std::uint64_t code) const {
  auto it = entries_.find(code);
  return it == entries_.end() ? nullptr : &it->second;
}

void TableFunction::set(const Tuple& x, const CycloValue& v) {
  if (static_cast<int>(x.size()) != arity_) throw InvalidArgument("tuple length does not match arity of " + name_);
  for (int a : x) {
    if (a < 0 || a >= d_) throw InvalidArgument("domain value out of range in " + name_);
  }
  std::uint64_t code = encode_tuple(x, d_);
  if (v.is_zero()) {
    entries_.erase(code);
  } else {
    entries_.insert_or_assign(code, v.order() == order_ ? v : v.promoted(order_));
  }
}

std::vector<CycloValue> TableFunction::image() const {
  std::set<CycloValue, CycloLess> seen;
  for (const auto& [code, v] : entries_) seen.insert(v);
  return {seen.begin(), seen.end()};
}

bool operator==(const TableFunction& a, const TableFunction& b) {
  return a.arity_ == b.arity_ && a.d_ == b.d_ && a.entries_ == b.entries_;
}

Instance::Instance(int d, int order, int n) : d_(d), order_(order), n_(n) {
  if (d < 1) throw InvalidArgument("domain size must be positive");
  if (n < 0) throw InvalidArgument("variable count must be non-negative");
  if (order < 1) throw InvalidArgument("root order must be positive");
}

std::size_t Instance::add_function(TableFunction f) {
  if (f.domain() != d_) throw InvalidArgument("function " + f.name() + " has the wrong domain size");
  if (find_function(f.name())) throw InvalidArgument("duplicate function name " + f.name());
  library_.push_back(std::move(f));
  return library_.size() - 1;
}

void Instance::apply(std::size_t fn, std::vector<int> vars) {
  if (fn >= library_.size()) throw InvalidArgument("unknown function index");
  const TableFunction& f = library_[fn];
  if (static_cast<int>(vars.size()) != f.arity()) {
    throw InvalidArgument("function " + f.name() + " has arity " + std::to_string(f.arity()) + " but " +
                          std::to_string(vars.size()) + " variables were given");
  }
  for (int v : vars) {
    if (v < 0 || v >= n_) throw InvalidArgument("variable index " + std::to_string(v) + " out of range");
  }
  constraints_.push_back({fn, std::move(vars)});
}

void Instance::apply(const std::string& name, std::vector<int> vars) {
  auto fn = find_function(name);
  if (!fn) throw InvalidArgument("unknown function " + name);
  apply(*fn, std::move(vars));
}

std::optional<std::size_t> Instance::find_function(const std::string& name) const {
  for (std::size_t i = 0; i < library_.size(); ++i) {
    if (library_[i].name() == name) return i;
  }
  return std::nullopt;
}

const TableFunction& Instance::function(const std::string& name) const {
  auto fn = find_function(name);
  if (!fn) throw InvalidArgument("unknown function " + name);
  return library_[*fn];
}

namespace {

/// Evaluates F_I quickly by caching dense lookup tables for small functions.
class Evaluator {
 public:
  explicit Evaluator(const Instance& inst) : inst_(inst), one_(CycloValue::one(inst.order())) {
    dense_.resize(inst.library().size());
    for (std::size_t i = 0; i < inst.library().size(); ++i) {
      const TableFunction& f = inst.library()[i];
      double size = std::pow(static_cast<double>(f.domain()), f.arity());
      if (size <= 65536) {
        auto& table = dense_[i];
        table.assign(static_cast<std::size_t>(size), nullptr);
        for (const auto& [code, v] : f.entries()) table[code] = &v;
      }
    }
  }

  CycloValue operator()(const Tuple& x) const {
    CycloValue acc = one_;
    const int d = inst_.domain();
    for (const Constraint& c : inst_.constraints()) {
      std::uint64_t code = 0;
      for (int v : c.vars) code = code * static_cast<std::uint64_t>(d) + static_cast<std::uint64_t>(x[v]);
      const CycloValue* val = dense_[c.fn].empty() ? inst_.library()[c.fn].find(code) : dense_[c.fn][code];
      if (val == nullptr) return CycloValue(inst_.order());
      acc *= *val;
    }
    return acc;
  }

 private:
  const Instance& inst_;
  CycloValue one_;
  std::vector<std::vector<const CycloValue*>> dense_;
};

}  // namespace

CycloValue eval_instance(const Instance& inst, const Tuple& x) {
  if (static_cast<int>(x.size()) != inst.num_vars()) throw InvalidArgument("assignment length does not match variable count");
  return Evaluator(inst)(x);
}

CycloValue brute_force_Z(const Instance& inst, const Budget& budget) {
  checked_power(inst.domain(), inst.num_vars(), budget.assignments);
  Evaluator eval(inst);
  CycloValue z(inst.order());
  Tuple x(inst.num_vars(), 0);
  do {
    CycloValue v = eval(x);
    if (!v.is_zero()) z += v;
  } while (next_tuple(x, inst.domain()));
  return z;
}

CycloValue marginal(const Instance& inst, int t, const Tuple& x, const Budget& budget) {
  int n = inst.num_vars();
  if (t < 0 || t > n || static_cast<int>(x.size()) != t) throw InvalidArgument("marginal: bad prefix length");
  checked_power(inst.domain(), n - t, budget.assignments);
  Evaluator eval(inst);
  Tuple full(n, 0);
  std::copy(x.begin(), x.end(), full.begin());
  Tuple rest(n - t, 0);
  CycloValue sum(inst.order());
  do {
    std::copy(rest.begin(), rest.end(), full.begin() + t);
    CycloValue v = eval(full);
    if (!v.is_zero()) sum += v;
  } while (next_tuple(rest, inst.domain()));
  return sum;
}

std::vector<CycloValue> marginal_row(const Instance& inst, int t, const Tuple& x, const Budget& budget) {
  if (t < 1 || static_cast<int>(x.size()) != t - 1) throw InvalidArgument("marginal_row: bad prefix length");
  std::vector<CycloValue> row;
  Tuple y = x;
  y.push_back(0);
  for (int a = 0; a < inst.domain(); ++a) {
    y.back() = a;
    row.push_back(marginal(inst, t, y, budget));
  }
  return row;
}

std::vector<std::vector<CycloValue>> marginal_tables(const Instance& inst, const Budget& budget) {
  int n = inst.num_vars();
  int d = inst.domain();
  std::uint64_t total = checked_power(d, n, budget.assignments);
  std::vector<std::vector<CycloValue>> tables(n + 1);
  Evaluator eval(inst);
  auto& top = tables[n];
  top.reserve(total);
  Tuple x(n, 0);
  do {
    top.push_back(eval(x));
  } while (next_tuple(x, d));
  for (int t = n - 1; t >= 0; --t) {
    const auto& next = tables[t + 1];
    auto& cur = tables[t];
    cur.assign(next.size() / d, CycloValue(inst.order()));
    for (std::size_t i = 0; i < next.size(); ++i) {
      if (!next[i].is_zero()) cur[i / d] += next[i];
    }
  }
  return tables;
}

ValueHistogram value_histogram(const Instance& inst, const Budget& budget) {
  checked_power(inst.domain(), inst.num_vars(), budget.assignments);
  Evaluator eval(inst);
  ValueHistogram hist;
  Tuple x(inst.num_vars(), 0);
  do {
    ++hist[eval(x)];
  } while (next_tuple(x, inst.domain()));
  return hist;
}

Instance power_instance(const Instance& inst, int l) {
  if (l < 1) throw InvalidArgument("power_instance: l must be positive");
  Instance out(inst.domain(), inst.order(), inst.num_vars());
  for (const auto& f : inst.library()) out.add_function(f);
  for (const auto& c : inst.constraints()) {
    for (int k = 0; k < l; ++k) out.apply(c.fn, c.vars);
  }
  return out;
}

TableFunction abs_table(const TableFunction& f) {
  TableFunction out(f.name(), f.arity(), f.domain(), f.order());
  for (const auto& [code, v] : f.entries()) {
    auto pf = v.pure_form();
    if (!pf) throw Unsupported("value " + v.to_string() + " of " + f.name() + " has no rational magnitude");
    out.set(decode_tuple(code, f.domain(), f.arity()), CycloValue(pf->magnitude, f.order()));
  }
  return out;
}

}  // namespace cspw

namespace cspw {

namespace {

struct Factor {
  std::vector<int> vars;  // sorted, distinct
  std::vector<CycloValue> table;
};

std::size_t position(const std::vector<int>& vars, int v) {
  return static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
}

}  // namespace

CycloValue eliminate_Z(const Instance& inst, const Budget& budget) {
  const int d = inst.domain();
  const int order = inst.order();
  std::vector<Factor> factors;
  for (const Constraint& c : inst.constraints()) {
    const TableFunction& f = inst.library()[c.fn];
    Factor fac;
    fac.vars = c.vars;
    std::sort(fac.vars.begin(), fac.vars.end());
    fac.vars.erase(std::unique(fac.vars.begin(), fac.vars.end()), fac.vars.end());
    const int k = static_cast<int>(fac.vars.size());
    std::uint64_t size = checked_power(d, k, budget.assignments);
    fac.table.assign(size, CycloValue::zero(order));
    Tuple local(k, 0), args(c.vars.size());
    for (std::uint64_t code = 0; code < size; ++code) {
      for (std::size_t j = 0; j < c.vars.size(); ++j) args[j] = local[position(fac.vars, c.vars[j])];
      fac.table[code] = f.at(args).promoted(order);
      next_tuple(local, d);
    }
    factors.push_back(std::move(fac));
  }
  CycloValue z = CycloValue::one(order);
  std::vector<bool> used(inst.num_vars(), false);
  for (const Factor& f : factors) {
    for (int v : f.vars) used[v] = true;
  }
  for (int v = 0; v < inst.num_vars(); ++v) {
    if (!used[v]) z *= CycloValue(Rational(d), order);
  }
  std::set<int> remaining;
  for (int v = 0; v < inst.num_vars(); ++v) {
    if (used[v]) remaining.insert(v);
  }
  while (!remaining.empty()) {
    // Pick the variable whose elimination creates the smallest scope.
    int best = -1;
    std::size_t best_scope = 0;
    for (int v : remaining) {
      std::set<int> scope;
      for (const Factor& f : factors) {
        if (std::binary_search(f.vars.begin(), f.vars.end(), v)) scope.insert(f.vars.begin(), f.vars.end());
      }
      if (best < 0 || scope.size() < best_scope) {
        best = v;
        best_scope = scope.size();
      }
    }
    remaining.erase(best);
    std::vector<Factor> touching, rest;
    for (Factor& f : factors) {
      (std::binary_search(f.vars.begin(), f.vars.end(), best) ? touching : rest).push_back(std::move(f));
    }
    std::set<int> scope_set;
    for (const Factor& f : touching) scope_set.insert(f.vars.begin(), f.vars.end());
    std::vector<int> scope(scope_set.begin(), scope_set.end());
    const int k = static_cast<int>(scope.size());
    checked_power(d, k, budget.assignments);
    const std::size_t bpos = position(scope, best);
    Factor out;
    for (int v : scope) {
      if (v != best) out.vars.push_back(v);
    }
    out.table.assign(checked_power(d, k - 1, budget.assignments), CycloValue::zero(order));
    // Column maps from the joint scope into each touching factor.
    std::vector<std::vector<std::size_t>> maps;
    for (const Factor& f : touching) {
      std::vector<std::size_t> m;
      for (int v : f.vars) m.push_back(position(scope, v));
      maps.push_back(std::move(m));
    }
    Tuple x(k, 0);
    do {
      CycloValue prod = CycloValue::one(order);
      for (std::size_t j = 0; j < touching.size() && !prod.is_zero(); ++j) {
        std::uint64_t code = 0;
        for (std::size_t p : maps[j]) code = code * d + x[p];
        const CycloValue& val = touching[j].table[code];
        if (val.is_zero()) {
          prod = CycloValue::zero(order);
        } else if (!val.is_one()) {
          prod *= val;
        }
      }
      if (prod.is_zero()) continue;
      std::uint64_t code = 0;
      for (int p = 0; p < k; ++p) {
        if (static_cast<std::size_t>(p) != bpos) code = code * d + x[p];
      }
      out.table[code] += prod;
    } while (next_tuple(x, d));
    rest.push_back(std::move(out));
    factors = std::move(rest);
  }
  for (const Factor& f : factors) z *= f.table.front();
  return z;
}

}  // namespace cspw
