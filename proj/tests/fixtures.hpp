#pragma once

#include "cspw/model.hpp"

namespace fixtures {

using cspw::CycloValue;
using cspw::Instance;
using cspw::TableFunction;

inline CycloValue q(long n, long d = 1, int order = 1) { return CycloValue(cspw::Rational(n, d), order); }
inline CycloValue zeta(int order, long long k = 1) { return CycloValue::root_power(order, k); }

/// (-1)^{xy}.
inline TableFunction hadamard_fn() {
  TableFunction f("h", 2, 2, 2);
  f.set({0, 0}, q(1, 1, 2));
  f.set({0, 1}, q(1, 1, 2));
  f.set({1, 0}, q(1, 1, 2));
  f.set({1, 1}, q(-1, 1, 2));
  return f;
}

inline Instance hadamard() {
  Instance inst(2, 2, 2);
  inst.add_function(hadamard_fn());
  inst.apply("h", {0, 1});
  return inst;
}

/// 0/1 weights of x + y + z = 0 over Z_2.
inline TableFunction xor_fn() {
  TableFunction f("eq", 3, 2, 1);
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) f.set({x, y, x ^ y}, q(1));
  return f;
}

inline Instance xor_instance() {
  Instance inst(2, 1, 3);
  inst.add_function(xor_fn());
  inst.apply("eq", {0, 1, 2});
  return inst;
}

/// Rows (1,1) and (1,zeta_4).
inline TableFunction zeta_rows_fn() {
  TableFunction f("f", 2, 2, 4);
  f.set({0, 0}, q(1, 1, 4));
  f.set({0, 1}, q(1, 1, 4));
  f.set({1, 0}, q(1, 1, 4));
  f.set({1, 1}, zeta(4));
  return f;
}

inline Instance single(const TableFunction& f) {
  Instance inst(f.domain(), f.order(), f.arity());
  inst.add_function(f);
  std::vector<int> vars(f.arity());
  for (int i = 0; i < f.arity(); ++i) vars[i] = i;
  inst.apply(f.name(), vars);
  return inst;
}

/// Rows F(0,0,*) = (1,1), F(1,1,*) = (1,1), F(0,1,*) = (1,-1), F(1,0,*) = 0.
inline TableFunction typepartition_fn() {
  TableFunction f("f", 3, 2, 2);
  f.set({0, 0, 0}, q(1, 1, 2));
  f.set({0, 0, 1}, q(1, 1, 2));
  f.set({1, 1, 0}, q(1, 1, 2));
  f.set({1, 1, 1}, q(1, 1, 2));
  f.set({0, 1, 0}, q(1, 1, 2));
  f.set({0, 1, 1}, q(-1, 1, 2));
  return f;
}

}  // namespace fixtures
