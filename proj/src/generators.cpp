#include "cspw/generators.hpp"

#include <algorithm>
#include <numeric>

#include "cspw/errors.hpp"
#include "cspw/pipeline.hpp"

namespace cspw {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

MaltsevMap random_maltsev(Rng& rng, int d) {
  std::vector<int> table(static_cast<std::size_t>(d) * d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        int v = b == c ? a : a == b ? c : uniform(rng, 0, d - 1);
        table[(a * d + b) * d + c] = v;
      }
    }
  }
  return MaltsevMap(d, std::move(table));
}

MaltsevMap maltsev_extending_xor(int d) {
  std::vector<int> table(static_cast<std::size_t>(d) * d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        int v = b == c ? a : a == b ? c : (a < 2 && b < 2 && c < 2) ? (a ^ b ^ c) : a;
        table[(a * d + b) * d + c] = v;
      }
    }
  }
  return MaltsevMap(d, std::move(table));
}

Relation random_closed_relation(Rng& rng, int d, int n, const MaltsevMap& phi, int seeds, const Budget& budget) {
  std::vector<Tuple> ts;
  for (int s = 0; s < seeds; ++s) {
    Tuple t(n);
    for (int& x : t) x = uniform(rng, 0, d - 1);
    ts.push_back(std::move(t));
  }
  return closure(Relation(d, n, std::move(ts)), phi, budget);
}

LinearSystem random_consistent_system(Rng& rng, int p, int n, int m, int max_arity) {
  LinearSystem sys;
  sys.p = p;
  sys.n = n;
  Tuple x0(n);
  for (int& x : x0) x = uniform(rng, 0, p - 1);
  std::vector<int> vars(n);
  std::iota(vars.begin(), vars.end(), 0);
  for (int i = 0; i < m; ++i) {
    std::shuffle(vars.begin(), vars.end(), rng);
    int k = uniform(rng, 1, std::min(max_arity, n));
    std::vector<int> row(n, 0);
    int rhs = 0;
    for (int j = 0; j < k; ++j) {
      row[vars[j]] = uniform(rng, 1, p - 1);
      rhs = (rhs + row[vars[j]] * x0[vars[j]]) % p;
    }
    sys.rows.push_back(std::move(row));
    sys.rhs.push_back(rhs);
  }
  return sys;
}

Instance affine_instance(const LinearSystem& sys, int weight) {
  Instance inst(sys.p, 1, sys.n);
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    std::vector<int> vars, coef;
    for (int j = 0; j < sys.n; ++j) {
      if (sys.rows[i][j] % sys.p != 0) {
        vars.push_back(j);
        coef.push_back(sys.rows[i][j] % sys.p);
      }
    }
    const int k = static_cast<int>(vars.size());
    TableFunction f("eq" + std::to_string(i), k, sys.p, 1);
    Tuple y(k, 0);
    do {
      int s = 0;
      for (int j = 0; j < k; ++j) s += coef[j] * y[j];
      if (s % sys.p == sys.rhs[i] % sys.p) f.set(y, CycloValue(Rational(weight), 1));
    } while (next_tuple(y, sys.p));
    inst.apply(inst.add_function(std::move(f)), vars);
  }
  return inst;
}

namespace {

std::vector<int> distinct_vars(Rng& rng, int n, int k) {
  std::vector<int> vars(n);
  std::iota(vars.begin(), vars.end(), 0);
  std::shuffle(vars.begin(), vars.end(), rng);
  vars.resize(k);
  return vars;
}

Instance hadamard_instance(Rng& rng, int n, int m) {
  Instance inst(2, 4, n);
  TableFunction h("H", 2, 2, 4), u("U", 1, 2, 4), s("M", 1, 2, 4);
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) h.set({x, y}, CycloValue(Rational(x & y ? -1 : 1), 4));
  }
  u.set({0}, CycloValue::one(4));
  u.set({1}, CycloValue::root_power(4, 1));
  s.set({0}, CycloValue::one(4));
  s.set({1}, CycloValue(Rational(-1), 4));
  std::size_t hi = inst.add_function(h), ui = inst.add_function(u), si = inst.add_function(s);
  for (int c = 0; c < m; ++c) {
    int kind = n >= 2 ? uniform(rng, 0, 3) : uniform(rng, 2, 3);
    if (kind <= 1) {
      inst.apply(hi, distinct_vars(rng, n, 2));
    } else {
      inst.apply(kind == 2 ? ui : si, {uniform(rng, 0, n - 1)});
    }
  }
  return inst;
}

Instance block_instance(Rng& rng, int d, int n, int m) {
  std::vector<int> block(d);
  for (int& b : block) b = uniform(rng, 0, d - 1);
  Instance inst(d, 1, n);
  int fns = uniform(rng, 1, 3);
  std::vector<std::size_t> binary, unary;
  for (int f = 0; f < fns; ++f) {
    TableFunction g("B" + std::to_string(f), 2, d, 1);
    std::vector<int> a(d), b(d);
    for (int x = 0; x < d; ++x) {
      a[x] = uniform(rng, 1, 3);
      b[x] = uniform(rng, 1, 3);
    }
    for (int x = 0; x < d; ++x) {
      for (int y = 0; y < d; ++y) {
        if (block[x] == block[y]) g.set({x, y}, CycloValue(Rational(a[x] * b[y]), 1));
      }
    }
    binary.push_back(inst.add_function(std::move(g)));
  }
  TableFunction w("W", 1, d, 1);
  for (int x = 0; x < d; ++x) w.set({x}, CycloValue(Rational(uniform(rng, 1, 4)), 1));
  unary.push_back(inst.add_function(std::move(w)));
  for (int c = 0; c < m; ++c) {
    if (n >= 2 && uniform(rng, 0, 2) != 0) {
      inst.apply(binary[uniform(rng, 0, static_cast<int>(binary.size()) - 1)], distinct_vars(rng, n, 2));
    } else {
      inst.apply(unary[0], {uniform(rng, 0, n - 1)});
    }
  }
  return inst;
}

}  // namespace

std::optional<TractableCase> random_tractable_case(Rng& rng, const std::string& family, int max_vars,
                                                   int max_constraints) {
  const int n = uniform(rng, 1, max_vars);
  const int m = uniform(rng, 1, max_constraints);
  if (family == "affine2") {
    return TractableCase{family, affine_instance(random_consistent_system(rng, 2, n, m, 3)), MaltsevMap::xor3()};
  }
  if (family == "affine3") {
    return TractableCase{family, affine_instance(random_consistent_system(rng, 3, n, m, 3), uniform(rng, 1, 2)),
                         MaltsevMap::affine(3)};
  }
  if (family == "hadamard") return TractableCase{family, hadamard_instance(rng, n, m), MaltsevMap::xor3()};
  if (family == "block") {
    const int d = uniform(rng, 2, 3);
    Instance inst = block_instance(rng, d, std::min(n, 6), m);
    Budget budget;
    budget.triples = std::uint64_t{1} << 22;
    try {
      auto phi = search_phi_for_instance(inst, budget);
      if (!phi) return std::nullopt;
      return TractableCase{family, std::move(inst), *phi};
    } catch (const BudgetExceeded&) {
      return std::nullopt;
    }
  }
  throw InvalidArgument("unknown instance family " + family);
}

PartitionCase random_valid_partition(Rng& rng) {
  const int d = uniform(rng, 2, 3);
  const int n = uniform(rng, 1, 5);
  bool affine = true;
  MaltsevMap phi = MaltsevMap::xor3();
  if (d == 3) {
    int pick = uniform(rng, 0, 2);
    phi = pick == 0 ? MaltsevMap::affine(3) : pick == 1 ? random_maltsev(rng, 3) : maltsev_extending_xor(3);
    affine = pick == 0;
  }
  Relation rel = random_closed_relation(rng, d, n, phi, uniform(rng, 1, 4));
  const std::int64_t salt = uniform(rng, 1, 1 << 20);
  int kind = uniform(rng, 0, 9);
  PartitionCase pc{"", rel, phi, {}};
  if (kind == 0) {
    pc.name = "constant";
    pc.label = [salt](const Tuple&) { return salt; };
  } else if (affine && kind <= 5) {
    std::vector<int> coef(n);
    for (int& c : coef) c = uniform(rng, 0, d - 1);
    pc.name = "linear form " + format_tuple(coef) + " mod " + std::to_string(d);
    pc.label = [coef, d, salt](const Tuple& x) {
      int s = 0;
      for (std::size_t i = 0; i < x.size(); ++i) s += coef[i] * x[i];
      return salt * 31 + (s % d) * 7919;
    };
  } else {
    const int j = uniform(rng, 0, n - 1);
    pc.name = "coordinate " + std::to_string(j);
    pc.label = [j, salt](const Tuple& x) { return salt - 104729 * static_cast<std::int64_t>(x[j]); };
  }
  pc.name += " on d=" + std::to_string(d) + " n=" + std::to_string(n);
  return pc;
}

std::vector<PartitionCase> violating_partitions() {
  std::vector<PartitionCase> out;
  auto three_way = [](int i, int j) {
    return [i, j](const Tuple& x) -> std::int64_t {
      if (x[i] == x[j]) return 10;
      return x[i] == 0 ? 20 : 30;
    };
  };
  for (int d = 2; d <= 3; ++d) {
    MaltsevMap phi = d == 2 ? MaltsevMap::xor3() : maltsev_extending_xor(3);
    for (int n = 2; n <= 4; ++n) {
      std::vector<Tuple> cube;
      Tuple x(n, 0);
      do cube.push_back(x);
      while (next_tuple(x, 2));
      Relation rel(d, n, cube);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          std::string name = "three-part pattern on coordinates (" + std::to_string(i) + "," + std::to_string(j) +
                             ") of {0,1}^" + std::to_string(n) + " in d=" + std::to_string(d);
          out.push_back({name, rel, phi, three_way(i, j)});
          out.push_back({name + " reversed", rel, phi, three_way(j, i)});
        }
      }
    }
  }
  return out;
}

Instance random_pure_instance(Rng& rng, int d, int order, int n, int m, bool zeros) {
  std::vector<CycloValue> palette;
  const int psize = uniform(rng, 1, 3);
  while (static_cast<int>(palette.size()) < psize) {
    CycloValue v = CycloValue::root_power(order, uniform(rng, 0, order - 1), Rational(uniform(rng, 1, 3)));
    if (std::find(palette.begin(), palette.end(), v) == palette.end()) palette.push_back(v);
  }
  Instance inst(d, order, n);
  const int fns = uniform(rng, 1, 2);
  for (int f = 0; f < fns; ++f) {
    const int r = uniform(rng, 1, std::min(n, 3));
    TableFunction g("F" + std::to_string(f), r, d, order);
    Tuple x(r, 0);
    do {
      if (zeros && uniform(rng, 0, 3) == 0) continue;
      g.set(x, palette[uniform(rng, 0, psize - 1)]);
    } while (next_tuple(x, d));
    inst.add_function(std::move(g));
  }
  for (int c = 0; c < m; ++c) {
    std::size_t fi = static_cast<std::size_t>(uniform(rng, 0, fns - 1));
    const int r = inst.library()[fi].arity();
    std::vector<int> vars;
    for (int k = 0; k < r; ++k) vars.push_back(uniform(rng, 0, n - 1));
    inst.apply(fi, vars);
  }
  return inst;
}

}  // namespace cspw
