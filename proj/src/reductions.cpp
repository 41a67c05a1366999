#include "cspw/reductions.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cspw/errors.hpp"

namespace cspw {

ValueSet candidate_value_set(const ValueSet& im, int m, const Budget& budget) {
  if (m < 0) throw InvalidArgument("candidate_value_set: m must be nonnegative");
  int order = 1;
  for (const CycloValue& c : im) {
    if (c.is_zero()) throw InvalidArgument("candidate_value_set: image values must be nonzero");
    order = std::lcm(order, c.order());
  }
  ValueSet cur{CycloValue::one(order)};
  for (int step = 0; step < m; ++step) {
    ValueSet next;
    for (const CycloValue& s : cur) {
      for (const CycloValue& c : im) {
        next.insert((s * c).promoted(order));
        if (next.size() > budget.assignments) throw BudgetExceeded("candidate value set too large");
      }
    }
    cur = std::move(next);
  }
  return cur;
}

namespace {

/// Solves M x = b by Gauss-Jordan elimination; M must be nonsingular.
std::vector<CycloValue> solve_linear(std::vector<std::vector<CycloValue>> m, std::vector<CycloValue> b) {
  const std::size_t s = b.size();
  for (std::size_t col = 0; col < s; ++col) {
    std::size_t piv = col;
    while (piv < s && m[piv][col].is_zero()) ++piv;
    if (piv == s) throw std::logic_error("singular Vandermonde system");
    std::swap(m[piv], m[col]);
    std::swap(b[piv], b[col]);
    CycloValue inv = m[col][col].inv();
    for (std::size_t j = col; j < s; ++j) m[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < s; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      CycloValue f = m[r][col];
      for (std::size_t j = col; j < s; ++j) m[r][j] -= f * m[col][j];
      b[r] -= f * b[col];
    }
  }
  return b;
}

}  // namespace

ValueHistogram count_via_vandermonde(const Instance& inst, const ZOracle& z_oracle, const Budget& budget) {
  const int order = inst.order();
  const std::uint64_t total = checked_power(inst.domain(), inst.num_vars(), std::uint64_t{1} << 62);
  ValueSet im;
  std::vector<bool> used(inst.library().size(), false);
  for (const Constraint& c : inst.constraints()) used[c.fn] = true;
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) continue;
    for (const CycloValue& v : inst.library()[i].image()) im.insert(v.promoted(order));
  }
  ValueHistogram hist;
  const int m = static_cast<int>(inst.constraints().size());
  ValueSet cand = im.empty() && m > 0 ? ValueSet{} : candidate_value_set(im, m, budget);
  std::vector<CycloValue> cs;
  for (const CycloValue& c : cand) cs.push_back(c.promoted(order));
  const std::size_t s = cs.size();
  if (s > 512) throw BudgetExceeded("Vandermonde system with " + std::to_string(s) + " unknowns");
  mpz_class nonzero = 0;
  if (s > 0) {
    std::vector<std::vector<CycloValue>> mat(s, std::vector<CycloValue>(s));
    std::vector<CycloValue> rhs(s);
    for (std::size_t l = 1; l <= s; ++l) {
      for (std::size_t j = 0; j < s; ++j) mat[l - 1][j] = cs[j].pow(l);
      rhs[l - 1] = z_oracle(power_instance(inst, static_cast<int>(l))).promoted(order);
    }
    std::vector<CycloValue> counts = solve_linear(std::move(mat), std::move(rhs));
    for (std::size_t j = 0; j < s; ++j) {
      auto q = counts[j].as_rational();
      if (!q || q->get_den() != 1 || *q < 0) {
        throw Error("oracle values are inconsistent: count of " + cs[j].to_string() + " is " + counts[j].to_string());
      }
      if (*q == 0) continue;
      hist[cs[j]] = q->get_num().get_ui();
      nonzero += q->get_num();
    }
  }
  mpz_class zeros = mpz_class(std::to_string(total)) - nonzero;
  if (zeros < 0) throw Error("oracle values are inconsistent: more than d^n nonzero assignments");
  if (zeros > 0) hist[CycloValue::zero(order)] = zeros.get_ui();
  return hist;
}

int order_of(const TableFunction& f) {
  int k = 1;
  for (const auto& [code, v] : f.entries()) {
    auto pf = v.pure_form();
    if (!pf) throw Unsupported("value " + v.to_string() + " of " + f.name() + " is not pure");
    k = std::lcm(k, pf->root_order());
  }
  return k;
}

namespace {

void factor_into(mpz_class x, std::map<mpz_class, int>& primes, int sign) {
  for (unsigned long p = 2; p <= 1000000 && x > 1; ++p) {
    if (p * p > x) break;
    while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
      primes[mpz_class(p)] += sign;
      x /= p;
    }
  }
  if (x > 1) {
    if (mpz_probab_prime_p(x.get_mpz_t(), 30) == 0) throw Unsupported("cannot factor magnitude " + x.get_str());
    primes[x] += sign;
  }
}

std::vector<mpz_class> first_primes(std::size_t k) {
  std::vector<mpz_class> out;
  mpz_class p = 2;
  while (out.size() < k) {
    out.push_back(p);
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  }
  return out;
}

}  // namespace

std::vector<TableFunction> purify(const std::vector<TableFunction>& fns) {
  std::set<mpz_class> gens;
  for (const TableFunction& f : fns) {
    for (const auto& [code, v] : f.entries()) {
      auto pf = v.pure_form();
      if (!pf) throw Unsupported("value " + v.to_string() + " of " + f.name() + " has no rational magnitude");
      std::map<mpz_class, int> ex;
      factor_into(pf->magnitude.get_num(), ex, 1);
      factor_into(pf->magnitude.get_den(), ex, -1);
      for (const auto& [p, e] : ex) gens.insert(p);
    }
  }
  std::vector<mpz_class> from(gens.begin(), gens.end());
  std::vector<mpz_class> to = first_primes(from.size());
  std::map<mpz_class, mpz_class> image;
  for (std::size_t i = 0; i < from.size(); ++i) image[from[i]] = to[i];
  std::vector<TableFunction> out;
  for (const TableFunction& f : fns) {
    TableFunction g(f.name(), f.arity(), f.domain(), f.order());
    for (const auto& [code, v] : f.entries()) {
      PureForm pf = *v.pure_form();
      std::map<mpz_class, int> ex;
      factor_into(pf.magnitude.get_num(), ex, 1);
      factor_into(pf.magnitude.get_den(), ex, -1);
      mpz_class num = 1, den = 1;
      for (const auto& [p, e] : ex) {
        mpz_class q = image.at(p);
        for (int k = 0; k < std::abs(e); ++k) (e > 0 ? num : den) *= q;
      }
      pf.magnitude = Rational(num, den);
      pf.magnitude.canonicalize();
      g.set(decode_tuple(code, f.domain(), f.arity()), pf.value(f.order()));
    }
    // Same support, and the same dependence pattern on rows with a shared support.
    if (g.entries().size() != f.entries().size()) throw std::logic_error("purification changed the support");
    if (f.arity() >= 2) {
      RowMatrix a = rows_of(f), b = rows_of(g);
      std::vector<std::size_t> nz;
      for (std::size_t i = 0; i < a.rows.size() && nz.size() < 256; ++i) {
        if (!is_zero_row(a.rows[i])) nz.push_back(i);
      }
      for (std::size_t i = 0; i < nz.size(); ++i) {
        for (std::size_t j = i + 1; j < nz.size(); ++j) {
          const Row &x = a.rows[nz[i]], &y = a.rows[nz[j]];
          bool same_support = true;
          for (std::size_t c = 0; c < x.size(); ++c) same_support &= x[c].is_zero() == y[c].is_zero();
          if (!same_support) continue;
          if (linearly_dependent(x, y) != linearly_dependent(b.rows[nz[i]], b.rows[nz[j]])) {
            throw std::logic_error("purification changed a row dependence");
          }
        }
      }
    }
    out.push_back(std::move(g));
  }
  return out;
}

CycloValue power_sum(const Row& x, const Row& y, int K, int s, int r) {
  if (x.size() != y.size()) throw InvalidArgument("power_sum: length mismatch");
  if (K < 1 || s < 0 || r < 1) throw InvalidArgument("power_sum: need K >= 1, s >= 0, r >= 1");
  int order = 1;
  for (std::size_t i = 0; i < x.size(); ++i) order = std::lcm(order, std::lcm(x[i].order(), y[i].order()));
  CycloValue sum = CycloValue::zero(order);
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += x[i].pow(static_cast<unsigned long>(s) * K + 1) * y[i].pow(static_cast<unsigned long>(r) * K - 1);
  }
  return sum;
}

std::size_t GadgetMatrix::index_of(const Tuple& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) throw InvalidArgument("label " + format_tuple(label) + " not in matrix");
  return static_cast<std::size_t>(it - labels.begin());
}

std::optional<std::pair<std::size_t, std::size_t>> abs_block_rank1_violation(const GadgetMatrix& a) {
  RowMatrix m;
  m.d = static_cast<int>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    m.labels.push_back(Tuple{static_cast<int>(i)});
    m.rows.push_back(a.entries[i]);
  }
  auto v = block_rank1_violation(m);
  if (!v) return std::nullopt;
  return std::make_pair(static_cast<std::size_t>(v->first[0]), static_cast<std::size_t>(v->second[0]));
}

namespace {

void check_graph(const Graph& g) {
  if (g.vertices < 0) throw InvalidArgument("graph: negative vertex count");
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices) throw InvalidArgument("graph: edge endpoint out of range");
  }
}

int matrix_order(const GadgetMatrix& a) {
  int order = 1;
  for (const auto& row : a.entries) {
    for (const CycloValue& c : row) order = std::lcm(order, c.order());
  }
  return order;
}

std::vector<Tuple> all_tuples(int d, int n) {
  std::vector<Tuple> out;
  Tuple x(n, 0);
  do out.push_back(x);
  while (next_tuple(x, d));
  return out;
}

void require_arity(const TableFunction& f, int lo) {
  if (f.arity() < lo) throw InvalidArgument(f.name() + " needs arity at least " + std::to_string(lo));
}

void require_block_orthogonal(const TableFunction& f) {
  auto c = classify_function(rows_of(f));
  if (c.kind != Classification::BlockOrthogonal) {
    throw InvalidArgument(f.name() + " is not block-orthogonal (" + to_string(c.kind) + ")");
  }
}

Tuple cat(const Tuple& a, const Tuple& b) {
  Tuple out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

CycloValue eval_graph_hom(const GadgetMatrix& a, const Graph& g, const Budget& budget) {
  check_graph(g);
  const int q = static_cast<int>(a.size());
  const int order = matrix_order(a);
  if (q == 0) return g.vertices == 0 ? CycloValue::one(order) : CycloValue::zero(order);
  checked_power(q, g.vertices, budget.assignments);
  CycloValue z = CycloValue::zero(order);
  Tuple x(g.vertices, 0);
  do {
    CycloValue prod = CycloValue::one(order);
    for (auto [u, v] : g.edges) {
      const CycloValue& e = a.at(x[u], x[v]);
      if (e.is_zero()) {
        prod = CycloValue::zero(order);
        break;
      }
      prod *= e;
    }
    if (!prod.is_zero()) z += prod;
  } while (q > 0 && next_tuple(x, q));
  return z.promoted(order);
}

Gadget gadget_A_r(const TableFunction& f, int r) {
  require_arity(f, 2);
  if (r < 1) throw InvalidArgument("gadget_A_r: r must be positive");
  const int n = f.arity(), d = f.domain();
  const int K = order_of(f);
  const unsigned long e = static_cast<unsigned long>(r) * K - 1;
  Gadget g;
  g.K = K;
  RowMatrix rows = rows_of(f);
  std::vector<Row> powered;
  for (const Row& row : rows.rows) {
    Row p;
    for (const CycloValue& c : row) p.push_back(c.pow(e));
    powered.push_back(std::move(p));
  }
  g.matrix.labels = rows.labels;
  for (std::size_t w = 0; w < rows.rows.size(); ++w) {
    std::vector<CycloValue> out;
    for (std::size_t w2 = 0; w2 < rows.rows.size(); ++w2) {
      CycloValue s = CycloValue::zero(f.order());
      for (int i = 0; i < d; ++i) s += rows.rows[w][i] * powered[w2][i];
      out.push_back(s);
    }
    g.matrix.entries.push_back(std::move(out));
  }
  g.realize = [f, n, e](const Graph& gr) {
    check_graph(gr);
    const int z = n - 1;
    Instance inst(f.domain(), f.order(), gr.vertices * z + static_cast<int>(gr.edges.size()));
    std::size_t fn = inst.add_function(f);
    for (std::size_t k = 0; k < gr.edges.size(); ++k) {
      auto [u, v] = gr.edges[k];
      const int w = gr.vertices * z + static_cast<int>(k);
      std::vector<int> su, sv;
      for (int j = 0; j < z; ++j) {
        su.push_back(u * z + j);
        sv.push_back(v * z + j);
      }
      su.push_back(w);
      sv.push_back(w);
      inst.apply(fn, su);
      for (unsigned long c = 0; c < e; ++c) inst.apply(fn, sv);
    }
    return inst;
  };
  return g;
}

Gadget gadget_A_typepartition(const TableFunction& f, int ell) {
  require_arity(f, 3);
  const int n = f.arity(), d = f.domain();
  if (ell < 1 || ell > n - 2) throw InvalidArgument("gadget_A_typepartition: ell must lie in 1..n-2");
  const int K = order_of(f);
  require_block_orthogonal(f);
  RowMatrix rows = rows_of(f);
  std::vector<Row> powered;
  for (const Row& row : rows.rows) {
    Row p;
    for (const CycloValue& c : row) p.push_back(c.pow(static_cast<unsigned long>(K) - 1));
    powered.push_back(std::move(p));
  }
  // P(u, u') = sum_p F(u, p) F(u', p)^{K-1}
  auto P = [&](std::size_t u, std::size_t u2) {
    CycloValue s = CycloValue::zero(f.order());
    for (int p = 0; p < d; ++p) s += rows.rows[u][p] * powered[u2][p];
    return s;
  };
  const int tail = n - 1 - ell;
  std::vector<Tuple> heads = all_tuples(d, ell), tails = all_tuples(d, tail);
  Gadget g;
  g.K = K;
  g.matrix.labels = heads;
  for (const Tuple& z : heads) {
    std::vector<CycloValue> out;
    for (const Tuple& w : heads) {
      CycloValue s = CycloValue::zero(f.order());
      for (const Tuple& z2 : tails) {
        std::size_t zi = encode_tuple(cat(z, z2), d);
        for (const Tuple& w2 : tails) {
          std::size_t wi = encode_tuple(cat(w, w2), d);
          CycloValue a = P(zi, wi);
          if (a.is_zero()) continue;
          s += a * P(wi, zi);
        }
      }
      out.push_back(s);
    }
    g.matrix.entries.push_back(std::move(out));
  }
  g.realize = [f, ell, tail, K](const Graph& gr) {
    check_graph(gr);
    const int per_edge = 2 + 2 * tail;
    Instance inst(f.domain(), f.order(), gr.vertices * ell + per_edge * static_cast<int>(gr.edges.size()));
    std::size_t fn = inst.add_function(f);
    for (std::size_t k = 0; k < gr.edges.size(); ++k) {
      auto [u, v] = gr.edges[k];
      const int base = gr.vertices * ell + per_edge * static_cast<int>(k);
      const int p = base, q = base + 1;
      auto scope = [&](int vertex, int first_tail, int last) {
        std::vector<int> s;
        for (int j = 0; j < ell; ++j) s.push_back(vertex * ell + j);
        for (int j = 0; j < tail; ++j) s.push_back(first_tail + j);
        s.push_back(last);
        return s;
      };
      const int s_e = base + 2, r_e = base + 2 + tail;
      inst.apply(fn, scope(u, s_e, p));
      inst.apply(fn, scope(v, r_e, q));
      for (int c = 0; c < K - 1; ++c) {
        inst.apply(fn, scope(u, s_e, q));
        inst.apply(fn, scope(v, r_e, p));
      }
    }
    return inst;
  };
  return g;
}

TableFunction gadget_H(const TableFunction& f) {
  require_arity(f, 2);
  const int n = f.arity(), d = f.domain();
  const int K = order_of(f);
  require_block_orthogonal(f);
  RowMatrix rows = rows_of(f);
  RowRepresentation rep = row_representation(rows);
  std::vector<int> cls(rows.rows.size(), -1);
  for (std::size_t j = 0; j < rep.classes.size(); ++j) {
    for (const Tuple& x : rep.classes[j].members) cls[encode_tuple(x, d)] = static_cast<int>(j);
  }
  TableFunction h(f.name() + "_H", 2 * (n - 1), d, f.order());
  for (std::size_t x = 0; x < rows.rows.size(); ++x) {
    for (std::size_t y = 0; y < rows.rows.size(); ++y) {
      CycloValue s = CycloValue::zero(f.order());
      for (int z = 0; z < d; ++z) s += rows.rows[x][z] * rows.rows[y][z].pow(static_cast<unsigned long>(K) - 1);
      bool in_omega = cls[x] >= 0 && cls[x] == cls[y];
      if (s.is_zero() == in_omega) throw std::logic_error("Boolean(H) differs from Omega at " + format_tuple(rows.labels[x]));
      if (!s.is_zero()) h.set(cat(rows.labels[x], rows.labels[y]), s);
    }
  }
  return h;
}

Instance expand_H_constraints(const Instance& inst, const std::string& h_name, const std::string& f_name, int K) {
  if (K < 1) throw InvalidArgument("expand_H_constraints: K must be positive");
  const std::size_t h = *inst.find_function(h_name);
  auto fi = inst.find_function(f_name);
  if (!fi) throw InvalidArgument("unknown function " + f_name);
  const int half = inst.library()[h].arity() / 2;
  if (inst.library()[*fi].arity() != half + 1) throw InvalidArgument("arity mismatch between " + h_name + " and " + f_name);
  int extra = 0;
  for (const Constraint& c : inst.constraints()) extra += c.fn == h;
  Instance out(inst.domain(), inst.order(), inst.num_vars() + extra);
  for (const TableFunction& f : inst.library()) out.add_function(f);
  int next = inst.num_vars();
  for (const Constraint& c : inst.constraints()) {
    if (c.fn != h) {
      out.apply(c.fn, c.vars);
      continue;
    }
    const int z = next++;
    std::vector<int> x(c.vars.begin(), c.vars.begin() + half), y(c.vars.begin() + half, c.vars.end());
    x.push_back(z);
    y.push_back(z);
    out.apply(*fi, x);
    for (int k = 0; k < K - 1; ++k) out.apply(*fi, y);
  }
  return out;
}

GadgetB gadget_B(const GadgetMatrix& a) {
  GadgetB g;
  const std::size_t q = a.size();
  g.abs.labels = g.matrix.labels = a.labels;
  for (std::size_t i = 0; i < q; ++i) {
    std::vector<CycloValue> row;
    for (std::size_t j = 0; j < q; ++j) {
      auto pf = a.at(i, j).pure_form();
      if (!pf) throw Unsupported("entry " + a.at(i, j).to_string() + " has no rational magnitude");
      row.emplace_back(pf->magnitude, 1);
    }
    g.abs.entries.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < q; ++i) {
    std::vector<CycloValue> row;
    for (std::size_t j = 0; j < q; ++j) {
      CycloValue s = CycloValue::zero(1);
      for (std::size_t k = 0; k < q; ++k) s += g.abs.at(i, k) * g.abs.at(j, k);
      row.push_back(s);
    }
    g.matrix.entries.push_back(std::move(row));
  }
  g.transform = [](const Graph& gr) {
    check_graph(gr);
    Graph out;
    out.directed = true;
    out.vertices = gr.vertices + static_cast<int>(gr.edges.size());
    for (std::size_t k = 0; k < gr.edges.size(); ++k) {
      const int xe = gr.vertices + static_cast<int>(k);
      out.edges.emplace_back(gr.edges[k].first, xe);
      out.edges.emplace_back(gr.edges[k].second, xe);
    }
    return out;
  };
  return g;
}

}  // namespace cspw
