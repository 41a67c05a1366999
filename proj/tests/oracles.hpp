#pragma once

// Brute-force reference computations. Each works from definitions only: enumerate, sum, compare.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "cspw/cyclo.hpp"
#include "cspw/generators.hpp"
#include "cspw/maltsev.hpp"
#include "cspw/model.hpp"
#include "cspw/reductions.hpp"

namespace oracle {

using cspw::CycloValue;
using cspw::Tuple;
using TupleSet = std::set<Tuple>;

inline bool next(Tuple& t, int d) {
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (++t[i] < d) return true;
    t[i] = 0;
  }
  return false;
}

inline std::vector<Tuple> all_tuples(int d, int n) {
  std::vector<Tuple> out;
  Tuple t(n, 0);
  do out.push_back(t);
  while (next(t, d));
  return out;
}

inline CycloValue weight(const cspw::Instance& inst, const Tuple& x) {
  CycloValue w = CycloValue::one(inst.order());
  for (const auto& c : inst.constraints()) {
    Tuple y;
    for (int v : c.vars) y.push_back(x[v]);
    w = w * inst.library()[c.fn].at(y);
  }
  return w;
}

inline CycloValue z(const cspw::Instance& inst) {
  CycloValue s = CycloValue::zero(inst.order());
  for (const Tuple& x : all_tuples(inst.domain(), inst.num_vars())) s = s + weight(inst, x);
  return s;
}

inline std::map<std::string, std::uint64_t> histogram(const cspw::Instance& inst) {
  std::map<std::string, std::uint64_t> h;
  for (const Tuple& x : all_tuples(inst.domain(), inst.num_vars())) ++h[weight(inst, x).to_string()];
  return h;
}

/// Rank of a matrix over Z_p by row reduction.
inline int rank_mod(std::vector<std::vector<int>> rows, int p) {
  int rank = 0;
  const int cols = rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][c] % p != 0) piv = r;
    }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    int inv = 1;
    while ((rows[rank][c] * inv) % p != 1) ++inv;
    for (int& v : rows[rank]) v = (v * inv) % p;
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      const int f = rows[r][c];
      for (int j = 0; j < cols; ++j) rows[r][j] = ((rows[r][j] - f * rows[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

inline TupleSet closure(TupleSet s, const cspw::MaltsevMap& phi) {
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Tuple> v(s.begin(), s.end());
    for (const auto& a : v) {
      for (const auto& b : v) {
        for (const auto& c : v) {
          Tuple t(a.size());
          for (std::size_t i = 0; i < t.size(); ++i) t[i] = phi(a[i], b[i], c[i]);
          grew |= s.insert(t).second;
        }
      }
    }
  }
  return s;
}

inline bool preserves(const cspw::MaltsevMap& phi, const TupleSet& s) { return closure(s, phi) == s; }

inline TupleSet pin(const TupleSet& s, const Tuple& a) {
  TupleSet out;
  for (const Tuple& t : s) {
    if (std::equal(a.begin(), a.end(), t.begin())) out.insert(Tuple(t.begin() + a.size(), t.end()));
  }
  return out;
}

inline TupleSet project(const TupleSet& s, int l) {
  TupleSet out;
  for (const Tuple& t : s) out.insert(Tuple(t.begin(), t.begin() + l));
  return out;
}

inline TupleSet permute(const TupleSet& s, const std::vector<int>& order) {
  TupleSet out;
  for (const Tuple& t : s) {
    Tuple p;
    for (int i : order) p.push_back(t[i]);
    out.insert(p);
  }
  return out;
}

/// Labels of members of s extending the prefix x.
template <class Label>
std::set<std::int64_t> type_of(const TupleSet& s, const Label& label, const Tuple& x) {
  std::set<std::int64_t> out;
  for (const Tuple& t : s) {
    if (std::equal(x.begin(), x.end(), t.begin())) out.insert(label(t));
  }
  return out;
}

/// Z_A(G) by summing over all vertex maps.
inline CycloValue graph_hom(const cspw::GadgetMatrix& a, const cspw::Graph& g) {
  const int q = static_cast<int>(a.size());
  const int order = q ? a.at(0, 0).order() : 1;
  CycloValue s = CycloValue::zero(order);
  if (q == 0) return s;
  for (const Tuple& x : all_tuples(q, g.vertices)) {
    CycloValue w = CycloValue::one(order);
    for (auto [u, v] : g.edges) w = w * a.at(x[u], x[v]);
    s = s + w;
  }
  return s;
}

inline Tuple concat(Tuple a, const Tuple& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

/// The matrix sum_i F(w, i) F(w', i)^{rK-1} over D^{n-1}.
inline std::vector<std::vector<CycloValue>> a_r(const cspw::TableFunction& f, int r, int K) {
  const auto rows = all_tuples(f.domain(), f.arity() - 1);
  std::vector<std::vector<CycloValue>> m(rows.size(), std::vector<CycloValue>(rows.size(), CycloValue::zero(f.order())));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      for (int c = 0; c < f.domain(); ++c) {
        m[i][j] = m[i][j] + f.at(concat(rows[i], {c})) * f.at(concat(rows[j], {c})).pow(r * K - 1);
      }
    }
  }
  return m;
}

/// A(z, w) = sum_{z', w'} P(zz', ww') P(ww', zz') with P(u, u') = sum_p F(u, p) F(u', p)^{K-1}.
inline std::vector<std::vector<CycloValue>> a_typepartition(const cspw::TableFunction& f, int ell, int K) {
  const int d = f.domain();
  const int rest = f.arity() - 1 - ell;
  auto P = [&](const Tuple& u, const Tuple& v) {
    CycloValue s = CycloValue::zero(f.order());
    for (int p = 0; p < d; ++p) s = s + f.at(concat(u, {p})) * f.at(concat(v, {p})).pow(K - 1);
    return s;
  };
  const auto heads = all_tuples(d, ell);
  const auto tails = all_tuples(d, rest);
  std::vector<std::vector<CycloValue>> m(heads.size(), std::vector<CycloValue>(heads.size(), CycloValue::zero(f.order())));
  for (std::size_t i = 0; i < heads.size(); ++i) {
    for (std::size_t j = 0; j < heads.size(); ++j) {
      for (const Tuple& zp : tails) {
        for (const Tuple& wp : tails) {
          const Tuple u = concat(heads[i], zp), v = concat(heads[j], wp);
          m[i][j] = m[i][j] + P(u, v) * P(v, u);
        }
      }
    }
  }
  return m;
}

/// Random graphs with 1..4 vertices (cycling) and up to V+1 edges; loops and multi-edges allowed.
inline std::vector<cspw::Graph> small_graphs(cspw::Rng& rng, int count, bool directed) {
  std::vector<cspw::Graph> out;
  for (int i = 0; i < count; ++i) {
    cspw::Graph g;
    g.directed = directed;
    g.vertices = 1 + i % 4;
    const int e = cspw::uniform(rng, 0, g.vertices + 1);
    for (int k = 0; k < e; ++k) {
      g.edges.emplace_back(cspw::uniform(rng, 0, g.vertices - 1), cspw::uniform(rng, 0, g.vertices - 1));
    }
    out.push_back(g);
  }
  return out;
}

}  // namespace oracle
