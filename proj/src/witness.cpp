#include "cspw/witness.hpp"

#include <algorithm>
#include <map>

#include "cspw/errors.hpp"

namespace cspw {

namespace {

bool same_prefix(const Tuple& a, const Tuple& b, int len) {
  return std::equal(a.begin(), a.begin() + len, b.begin());
}

Tuple concat(const Tuple& a, std::initializer_list<int> tail) {
  Tuple out = a;
  out.insert(out.end(), tail.begin(), tail.end());
  return out;
}

Tuple swapped(Tuple t, int j) {
  std::swap(t[j], t[j + 1]);
  return t;
}

}  // namespace

WitnessFunction::WitnessFunction(int arity, MaltsevMap phi) : arity_(arity), phi_(std::move(phi)) {
  if (arity < 0) throw InvalidArgument("witness function arity must be non-negative");
  table_.resize(static_cast<std::size_t>(arity) * phi_.domain());
}

WitnessFunction WitnessFunction::unit(MaltsevMap phi) {
  WitnessFunction w(0, std::move(phi));
  w.nullary_nonempty_ = true;
  return w;
}

void WitnessFunction::set(int i, int a, std::optional<Tuple> t) {
  if (i < 0 || i >= arity_ || a < 0 || a >= domain()) throw InvalidArgument("witness index out of range");
  if (t && (static_cast<int>(t->size()) != arity_ || (*t)[i] != a)) {
    throw InvalidArgument("witness for (" + std::to_string(i) + "," + std::to_string(a) + ") is " + format_tuple(*t));
  }
  table_[static_cast<std::size_t>(i) * domain() + a] = std::move(t);
}

bool WitnessFunction::empty() const {
  if (arity_ == 0) return !nullary_nonempty_;
  for (int a = 0; a < domain(); ++a) {
    if (at(0, a)) return false;
  }
  return true;
}

WitnessFunction build_witness_enumerative(const Relation& rel, const MaltsevMap& phi, bool check_polymorphism,
                                          const Budget& budget) {
  if (rel.domain() != phi.domain()) throw InvalidArgument("domain mismatch between relation and operation");
  if (check_polymorphism) {
    if (auto v = polymorphism_violation(phi, rel, budget)) {
      throw NotPolymorphism("phi maps " + format_tuple(v->u) + "," + format_tuple(v->v) + "," + format_tuple(v->w) +
                            " to " + format_tuple(v->image) + " outside the relation");
    }
  }
  const int n = rel.arity();
  const int d = rel.domain();
  if (n == 0) return rel.empty() ? WitnessFunction(0, phi) : WitnessFunction::unit(phi);
  WitnessFunction w(n, phi);
  for (int i = 0; i < n; ++i) {
    // prefix -> value -> first tuple with that prefix and value
    std::map<Tuple, std::map<int, const Tuple*>> groups;
    for (const Tuple& t : rel.tuples()) {
      groups[Tuple(t.begin(), t.begin() + i)].emplace(t[i], &t);
    }
    // For every co-occurring value pair, the first prefix group where both appear.
    std::vector<const std::map<int, const Tuple*>*> pair_group(static_cast<std::size_t>(d) * d, nullptr);
    std::vector<int> parent(d);
    for (int a = 0; a < d; ++a) parent[a] = a;
    auto find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    std::vector<const Tuple*> first(d, nullptr);
    for (const auto& [prefix, vals] : groups) {
      for (const auto& [a, ta] : vals) {
        if (!first[a]) first[a] = ta;
        for (const auto& [b, tb] : vals) {
          if (!pair_group[a * d + b]) pair_group[a * d + b] = &vals;
        }
        parent[find(a)] = find(vals.begin()->first);
      }
    }
    std::vector<int> rep(d, -1);
    for (int a = 0; a < d; ++a) {
      if (!first[a]) continue;
      int root = find(a);
      if (rep[root] < 0) {
        rep[root] = a;
        w.set(i, a, *first[a]);
        continue;
      }
      int r = rep[root];
      const auto* grp = pair_group[r * d + a];
      if (!grp) throw NotPolymorphism("values " + std::to_string(r) + " and " + std::to_string(a) + " at coordinate " +
                                      std::to_string(i) + " are related only transitively");
      const Tuple& x = *w.at(i, r);
      Tuple y = phi.apply(x, *grp->at(r), *grp->at(a));
      if (!rel.contains(y)) throw NotPolymorphism("splice produced " + format_tuple(y) + " outside the relation");
      w.set(i, a, std::move(y));
    }
  }
  return w;
}

std::optional<Tuple> complete_prefix(const WitnessFunction& w, const Tuple& prefix) {
  const int n = w.arity();
  const int len = static_cast<int>(prefix.size());
  if (len > n) throw InvalidArgument("prefix longer than the relation arity");
  if (w.empty()) return std::nullopt;
  if (n == 0) return Tuple{};
  if (len == 0) {
    for (int a = 0; a < w.domain(); ++a) {
      if (w.at(0, a)) return *w.at(0, a);
    }
    return std::nullopt;
  }
  for (int a : prefix) {
    if (a < 0 || a >= w.domain()) return std::nullopt;
  }
  const auto& start = w.at(0, prefix[0]);
  if (!start) return std::nullopt;
  Tuple y = *start;
  for (int i = 1; i < len; ++i) {
    const auto& wx = w.at(i, prefix[i]);
    const auto& wy = w.at(i, y[i]);
    if (!wx || !wy) return std::nullopt;
    if (!same_prefix(*wx, *wy, i)) return std::nullopt;
    y = w.phi().apply(*wx, *wy, y);
  }
  return y;
}

bool member(const WitnessFunction& w, const Tuple& x) {
  if (static_cast<int>(x.size()) != w.arity()) return false;
  return complete_prefix(w, x).has_value();
}

WitnessFunction pin(const WitnessFunction& w, const Tuple& a) {
  const int n = w.arity();
  const int l = static_cast<int>(a.size());
  if (l > n) throw InvalidArgument("pin: prefix longer than the relation arity");
  if (l == 0) return w;
  if (!complete_prefix(w, a)) return WitnessFunction(n - l, w.phi());
  if (l == n) return WitnessFunction::unit(w.phi());
  WitnessFunction out(n - l, w.phi());
  const int d = w.domain();
  for (int m = l; m < n; ++m) {
    // Move coordinate m next to the pinned prefix, then use prefix completion.
    WitnessFunction moved = w;
    for (int j = m - 1; j >= l; --j) moved = swap_adjacent(moved, j);
    std::vector<std::optional<Tuple>> reach(d);
    Tuple probe = a;
    probe.push_back(0);
    for (int c = 0; c < d; ++c) {
      probe.back() = c;
      auto t = complete_prefix(moved, probe);
      if (!t) continue;
      Tuple orig = *t;
      // Undo the rotation: moved[l] is original m, moved[l+1..m] are original l..m-1.
      orig[m] = (*t)[l];
      for (int j = l; j < m; ++j) orig[j] = (*t)[j + 1];
      reach[c] = std::move(orig);
    }
    std::vector<bool> done(d, false);
    for (int c = 0; c < d; ++c) {
      if (!reach[c] || done[c]) continue;
      const Tuple& base = *reach[c];
      const Tuple& wc = *w.at(m, c);
      out.set(m - l, c, Tuple(base.begin() + l, base.end()));
      done[c] = true;
      for (int e = c + 1; e < d; ++e) {
        if (!reach[e] || done[e]) continue;
        const Tuple& we = *w.at(m, e);
        if (!same_prefix(wc, we, m)) continue;
        Tuple t = w.phi().apply(base, wc, we);
        out.set(m - l, e, Tuple(t.begin() + l, t.end()));
        done[e] = true;
      }
    }
  }
  return out;
}

WitnessFunction project_prefix(const WitnessFunction& w, int l) {
  if (l < 0 || l > w.arity()) throw InvalidArgument("project_prefix: bad length");
  if (l == w.arity()) return w;
  if (l == 0) return w.empty() ? WitnessFunction(0, w.phi()) : WitnessFunction::unit(w.phi());
  WitnessFunction out(l, w.phi());
  for (int i = 0; i < l; ++i) {
    for (int a = 0; a < w.domain(); ++a) {
      if (const auto& t = w.at(i, a)) out.set(i, a, Tuple(t->begin(), t->begin() + l));
    }
  }
  return out;
}

std::vector<ProjectedTuple> project_prefix_explicit(const WitnessFunction& w, int l, int cap) {
  if (l < 0 || l > w.arity()) throw InvalidArgument("project_prefix_explicit: bad length");
  if (l > cap) throw InvalidArgument("explicit projection refused: length " + std::to_string(l) + " exceeds " + std::to_string(cap));
  std::vector<ProjectedTuple> out;
  if (w.empty()) return out;
  std::vector<Tuple> stack{Tuple{}};
  // Depth-first in reverse value order so results come out lexicographically.
  while (!stack.empty()) {
    Tuple p = std::move(stack.back());
    stack.pop_back();
    if (static_cast<int>(p.size()) == l) {
      out.push_back({p, *complete_prefix(w, p)});
      continue;
    }
    for (int a = w.domain() - 1; a >= 0; --a) {
      Tuple q = p;
      q.push_back(a);
      if (complete_prefix(w, q)) stack.push_back(std::move(q));
    }
  }
  return out;
}

WitnessFunction swap_adjacent(const WitnessFunction& w, int j) {
  const int n = w.arity();
  if (j < 0 || j + 1 >= n) throw InvalidArgument("swap_adjacent: bad position");
  const int d = w.domain();
  const MaltsevMap& phi = w.phi();
  WitnessFunction out(n, phi);
  for (int k = 0; k < n; ++k) {
    if (k == j || k == j + 1) continue;
    for (int a = 0; a < d; ++a) {
      if (const auto& t = w.at(k, a)) out.set(k, a, swapped(*t, j));
    }
  }
  // Pairs (a', b') with x o a' o b' extendable, with completions.
  auto pairs_after = [&](const Tuple& x) {
    std::vector<std::optional<Tuple>> p(static_cast<std::size_t>(d) * d);
    for (int a = 0; a < d; ++a) {
      if (!complete_prefix(w, concat(x, {a}))) continue;
      for (int b = 0; b < d; ++b) p[a * d + b] = complete_prefix(w, concat(x, {a, b}));
    }
    return p;
  };
  // New coordinate j holds old coordinate j+1.
  std::vector<bool> covered(d, false);
  for (int b = 0; b < d; ++b) {
    const auto& wb = w.at(j + 1, b);
    if (!wb || covered[b]) continue;
    Tuple x(wb->begin(), wb->begin() + j);
    auto p = pairs_after(x);
    for (int b2 = 0; b2 < d; ++b2) {
      for (int a2 = 0; a2 < d; ++a2) {
        if (!p[a2 * d + b2]) continue;
        if (!covered[b2]) {
          out.set(j, b2, swapped(*p[a2 * d + b2], j));
          covered[b2] = true;
        }
        break;
      }
    }
  }
  // New coordinate j+1 holds old coordinate j.
  std::fill(covered.begin(), covered.end(), false);
  for (int a = 0; a < d; ++a) {
    const auto& wa = w.at(j, a);
    if (!wa || covered[a]) continue;
    Tuple x(wa->begin(), wa->begin() + j);
    auto p = pairs_after(x);
    for (int a2 = 0; a2 < d; ++a2) {
      if (covered[a2]) continue;
      for (int b2 = 0; b2 < d; ++b2) {
        if (!p[a2 * d + b2] || !p[a * d + b2]) continue;
        Tuple t = phi.apply(*p[a2 * d + b2], *p[a * d + b2], *wa);
        out.set(j + 1, a2, swapped(std::move(t), j));
        covered[a2] = true;
        break;
      }
    }
  }
  return out;
}

WitnessFunction permute(const WitnessFunction& w, const std::vector<int>& order) {
  const int n = w.arity();
  if (static_cast<int>(order.size()) != n) throw InvalidArgument("permute: order has the wrong length");
  std::vector<int> check = order;
  std::sort(check.begin(), check.end());
  for (int i = 0; i < n; ++i) {
    if (check[i] != i) throw InvalidArgument("permute: not a permutation");
  }
  std::vector<int> cur(n);
  for (int i = 0; i < n; ++i) cur[i] = i;
  WitnessFunction out = w;
  for (int p = 0; p < n; ++p) {
    int q = static_cast<int>(std::find(cur.begin(), cur.end(), order[p]) - cur.begin());
    for (int j = q - 1; j >= p; --j) {
      out = swap_adjacent(out, j);
      std::swap(cur[j], cur[j + 1]);
    }
  }
  return out;
}

Relation materialize(const WitnessFunction& w, const Budget& budget) {
  const int n = w.arity();
  const int d = w.domain();
  if (n == 0) return w.empty() ? Relation(d, 0) : Relation(d, 0, {Tuple{}});
  checked_power(d, n, budget.assignments);
  std::vector<Tuple> out;
  Tuple x(n, 0);
  do {
    if (member(w, x)) out.push_back(x);
  } while (next_tuple(x, d));
  return Relation(d, n, std::move(out));
}

WitnessFunction union_of(const std::vector<WitnessFunction>& parts, bool verify, const Budget& budget) {
  if (parts.empty()) throw InvalidArgument("union_of: no parts");
  const int n = parts.front().arity();
  const int d = parts.front().domain();
  const MaltsevMap& phi = parts.front().phi();
  for (const auto& p : parts) {
    if (p.arity() != n || !(p.phi() == phi)) throw InvalidArgument("union_of: parts disagree on arity or phi");
  }
  if (verify) {
    std::vector<Tuple> all;
    for (const auto& p : parts) {
      Relation r = materialize(p, budget);
      all.insert(all.end(), r.tuples().begin(), r.tuples().end());
    }
    std::size_t total = all.size();
    Relation u(d, n, std::move(all));
    if (u.size() != total) throw InvalidArgument("union_of: parts are not pairwise disjoint");
    if (auto v = polymorphism_violation(phi, u, budget)) {
      throw NotClosed("union is not closed: phi maps " + format_tuple(v->u) + "," + format_tuple(v->v) + "," +
                          format_tuple(v->w) + " to " + format_tuple(v->image),
                      v->u, v->v, v->w, v->image);
    }
  }
  if (n == 0) {
    for (const auto& p : parts) {
      if (!p.empty()) return WitnessFunction::unit(phi);
    }
    return WitnessFunction(0, phi);
  }
  WitnessFunction out(n, phi);
  for (int i = 0; i < n; ++i) {
    std::vector<const Tuple*> wit(d, nullptr);
    for (int a = 0; a < d; ++a) {
      for (const auto& p : parts) {
        if (const auto& t = p.at(i, a)) {
          wit[a] = &*t;
          break;
        }
      }
    }
    std::vector<bool> done(d, false);
    for (int a = 0; a < d; ++a) {
      if (!wit[a] || done[a]) continue;
      const Tuple& x = *wit[a];
      out.set(i, a, x);
      done[a] = true;
      Tuple probe(x.begin(), x.begin() + i);
      probe.push_back(0);
      for (int b = a + 1; b < d; ++b) {
        if (!wit[b] || done[b]) continue;
        probe.back() = b;
        for (const auto& p : parts) {
          if (auto t = complete_prefix(p, probe)) {
            out.set(i, b, std::move(*t));
            done[b] = true;
            break;
          }
        }
      }
    }
  }
  return out;
}

std::optional<std::string> validity_defect(const WitnessFunction& w) {
  const int n = w.arity();
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < w.domain(); ++a) {
      const auto& t = w.at(i, a);
      if (!t) continue;
      if (static_cast<int>(t->size()) != n || (*t)[i] != a) {
        return "omega(" + std::to_string(i) + "," + std::to_string(a) + ") is not a witness";
      }
      for (int v : *t) {
        if (v < 0 || v >= w.domain()) return "omega(" + std::to_string(i) + "," + std::to_string(a) + ") leaves the domain";
      }
      if (!member(w, *t)) return "omega(" + std::to_string(i) + "," + std::to_string(a) + ") is not a member";
    }
  }
  return std::nullopt;
}

std::optional<std::string> validity_defect(const WitnessFunction& w, const Relation& rel) {
  const int n = w.arity();
  const int d = w.domain();
  if (rel.arity() != n) return std::string("arity mismatch");
  if (n == 0) {
    if (w.empty() != rel.empty()) return std::string("nullary emptiness mismatch");
    return std::nullopt;
  }
  for (int i = 0; i < n; ++i) {
    std::vector<bool> in_proj(d, false);
    std::map<Tuple, std::vector<int>> by_prefix;
    for (const Tuple& t : rel.tuples()) {
      in_proj[t[i]] = true;
      by_prefix[Tuple(t.begin(), t.begin() + i)].push_back(t[i]);
    }
    for (int a = 0; a < d; ++a) {
      const auto& t = w.at(i, a);
      std::string at = "omega(" + std::to_string(i) + "," + std::to_string(a) + ")";
      if (t.has_value() != in_proj[a]) return at + (t ? " is set outside the projection" : " is bottom inside the projection");
      if (!t) continue;
      if (static_cast<int>(t->size()) != n || (*t)[i] != a) return at + " is not a witness";
      if (!rel.contains(*t)) return at + " = " + format_tuple(*t) + " is not in the relation";
    }
    for (const auto& [prefix, vals] : by_prefix) {
      for (int a : vals) {
        for (int b : vals) {
          if (!same_prefix(*w.at(i, a), *w.at(i, b), i)) {
            return "related values " + std::to_string(a) + "," + std::to_string(b) + " at coordinate " + std::to_string(i) +
                   " have different witness prefixes";
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace cspw
