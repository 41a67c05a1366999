#include "cspw/pipeline.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "cspw/errors.hpp"
#include "cspw/split.hpp"

namespace cspw {

std::string to_string(Condition c) {
  switch (c) {
    case Condition::BlockOrthogonality: return "BlockOrthogonality";
    case Condition::TypePartition: return "TypePartition";
    case Condition::Maltsev: return "Maltsev";
  }
  return "?";
}

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Verified: return "verified";
    case Mode::Optimistic: return "optimistic";
    case Mode::Auto: return "auto";
  }
  return "?";
}

const ConditionStatus& ConditionReport::status(Condition c) const {
  switch (c) {
    case Condition::BlockOrthogonality: return block_orthogonality;
    case Condition::TypePartition: return type_partition;
    case Condition::Maltsev: return maltsev;
  }
  return maltsev;
}

std::optional<Condition> ConditionReport::first_failure() const {
  for (Condition c : {Condition::BlockOrthogonality, Condition::TypePartition, Condition::Maltsev}) {
    if (!status(c).ok) return c;
  }
  return std::nullopt;
}

namespace {

struct RowLess {
  bool operator()(const Row& a, const Row& b) const {
    CycloLess less;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), less);
  }
};

Relation support_relation(const std::vector<CycloValue>& table, int d, int t) {
  std::vector<Tuple> tuples;
  for (std::uint64_t code = 0; code < table.size(); ++code) {
    if (!table[code].is_zero()) tuples.push_back(decode_tuple(code, d, t));
  }
  return Relation(d, t, std::move(tuples));
}

Relation omega_from_rep(const RowRepresentation& rep, int d) {
  std::vector<Tuple> tuples;
  for (const RowClass& c : rep.classes) {
    for (const Tuple& x : c.members) {
      for (const Tuple& y : c.members) {
        Tuple xy = x;
        xy.insert(xy.end(), y.begin(), y.end());
        tuples.push_back(std::move(xy));
      }
    }
  }
  return Relation(d, 2 * rep.prefix_len, std::move(tuples));
}

std::string triple_certificate(const std::string& rel, const Tuple& u, const Tuple& v, const Tuple& w,
                               const Tuple& image) {
  return "relation=" + rel + " u=" + format_tuple(u) + " v=" + format_tuple(v) + " w=" + format_tuple(w) +
         " image=" + format_tuple(image);
}

Tuple join(const Tuple& a, const Tuple& b) {
  Tuple out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// Omega is closed under phi iff for each class triple (A,B,C), phi(A,B,C) lands in a single class.
std::optional<std::string> omega_class_violation(const RowRepresentation& rep, const MaltsevMap& phi, int d,
                                                 const Budget& budget) {
  std::uint64_t size = 0;
  for (const RowClass& c : rep.classes) size += c.members.size();
  if (size > 0) {
    long double triples = static_cast<long double>(size) * size * size;
    if (triples > static_cast<long double>(budget.triples)) {
      throw BudgetExceeded("Omega closure check needs " + std::to_string(size) + "^3 evaluations");
    }
  }
  std::map<std::uint64_t, int> class_of;
  for (std::size_t j = 0; j < rep.classes.size(); ++j) {
    for (const Tuple& x : rep.classes[j].members) class_of[encode_tuple(x, d)] = static_cast<int>(j);
  }
  for (const RowClass& A : rep.classes) {
    for (const RowClass& B : rep.classes) {
      for (const RowClass& C : rep.classes) {
        const Tuple *fx = nullptr, *fy = nullptr, *fz = nullptr;
        int cls = -1;
        for (const Tuple& x : A.members) {
          for (const Tuple& y : B.members) {
            for (const Tuple& z : C.members) {
              Tuple img = phi.apply(x, y, z);
              auto it = class_of.find(encode_tuple(img, d));
              if (it == class_of.end()) {
                return triple_certificate("Omega", join(x, x), join(y, y), join(z, z), join(img, img));
              }
              if (cls < 0) {
                cls = it->second;
                fx = &x, fy = &y, fz = &z;
              } else if (it->second != cls) {
                return triple_certificate("Omega", join(*fx, x), join(*fy, y), join(*fz, z),
                                          join(phi.apply(*fx, *fy, *fz), img));
              }
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<std::vector<int>> permutations_for(int m, const CheckOptions& opts) {
  std::vector<int> id(m);
  std::iota(id.begin(), id.end(), 0);
  std::uint64_t fact = 1;
  bool exhaustive = true;
  for (int k = 2; k <= m; ++k) {
    fact *= static_cast<std::uint64_t>(k);
    if (fact > opts.permutation_cap) {
      exhaustive = false;
      break;
    }
  }
  std::vector<std::vector<int>> out;
  if (exhaustive) {
    std::vector<int> p = id;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
  }
  out.push_back(id);
  std::mt19937_64 rng(opts.seed);
  for (int s = 0; s < opts.permutation_samples; ++s) {
    std::vector<int> p = id;
    std::shuffle(p.begin(), p.end(), rng);
    out.push_back(std::move(p));
  }
  return out;
}

void fail(ConditionStatus& st, int t, std::string cert) {
  if (!st.ok) return;
  st.ok = false;
  st.level = t;
  st.certificate = std::move(cert);
}

using LevelIndex = std::vector<const LevelData*>;

CycloValue compute_F_impl(const LevelIndex& by_t, const Instance& inst, int t, Tuple a) {
  const int n = inst.num_vars();
  const int d = inst.domain();
  CycloValue scale = CycloValue::one(inst.order());
  // Iterative form of the ComputeF recursion.
  while (t < n) {
    const LevelData* next = by_t[t + 1];
    if (!next) return CycloValue::zero(inst.order());
    const LevelPair* hit = nullptr;
    for (const LevelPair& p : next->pairs) {
      if (member(p.omega, a)) {
        hit = &p;
        break;
      }
    }
    if (!hit) return CycloValue::zero(inst.order());
    int first = -1;
    CycloValue sum = CycloValue::zero(inst.order());
    for (int b = 0; b < d; ++b) {
      if (hit->v[b].is_zero()) continue;
      if (first < 0) first = b;
      sum += hit->v[b];
    }
    scale *= sum;
    if (scale.is_zero()) return scale;
    a.push_back(first);
    ++t;
  }
  return scale * eval_instance(inst, a);
}

LevelIndex index_levels(const std::vector<LevelData>& levels, int n) {
  LevelIndex by_t(static_cast<std::size_t>(n) + 2, nullptr);
  for (const LevelData& l : levels) {
    if (l.t >= 2 && l.t <= n) by_t[l.t] = &l;
  }
  return by_t;
}

}  // namespace

WitnessFunction boolean_relation_witness(const Instance& inst, const MaltsevMap& phi, bool verify,
                                         const Budget& budget) {
  const int n = inst.num_vars();
  const int d = inst.domain();
  checked_power(d, n, budget.assignments);
  std::vector<Tuple> tuples;
  Tuple x(n, 0);
  do {
    if (!eval_instance(inst, x).is_zero()) tuples.push_back(x);
  } while (next_tuple(x, d));
  return build_witness_enumerative(Relation(d, n, std::move(tuples)), phi, verify, budget);
}

Relation boolean_marginal_relation(const Instance& inst, int t, const Budget& budget) {
  auto tables = marginal_tables(inst, budget);
  if (t < 0 || t > inst.num_vars()) throw InvalidArgument("level out of range");
  return support_relation(tables[t], inst.domain(), t);
}

Relation omega_relation(const Instance& inst, int t, const Budget& budget) {
  if (t < 1 || t > inst.num_vars()) throw InvalidArgument("level out of range");
  auto tables = marginal_tables(inst, budget);
  auto rep = row_representation(rows_of_table(tables[t], inst.domain(), t, inst.order()));
  return omega_from_rep(rep, inst.domain());
}

ConditionReport check_instance_conditions(const Instance& inst, const MaltsevMap& phi, const CheckOptions& opts) {
  const int n = inst.num_vars();
  const int d = inst.domain();
  if (phi.domain() != d) throw InvalidArgument("domain mismatch between instance and operation");
  ConditionReport rep;
  rep.block_orthogonality.checked = rep.type_partition.checked = rep.maltsev.checked = true;
  if (n < 2) return rep;
  auto tables = marginal_tables(inst, opts.budget);
  for (int t = 2; t <= n; ++t) {
    RowMatrix m = rows_of_table(tables[t], d, t, inst.order());
    ClassifyResult cr = classify_function(m);
    if (cr.kind != Classification::BlockOrthogonal) {
      fail(rep.block_orthogonality, t,
           to_string(cr.kind) + " x=" + format_tuple(cr.x) + " y=" + format_tuple(cr.y) + " row_x=" +
               format_row(m.rows[encode_tuple(cr.x, d)]) + " row_y=" + format_row(m.rows[encode_tuple(cr.y, d)]));
    }
    RowRepresentation rr = row_representation(m);
    if (rep.type_partition.ok) {
      for (const auto& perm : permutations_for(t - 1, opts)) {
        TypeList tl = type_list(rr, perm);
        if (tl.is_type_partition) continue;
        const TypeOverlap& o = *tl.overlap;
        fail(rep.type_partition, t,
             "perm=" + format_tuple(perm) + " prefix_len=" + std::to_string(o.level) + " x=" + format_tuple(o.x) +
                 " y=" + format_tuple(o.y) + " type_x=" + format_labels(o.type_x) +
                 " type_y=" + format_labels(o.type_y));
        break;
      }
    }
    if (rep.maltsev.ok) {
      Relation boolean = support_relation(tables[t], d, t);
      if (auto v = polymorphism_violation(phi, boolean, opts.budget)) {
        fail(rep.maltsev, t, triple_certificate("Boolean", v->u, v->v, v->w, v->image));
      } else if (auto cert = omega_class_violation(rr, phi, d, opts.budget)) {
        fail(rep.maltsev, t, *cert);
      }
    }
  }
  return rep;
}

std::vector<LevelData> run_levels(const Instance& inst, const MaltsevMap& phi, bool verify, const Budget& budget,
                                  std::uint64_t* queries) {
  const int n = inst.num_vars();
  const int d = inst.domain();
  std::vector<LevelData> out;
  if (n < 2) return out;
  LevelIndex by_t(static_cast<std::size_t>(n) + 2, nullptr);
  std::vector<LevelData> desc;
  desc.reserve(n);
  WitnessFunction Phi = boolean_relation_witness(inst, phi, verify, budget);
  for (int l = n; l >= 2; --l) {
    if (l < n) {
      std::vector<WitnessFunction> parts;
      for (const LevelPair& p : desc.back().pairs) {
        CycloValue sum = CycloValue::zero(inst.order());
        for (const CycloValue& c : p.v) sum += c;
        if (!sum.is_zero()) parts.push_back(p.omega);
      }
      if (parts.empty()) break;
      Phi = union_of(parts, verify, budget);
    } else if (Phi.empty()) {
      break;
    }
    WitnessFunction Psi = project_prefix(Phi, l - 1);
    std::map<Row, std::int64_t, RowLess> ids;
    std::vector<Row> dirs;
    Labeler labeler = [&](const Tuple& x) -> std::int64_t {
      Row row;
      Tuple xb = x;
      xb.push_back(0);
      for (int b = 0; b < d; ++b) {
        xb.back() = b;
        row.push_back(compute_F_impl(by_t, inst, l, xb));
      }
      if (is_zero_row(row)) throw std::logic_error("zero row on a prefix of the support");
      Row v = normalize_row(row);
      auto [it, inserted] = ids.emplace(v, static_cast<std::int64_t>(dirs.size()));
      if (inserted) dirs.push_back(v);
      return it->second;
    };
    SplitResult sr = split(Psi, labeler);
    if (queries) *queries += sr.queries;
    LevelData ld;
    ld.t = l;
    for (int k = 0; k < sr.parts; ++k) ld.pairs.push_back({dirs[sr.labels[k]], std::move(sr.witnesses[k])});
    desc.push_back(std::move(ld));
    by_t[l] = &desc.back();
  }
  out.assign(desc.rbegin(), desc.rend());
  return out;
}

CycloValue compute_F(const std::vector<LevelData>& levels, const Instance& inst, int t, const Tuple& a) {
  const int n = inst.num_vars();
  if (t < 1 || t > n || static_cast<int>(a.size()) != t) throw InvalidArgument("compute_F: bad level or tuple");
  return compute_F_impl(index_levels(levels, n), inst, t, a);
}

namespace {

PipelineResult run_pipeline(const Instance& inst, const MaltsevMap& phi, Mode mode, const CheckOptions& opts) {
  PipelineResult res;
  res.mode = mode;
  const int n = inst.num_vars();
  const int d = inst.domain();
  if (mode == Mode::Verified) {
    res.report = check_instance_conditions(inst, phi, opts);
    if (auto c = res.report.first_failure()) {
      const ConditionStatus& st = res.report.status(*c);
      res.violation = Violation{to_string(*c), st.level, st.certificate};
      return res;
    }
  }
  if (n == 0) {
    res.Z = eval_instance(inst, Tuple{});
    return res;
  }
  if (n == 1) {
    CycloValue z = CycloValue::zero(inst.order());
    for (int a = 0; a < d; ++a) z += eval_instance(inst, Tuple{a});
    res.Z = z;
    return res;
  }
  try {
    res.levels = run_levels(inst, phi, mode == Mode::Verified, opts.budget, &res.queries);
  } catch (const TypePartitionViolation& e) {
    res.violation = Violation{"TypePartition", 0, e.what()};
  } catch (const TooManyParts& e) {
    res.violation = Violation{"TooManyParts", 0, e.what()};
  } catch (const QueryBudgetExceeded& e) {
    res.violation = Violation{"QueryBudget", 0, e.what()};
  } catch (const NotClosed& e) {
    res.violation = Violation{"Maltsev", 0, triple_certificate("union", e.u, e.v, e.w, e.image)};
  } catch (const NotPolymorphism& e) {
    res.violation = Violation{"Maltsev", n, e.what()};
  }
  if (res.violation) {
    res.levels.clear();
    return res;
  }
  if (static_cast<int>(res.levels.size()) < n - 1) {
    res.Z = CycloValue::zero(inst.order());
    return res;
  }
  LevelIndex by_t = index_levels(res.levels, n);
  CycloValue z = CycloValue::zero(inst.order());
  for (int a = 0; a < d; ++a) z += compute_F_impl(by_t, inst, 1, Tuple{a});
  res.Z = z;
  return res;
}

}  // namespace

PipelineResult solve(const Instance& inst, const MaltsevMap& phi, Mode mode, const CheckOptions& opts) {
  if (phi.domain() != inst.domain()) throw InvalidArgument("domain mismatch between instance and operation");
  if (mode != Mode::Auto) return run_pipeline(inst, phi, mode, opts);
  try {
    return run_pipeline(inst, phi, Mode::Verified, opts);
  } catch (const BudgetExceeded&) {
    return run_pipeline(inst, phi, Mode::Optimistic, opts);
  }
}

std::vector<Relation> condition_relations(const Instance& inst, const Budget& budget) {
  const int n = inst.num_vars();
  const int d = inst.domain();
  auto tables = marginal_tables(inst, budget);
  std::vector<Relation> out;
  for (int t = 1; t <= n; ++t) out.push_back(support_relation(tables[t], d, t));
  for (int t = 2; t <= n; ++t) {
    out.push_back(omega_from_rep(row_representation(rows_of_table(tables[t], d, t, inst.order())), d));
  }
  return out;
}

std::optional<MaltsevMap> search_phi_for_instance(const Instance& inst, const Budget& budget) {
  return search_shared_maltsev(condition_relations(inst, budget), inst.domain(), nullptr, budget);
}

}  // namespace cspw
