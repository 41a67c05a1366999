#include "cspw/maltsev.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_set>

#include "cspw/errors.hpp"

namespace cspw {

namespace {

/// Membership over tuple codes; dense when D^n is small.
class CodeSet {
 public:
  CodeSet(int d, int n) {
    std::uint64_t total = 1;
    dense_ok_ = true;
    for (int i = 0; i < n; ++i) {
      total *= static_cast<std::uint64_t>(d);
      if (total > (std::uint64_t{1} << 24)) {
        dense_ok_ = false;
        break;
      }
    }
    if (dense_ok_) dense_.assign(total, 0);
  }
  bool contains(std::uint64_t c) const { return dense_ok_ ? dense_[c] != 0 : sparse_.count(c) != 0; }
  bool insert(std::uint64_t c) {
    if (dense_ok_) {
      if (dense_[c]) return false;
      dense_[c] = 1;
      return true;
    }
    return sparse_.insert(c).second;
  }

 private:
  bool dense_ok_;
  std::vector<std::uint8_t> dense_;
  std::unordered_set<std::uint64_t> sparse_;
};

std::uint64_t image_code(const MaltsevMap& phi, const Tuple& u, const Tuple& v, const Tuple& w) {
  const std::uint64_t d = static_cast<std::uint64_t>(phi.domain());
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < u.size(); ++i) code = code * d + static_cast<std::uint64_t>(phi(u[i], v[i], w[i]));
  return code;
}

void check_triples(std::size_t size, const Budget& budget) {
  long double cube = static_cast<long double>(size) * size * size;
  if (cube > static_cast<long double>(budget.triples)) {
    throw BudgetExceeded("relation of size " + std::to_string(size) + " exceeds the triple budget");
  }
}

}  // namespace

Relation::Relation(int d, int arity) : d_(d), arity_(arity) {
  if (d < 1) throw InvalidArgument("relation domain must be positive");
  if (arity < 0) throw InvalidArgument("relation arity must be non-negative");
}

Relation::Relation(int d, int arity, std::vector<Tuple> tuples) : Relation(d, arity) {
  for (const Tuple& t : tuples) {
    if (static_cast<int>(t.size()) != arity) throw InvalidArgument("relation tuple has wrong length");
    for (int a : t) {
      if (a < 0 || a >= d) throw InvalidArgument("relation tuple has value outside the domain");
    }
  }
  std::sort(tuples.begin(), tuples.end());
  tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
  tuples_ = std::move(tuples);
}

Relation Relation::full(int d, int arity) {
  std::vector<Tuple> all;
  Tuple t(arity, 0);
  do {
    all.push_back(t);
  } while (next_tuple(t, d));
  return Relation(d, arity, std::move(all));
}

bool Relation::contains(const Tuple& t) const { return std::binary_search(tuples_.begin(), tuples_.end(), t); }

std::string format_relation(const Relation& r) {
  std::string out = "{";
  for (std::size_t i = 0; i < r.tuples().size(); ++i) {
    if (i) out += ",";
    out += format_tuple(r.tuples()[i]);
  }
  return out + "}";
}

bool is_maltsev(int d, const std::vector<int>& table) {
  if (d < 1 || table.size() != static_cast<std::size_t>(d) * d * d) return false;
  for (int v : table) {
    if (v < 0 || v >= d) return false;
  }
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      if (table[(a * d + b) * d + b] != a) return false;
      if (table[(b * d + b) * d + a] != a) return false;
    }
  }
  return true;
}

MaltsevMap::MaltsevMap(int d, std::vector<int> table) : d_(d), table_(std::move(table)) {
  if (!is_maltsev(d_, table_)) throw InvalidArgument("table is not a Mal'tsev operation");
}

MaltsevMap MaltsevMap::xor3() { return affine(2); }

MaltsevMap MaltsevMap::affine(int d) {
  std::vector<int> t(static_cast<std::size_t>(d) * d * d);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) t[(a * d + b) * d + c] = ((a - b + c) % d + d) % d;
    }
  }
  return MaltsevMap(d, std::move(t));
}

Tuple MaltsevMap::apply(const Tuple& u, const Tuple& v, const Tuple& w) const {
  Tuple out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = (*this)(u[i], v[i], w[i]);
  return out;
}

std::optional<PolymorphismViolation> polymorphism_violation(const MaltsevMap& phi, const Relation& rel,
                                                            const Budget& budget) {
  if (phi.domain() != rel.domain()) throw InvalidArgument("domain mismatch between relation and operation");
  const auto& ts = rel.tuples();
  check_triples(ts.size(), budget);
  const int d = rel.domain();
  CodeSet set(d, rel.arity());
  for (const Tuple& t : ts) set.insert(encode_tuple(t, d));
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = 0; j < ts.size(); ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < ts.size(); ++k) {
        if (k == j) continue;
        if (!set.contains(image_code(phi, ts[i], ts[j], ts[k]))) {
          return PolymorphismViolation{ts[i], ts[j], ts[k], phi.apply(ts[i], ts[j], ts[k])};
        }
      }
    }
  }
  return std::nullopt;
}

bool is_polymorphism(const MaltsevMap& phi, const Relation& rel, const Budget& budget) {
  return !polymorphism_violation(phi, rel, budget).has_value();
}

Relation closure(const Relation& rel, const MaltsevMap& phi, const Budget& budget) {
  if (phi.domain() != rel.domain()) throw InvalidArgument("domain mismatch between relation and operation");
  const int d = rel.domain();
  const int n = rel.arity();
  long double full = std::pow(static_cast<long double>(d), n);
  CodeSet set(d, n);
  std::vector<Tuple> items = rel.tuples();
  for (const Tuple& t : items) set.insert(encode_tuple(t, d));
  long double spent = 0;
  // Semi-naive fixpoint: when items[k] is processed, every triple with maximum index k is tried.
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (static_cast<long double>(items.size()) >= full) break;
    spent += 3.0L * (k + 1) * (k + 1);
    if (spent > static_cast<long double>(budget.triples)) throw BudgetExceeded("closure exceeds the triple budget");
    auto add = [&](const Tuple& u, const Tuple& v, const Tuple& w) {
      std::uint64_t c = image_code(phi, u, v, w);
      if (set.insert(c)) items.push_back(decode_tuple(c, d, n));
    };
    for (std::size_t a = 0; a <= k; ++a) {
      for (std::size_t b = 0; b <= k; ++b) {
        add(items[k], items[a], items[b]);
        if (a < k) add(items[a], items[k], items[b]);
        if (a < k && b < k) add(items[a], items[b], items[k]);
      }
    }
  }
  return Relation(d, n, std::move(items));
}

std::optional<MaltsevMap> search_shared_maltsev(const std::vector<Relation>& relations, int d,
                                                const std::vector<MaltsevMap>* candidates, const Budget& budget) {
  for (const auto& r : relations) {
    if (r.domain() != d) throw InvalidArgument("search_shared_maltsev: relation domain mismatch");
    check_triples(r.size(), budget);
  }
  std::vector<CodeSet> sets;
  for (const auto& r : relations) {
    sets.emplace_back(d, r.arity());
    for (const Tuple& t : r.tuples()) sets.back().insert(encode_tuple(t, d));
  }
  struct Killer {
    std::size_t rel, i, j, k;
  };
  std::deque<Killer> killers;

  auto passes = [&](const MaltsevMap& phi) {
    for (const Killer& kl : killers) {
      const auto& ts = relations[kl.rel].tuples();
      if (!sets[kl.rel].contains(image_code(phi, ts[kl.i], ts[kl.j], ts[kl.k]))) return false;
    }
    for (std::size_t r = 0; r < relations.size(); ++r) {
      const auto& ts = relations[r].tuples();
      for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = 0; j < ts.size(); ++j) {
          if (j == i) continue;
          for (std::size_t k = 0; k < ts.size(); ++k) {
            if (k == j) continue;
            if (!sets[r].contains(image_code(phi, ts[i], ts[j], ts[k]))) {
              killers.push_front({r, i, j, k});
              if (killers.size() > 64) killers.pop_back();
              return false;
            }
          }
        }
      }
    }
    return true;
  };

  if (candidates != nullptr) {
    std::vector<const MaltsevMap*> sorted;
    for (const auto& c : *candidates) {
      if (c.domain() != d) throw InvalidArgument("search_shared_maltsev: candidate domain mismatch");
      sorted.push_back(&c);
    }
    std::sort(sorted.begin(), sorted.end(), [](const MaltsevMap* a, const MaltsevMap* b) { return a->table() < b->table(); });
    for (const MaltsevMap* c : sorted) {
      if (passes(*c)) return *c;
    }
    return std::nullopt;
  }
  if (d > 3) throw Unsupported("Mal'tsev search enumerates tables only for d <= 3; supply candidates");

  std::vector<int> table(static_cast<std::size_t>(d) * d * d, 0);
  std::vector<std::size_t> free_pos;
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      for (int c = 0; c < d; ++c) {
        std::size_t idx = (a * d + b) * d + c;
        if (b == c) {
          table[idx] = a;
        } else if (a == b) {
          table[idx] = c;
        } else {
          free_pos.push_back(idx);
        }
      }
    }
  }
  while (true) {
    MaltsevMap phi(d, table);
    if (passes(phi)) return phi;
    // Odometer over free entries; the last free entry varies fastest, giving lexicographic order.
    int p = static_cast<int>(free_pos.size()) - 1;
    while (p >= 0 && table[free_pos[p]] == d - 1) {
      table[free_pos[p]] = 0;
      --p;
    }
    if (p < 0) break;
    ++table[free_pos[p]];
  }
  return std::nullopt;
}

}  // namespace cspw
