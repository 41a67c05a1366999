#include "cspw/rowspace.hpp"

#include <algorithm>
#include <map>

#include "cspw/errors.hpp"

namespace cspw {

namespace {

struct RowLess {
  bool operator()(const Row& a, const Row& b) const {
    CycloLess less;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), less);
  }
};

std::vector<int> support_of(const Row& x) {
  std::vector<int> s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!x[i].is_zero()) s.push_back(static_cast<int>(i));
  }
  return s;
}

}  // namespace

bool is_zero_row(const Row& x) {
  return std::all_of(x.begin(), x.end(), [](const CycloValue& v) { return v.is_zero(); });
}

bool linearly_dependent(const Row& x, const Row& y) {
  if (x.size() != y.size()) throw InvalidArgument("linearly_dependent: length mismatch");
  if (is_zero_row(x) || is_zero_row(y)) throw InvalidArgument("linearly_dependent: zero vector");
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i] * y[j] != x[j] * y[i]) return false;
    }
  }
  return true;
}

Row normalize_row(const Row& x) {
  for (const auto& v : x) {
    if (!v.is_zero()) {
      CycloValue s = v.inv();
      Row out;
      out.reserve(x.size());
      for (const auto& e : x) out.push_back(e * s);
      return out;
    }
  }
  throw InvalidArgument("normalize_row: zero vector");
}

Row magnitude_sq_row(const Row& x) {
  Row out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v.magnitude_sq());
  return out;
}

MagnitudePartition magnitude_partition(const Row& x) {
  if (is_zero_row(x)) throw InvalidArgument("magnitude_partition: zero vector");
  MagnitudePartition p;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    p.support.push_back(static_cast<int>(i));
    CycloValue m = x[i].magnitude_sq();
    auto it = std::find(p.levels.begin(), p.levels.end(), m);
    if (it == p.levels.end()) {
      p.levels.push_back(m);
      p.blocks.push_back({static_cast<int>(i)});
    } else {
      p.blocks[it - p.levels.begin()].push_back(static_cast<int>(i));
    }
  }
  return p;
}

bool block_orthogonal_pair(const Row& x, const Row& y) {
  if (x.size() != y.size()) throw InvalidArgument("block_orthogonal_pair: length mismatch");
  if (is_zero_row(x) || is_zero_row(y)) throw InvalidArgument("block_orthogonal_pair: zero vector");
  if (support_of(x) != support_of(y)) throw InvalidArgument("block_orthogonal_pair: supports differ");
  if (!linearly_dependent(magnitude_sq_row(x), magnitude_sq_row(y))) {
    throw InvalidArgument("block_orthogonal_pair: magnitude patterns are not proportional");
  }
  MagnitudePartition p = magnitude_partition(x);
  for (const auto& block : p.blocks) {
    CycloValue s(x[0].order());
    for (int i : block) s += x[i] * y[i].conj();
    if (!s.is_zero()) return false;
  }
  return true;
}

RowMatrix rows_of(const TableFunction& f) {
  int d = f.domain();
  int r = f.arity();
  RowMatrix m;
  m.d = d;
  Tuple label(r - 1, 0);
  do {
    Row row;
    std::uint64_t base = encode_tuple(label, d) * static_cast<std::uint64_t>(d);
    for (int a = 0; a < d; ++a) row.push_back(f.at_code(base + a));
    m.labels.push_back(label);
    m.rows.push_back(std::move(row));
  } while (next_tuple(label, d));
  return m;
}

RowMatrix rows_of_table(const std::vector<CycloValue>& table, int d, int arity, int order) {
  if (arity < 1) throw InvalidArgument("rows_of_table: arity must be positive");
  RowMatrix m;
  m.d = d;
  std::size_t count = table.size() / d;
  for (std::size_t i = 0; i < count; ++i) {
    Row row;
    for (int a = 0; a < d; ++a) {
      const CycloValue& v = table[i * d + a];
      row.push_back(v.is_zero() ? CycloValue(order) : v);
    }
    m.labels.push_back(decode_tuple(i, d, arity - 1));
    m.rows.push_back(std::move(row));
  }
  return m;
}

std::optional<std::size_t> RowRepresentation::class_of(const Tuple& label) const {
  for (std::size_t j = 0; j < classes.size(); ++j) {
    const auto& mem = classes[j].members;
    if (std::binary_search(mem.begin(), mem.end(), label)) return j;
  }
  return std::nullopt;
}

RowRepresentation row_representation(const RowMatrix& m) {
  RowRepresentation rep;
  rep.d = m.d;
  rep.prefix_len = m.labels.empty() ? 0 : static_cast<int>(m.labels.front().size());
  std::vector<std::size_t> order(m.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m.labels[a] < m.labels[b]; });
  std::map<Row, std::size_t, RowLess> index;
  for (std::size_t i : order) {
    if (is_zero_row(m.rows[i])) continue;
    Row dir = normalize_row(m.rows[i]);
    auto [it, inserted] = index.emplace(dir, rep.classes.size());
    if (inserted) rep.classes.push_back({{}, dir});
    rep.classes[it->second].members.push_back(m.labels[i]);
  }
  return rep;
}

std::string to_string(Classification c) {
  switch (c) {
    case Classification::BlockOrthogonal:
      return "BlockOrthogonal";
    case Classification::NotBlockRank1:
      return "NotBlockRank1";
    case Classification::NotBlockOrthogonal:
      return "NotBlockOrthogonal";
  }
  return "?";
}

namespace {

struct MagnitudeGroup {
  std::vector<int> support;
  std::size_t first;  // row index of the first member
  std::map<Row, std::size_t, RowLess> directions;  // direction -> first row index
  std::vector<Row> direction_order;
};

std::vector<MagnitudeGroup> magnitude_groups(const RowMatrix& m) {
  std::vector<std::size_t> order(m.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m.labels[a] < m.labels[b]; });
  std::vector<MagnitudeGroup> groups;
  std::map<Row, std::size_t, RowLess> by_key;
  for (std::size_t i : order) {
    const Row& row = m.rows[i];
    if (is_zero_row(row)) continue;
    Row key = normalize_row(magnitude_sq_row(row));
    auto [it, inserted] = by_key.emplace(key, groups.size());
    if (inserted) groups.push_back({support_of(row), i, {}, {}});
    MagnitudeGroup& g = groups[it->second];
    Row dir = normalize_row(row);
    if (g.directions.emplace(dir, i).second) g.direction_order.push_back(dir);
  }
  return groups;
}

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j]) ++i; else ++j;
  }
  return false;
}

}  // namespace

std::optional<std::pair<Tuple, Tuple>> block_rank1_violation(const RowMatrix& m) {
  auto groups = magnitude_groups(m);
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      if (intersects(groups[a].support, groups[b].support)) {
        return std::make_pair(m.labels[groups[a].first], m.labels[groups[b].first]);
      }
    }
  }
  return std::nullopt;
}

ClassifyResult classify_function(const RowMatrix& m) {
  auto groups = magnitude_groups(m);
  ClassifyResult res;
  for (std::size_t a = 0; a < groups.size(); ++a) {
    for (std::size_t b = a + 1; b < groups.size(); ++b) {
      if (intersects(groups[a].support, groups[b].support)) {
        res.kind = Classification::NotBlockRank1;
        res.x = m.labels[groups[a].first];
        res.y = m.labels[groups[b].first];
        return res;
      }
    }
  }
  for (const auto& g : groups) {
    const auto& dirs = g.direction_order;
    for (std::size_t a = 0; a < dirs.size(); ++a) {
      for (std::size_t b = a + 1; b < dirs.size(); ++b) {
        if (!block_orthogonal_pair(dirs[a], dirs[b])) {
          res.kind = Classification::NotBlockOrthogonal;
          res.x = m.labels[g.directions.at(dirs[a])];
          res.y = m.labels[g.directions.at(dirs[b])];
          return res;
        }
      }
    }
  }
  return res;
}

TypeList type_list(const RowRepresentation& rep, const std::vector<int>& perm) {
  TypeList tl;
  tl.k = static_cast<int>(rep.classes.size());
  int len = rep.prefix_len;
  if (!perm.empty() && static_cast<int>(perm.size()) != len) throw InvalidArgument("type_list: permutation length mismatch");
  // types[l] maps a prefix of length l to its label set.
  std::vector<std::map<Tuple, LabelSet>> types(len + 1);
  for (std::size_t j = 0; j < rep.classes.size(); ++j) {
    for (const Tuple& t : rep.classes[j].members) {
      Tuple p(len);
      for (int i = 0; i < len; ++i) p[i] = perm.empty() ? t[i] : t[perm[i]];
      for (int l = 0; l <= len; ++l) {
        LabelSet& s = types[l][Tuple(p.begin(), p.begin() + l)];
        if (s.empty() || s.back() != static_cast<int>(j)) s.push_back(static_cast<int>(j));
      }
    }
  }
  tl.levels.resize(len + 1);
  for (int l = 0; l <= len; ++l) {
    // label -> (prefix, type) of the first prefix whose type contains it
    std::map<int, std::pair<const Tuple*, const LabelSet*>> owner;
    for (const auto& [prefix, s] : types[l]) {
      tl.levels[l].insert(s);
      for (int lab : s) {
        auto [it, inserted] = owner.emplace(lab, std::make_pair(&prefix, &s));
        if (!inserted && *it->second.second != s && !tl.overlap) {
          tl.is_type_partition = false;
          tl.overlap = TypeOverlap{l, *it->second.first, prefix, *it->second.second, s};
        }
      }
    }
  }
  return tl;
}

std::string format_row(const Row& r) {
  std::string out = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ",";
    out += r[i].to_string();
  }
  return out + ")";
}

std::string format_labels(const LabelSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

}  // namespace cspw
