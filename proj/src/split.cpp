#include "cspw/split.hpp"

#include <map>

#include "cspw/errors.hpp"

namespace cspw {

std::uint64_t split_query_budget(int d, int n) {
  std::uint64_t dd = static_cast<std::uint64_t>(d), nn = static_cast<std::uint64_t>(n);
  return (dd * nn + 1) * (dd + 2) * nn;
}

namespace {

/// One coordinate order of the relation together with its type list.
struct View {
  WitnessFunction w;
  std::vector<int> order;  // view coordinate j is original coordinate order[j]
  TypeListState state;
  std::vector<std::uint32_t> first_types;  // type of the length-1 prefix (a), 0 when unreachable
};

class Splitter {
 public:
  Splitter(const WitnessFunction& w, const Labeler& labeler)
      : labeler_(labeler), d_(w.domain()), n_(w.arity()), budget_(split_query_budget(d_, n_)) {
    if (d_ > 31) throw Unsupported("split supports domains of size at most 31");
  }

  SplitResult run(const WitnessFunction& w) {
    if (n_ == 0) {
      query_original(Tuple{});
      SplitResult r;
      r.parts = 1;
      r.labels = labels_;
      r.witnesses.push_back(WitnessFunction::unit(w.phi()));
      r.queries = queries_;
      r.root_type = 1;
      return r;
    }
    for (int i = 0; i < n_; ++i) {
      std::vector<int> order{i};
      for (int j = 0; j < n_; ++j) {
        if (j != i) order.push_back(j);
      }
      View v{i == 0 ? w : permute(w, order), order, {}, std::vector<std::uint32_t>(d_, 0)};
      v.state.sets.resize(n_ + 1);
      views_.push_back(std::move(v));
    }
    std::vector<std::uint32_t> roots;
    for (View& v : views_) roots.push_back(compute_type(v, Tuple{}));
    const int s = static_cast<int>(labels_.size());
    const std::uint32_t all = s == 32 ? 0xffffffffu : ((1u << s) - 1);
    for (std::uint32_t r : roots) {
      if (r != all) throw TypePartitionViolation("the empty prefix does not reach every part in every coordinate order");
    }
    if (s > d_) throw TooManyParts(std::to_string(s) + " part labels observed, domain size is " + std::to_string(d_));
    SplitResult res;
    res.parts = s;
    res.root_type = roots.front();
    res.identity_state = views_.front().state;
    for (int k = 0; k < s; ++k) res.witnesses.push_back(rebuild(k, w.phi()));
    res.labels = labels_;
    res.queries = queries_;
    return res;
  }

 private:
  int query_original(const Tuple& t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    if (++queries_ > budget_) {
      throw QueryBudgetExceeded("split exceeded its query budget of " + std::to_string(budget_));
    }
    std::int64_t label = labeler_(t);
    int idx = -1;
    for (std::size_t j = 0; j < labels_.size(); ++j) {
      if (labels_[j] == label) idx = static_cast<int>(j);
    }
    if (idx < 0) {
      // More than d labels is reported after the type checks; the mask width is the hard stop.
      if (labels_.size() == 32) throw TooManyParts("more than 32 part labels observed");
      labels_.push_back(label);
      idx = static_cast<int>(labels_.size()) - 1;
    }
    cache_.emplace(t, idx);
    return idx;
  }

  int query(const View& v, const Tuple& t) {
    Tuple orig(n_);
    for (int j = 0; j < n_; ++j) orig[v.order[j]] = t[j];
    return query_original(orig);
  }

  Tuple to_original(const View& v, const Tuple& t) const {
    Tuple orig(n_);
    for (int j = 0; j < n_; ++j) orig[v.order[j]] = t[j];
    return orig;
  }

  /// The unique stored type at `level` containing label k, or 0 when none is stored.
  static std::uint32_t containing(const View& v, int level, int k) {
    std::uint32_t found = 0;
    for (std::uint32_t u : v.state.sets[level]) {
      if (u & (1u << k)) {
        if (found) throw TypePartitionViolation("label matches more than one stored type at prefix length " + std::to_string(level));
        found = u;
      }
    }
    return found;
  }

  // ComputeType: the type of x, filling in missing types level by level.
  std::uint32_t compute_type(View& v, const Tuple& x) {
    const int l = static_cast<int>(x.size());
    if (l == n_) {
      int k = query(v, x);
      std::uint32_t u = 1u << k;
      if (!containing(v, n_, k)) v.state.sets[n_].push_back(u);
      return u;
    }
    auto y = complete_prefix(v.w, x);
    if (!y) throw std::logic_error("compute_type called on a prefix outside the projection");
    int k = query(v, *y);
    if (std::uint32_t u = containing(v, l, k)) return u;
    std::uint32_t total = 0;
    Tuple xa = x;
    xa.push_back(0);
    for (int a = 0; a < d_; ++a) {
      xa.back() = a;
      auto z = complete_prefix(v.w, xa);
      if (!z) continue;
      int k2 = query(v, *z);
      std::uint32_t ua = containing(v, l + 1, k2);
      if (!ua) ua = compute_type(v, xa);
      if (!(ua & (1u << k2))) throw TypePartitionViolation("computed type misses the label of its own extension");
      if (l == 0) v.first_types[a] = ua;
      total |= ua;
    }
    if (!(total & (1u << k))) throw TypePartitionViolation("computed type misses the label of its own extension");
    for (std::uint32_t u : v.state.sets[l]) {
      if ((u & total) && u != total) {
        throw TypePartitionViolation("types at prefix length " + std::to_string(l) + " overlap without being equal");
      }
    }
    v.state.sets[l].push_back(total);
    return total;
  }

  // Lookup of a stored type containing the label.
  std::uint32_t type_of(View& v, const Tuple& x) {
    auto y = complete_prefix(v.w, x);
    if (!y) throw std::logic_error("type_of called on a prefix outside the projection");
    int k = query(v, *y);
    std::uint32_t u = containing(v, static_cast<int>(x.size()), k);
    if (!u) throw TypePartitionViolation("no stored type contains an observed label");
    return u;
  }

  // FindInPart: extends x (with k in type(x)) to a member of part k.
  Tuple find_in_part(View& v, Tuple x, int k) {
    while (static_cast<int>(x.size()) < n_) {
      bool found = false;
      x.push_back(0);
      for (int b = 0; b < d_; ++b) {
        x.back() = b;
        if (!complete_prefix(v.w, x)) continue;
        if (type_of(v, x) & (1u << k)) {
          found = true;
          break;
        }
      }
      if (!found) throw TypePartitionViolation("no extension of a prefix stays inside its part");
    }
    if (query(v, x) != k) throw TypePartitionViolation("reconstructed tuple carries a different label");
    return to_original(v, x);
  }

  WitnessFunction rebuild(int k, const MaltsevMap& phi) {
    WitnessFunction out(n_, phi);
    View& base = views_.front();
    for (int i = 0; i < n_; ++i) {
      View& vi = views_[i];
      std::vector<bool> done(d_, false);
      for (int a = 0; a < d_; ++a) {
        if (done[a] || !(vi.first_types[a] & (1u << k))) continue;
        Tuple x = find_in_part(vi, Tuple{a}, k);
        done[a] = true;
        Tuple probe(x.begin(), x.begin() + i);
        probe.push_back(0);
        out.set(i, a, std::move(x));
        for (int b = a + 1; b < d_; ++b) {
          if (done[b] || !(vi.first_types[b] & (1u << k))) continue;
          probe.back() = b;
          if (!complete_prefix(base.w, probe)) continue;
          if (!(type_of(base, probe) & (1u << k))) continue;
          out.set(i, b, find_in_part(base, probe, k));
          done[b] = true;
        }
      }
    }
    return out;
  }

  const Labeler& labeler_;
  int d_;
  int n_;
  std::uint64_t budget_;
  std::uint64_t queries_ = 0;
  std::map<Tuple, int> cache_;
  std::vector<std::int64_t> labels_;
  std::vector<View> views_;
};

}  // namespace

SplitResult split(const WitnessFunction& w, const Labeler& labeler) {
  if (w.empty()) throw InvalidArgument("split: the relation is empty");
  return Splitter(w, labeler).run(w);
}

}  // namespace cspw
