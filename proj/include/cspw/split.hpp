#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "cspw/witness.hpp"

namespace cspw {

/// Black-box part oracle: maps a tuple of the relation to an opaque part label.
using Labeler = std::function<std::int64_t(const Tuple&)>;

/// The partial type list (S_0, ..., S_n); each type is a bitmask over part indices.
struct TypeListState {
  std::vector<std::vector<std::uint32_t>> sets;
};

struct SplitResult {
  int parts = 0;
  /// External label of each part, in first-seen order.
  std::vector<std::int64_t> labels;
  std::vector<WitnessFunction> witnesses;
  /// Distinct labeler invocations.
  std::uint64_t queries = 0;
  /// ComputeType of the empty prefix in the original coordinate order.
  std::uint32_t root_type = 0;
  /// The type list built for the original coordinate order.
  TypeListState identity_state;
};

/// (d*n + 1) * (d + 2) * n.
std::uint64_t split_query_budget(int d, int n);

/// Witness functions of the parts of a nonempty relation, as labeled by `labeler`.
/// Throws TypePartitionViolation, TooManyParts, or QueryBudgetExceeded.
SplitResult split(const WitnessFunction& w, const Labeler& labeler);

}  // namespace cspw
