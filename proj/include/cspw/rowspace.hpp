#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cspw/cyclo.hpp"
#include "cspw/model.hpp"
#include "cspw/tuple.hpp"

namespace cspw {

using Row = std::vector<CycloValue>;

bool is_zero_row(const Row& x);
/// x_i y_j = x_j y_i for all i < j; both rows must be nonzero.
bool linearly_dependent(const Row& x, const Row& y);
/// x scaled so that its first nonzero entry is 1.
Row normalize_row(const Row& x);
/// Entrywise magnitude_sq.
Row magnitude_sq_row(const Row& x);

struct MagnitudePartition {
  std::vector<int> support;
  /// Blocks of equal magnitude_sq, in order of first index.
  std::vector<std::vector<int>> blocks;
  /// magnitude_sq shared by each block.
  std::vector<CycloValue> levels;
};

MagnitudePartition magnitude_partition(const Row& x);
/// sum_{i in T_k} x_i conj(y_i) = 0 for every magnitude block T_k.
/// Requires |x|, |y| linearly dependent.
bool block_orthogonal_pair(const Row& x, const Row& y);

/// A matrix whose rows are indexed by tuples; row i is the vector F(labels[i], *).
struct RowMatrix {
  int d = 0;
  std::vector<Tuple> labels;
  std::vector<Row> rows;
};

/// Rows of f viewed as a D^{r-1} x D matrix, labels in lexicographic order.
RowMatrix rows_of(const TableFunction& f);
/// Rows of a dense table over D^arity indexed by encode_tuple.
RowMatrix rows_of_table(const std::vector<CycloValue>& table, int d, int arity, int order);

struct RowClass {
  std::vector<Tuple> members;
  Row direction;
};

struct RowRepresentation {
  int d = 0;
  int prefix_len = 0;
  /// Ordered by least member.
  std::vector<RowClass> classes;

  /// Index of the class containing `label`, if its row is nonzero.
  std::optional<std::size_t> class_of(const Tuple& label) const;
};

RowRepresentation row_representation(const RowMatrix& m);

enum class Classification { BlockOrthogonal, NotBlockRank1, NotBlockOrthogonal };

struct ClassifyResult {
  Classification kind = Classification::BlockOrthogonal;
  /// Witness row labels on failure.
  Tuple x, y;
};

std::string to_string(Classification c);
ClassifyResult classify_function(const RowMatrix& m);
/// Witness pair of row labels whose magnitude rows are independent with a shared support.
std::optional<std::pair<Tuple, Tuple>> block_rank1_violation(const RowMatrix& m);

using LabelSet = std::vector<int>;

struct TypeOverlap {
  int level = 0;
  Tuple x, y;
  LabelSet type_x, type_y;
};

struct TypeList {
  int k = 0;
  /// levels[l] holds the distinct types of prefixes of length l.
  std::vector<std::set<LabelSet>> levels;
  bool is_type_partition = true;
  std::optional<TypeOverlap> overlap;
};

/// Types of all prefixes of class members; `perm` (if nonempty) reorders member coordinates first:
/// the permuted tuple is (t[perm[0]], t[perm[1]], ...).
TypeList type_list(const RowRepresentation& rep, const std::vector<int>& perm = {});

std::string format_row(const Row& r);
std::string format_labels(const LabelSet& s);

}  // namespace cspw
