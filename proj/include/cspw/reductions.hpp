#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cspw/budget.hpp"
#include "cspw/cyclo.hpp"
#include "cspw/model.hpp"
#include "cspw/rowspace.hpp"

namespace cspw {

using ValueSet = std::set<CycloValue, CycloLess>;

/// All products of exactly m factors drawn (with repetition) from im.
ValueSet candidate_value_set(const ValueSet& im, int m, const Budget& budget = {});

using ZOracle = std::function<CycloValue(const Instance&)>;

/// Value counts of F_I recovered from Z(I_1), ..., Z(I_s) by an exact Vandermonde solve.
/// Only values with a positive count appear; 0 is keyed by CycloValue::zero(order).
ValueHistogram count_via_vandermonde(const Instance& inst, const ZOracle& z_oracle, const Budget& budget = {});

/// Least K with F(x)^K > 0 on the support; throws Unsupported on non-pure values.
int order_of(const TableFunction& f);

/// Rational-magnitude purification: the i-th prime occurring in any magnitude is sent to the i-th prime.
std::vector<TableFunction> purify(const std::vector<TableFunction>& fns);

/// Sum_i x_i^{sK+1} y_i^{rK-1}.
CycloValue power_sum(const Row& x, const Row& y, int K, int s, int r);

struct Graph {
  int vertices = 0;
  bool directed = false;
  std::vector<std::pair<int, int>> edges;
};

/// A square matrix indexed by tuples over D.
struct GadgetMatrix {
  std::vector<Tuple> labels;
  std::vector<std::vector<CycloValue>> entries;

  std::size_t size() const { return labels.size(); }
  const CycloValue& at(std::size_t i, std::size_t j) const { return entries[i][j]; }
  std::size_t index_of(const Tuple& label) const;
};

/// Pair of row indices of |A| that are independent with a shared positive entry.
std::optional<std::pair<std::size_t, std::size_t>> abs_block_rank1_violation(const GadgetMatrix& a);

/// Z_A(G); each undirected edge uv contributes A(x_u, x_v) once.
CycloValue eval_graph_hom(const GadgetMatrix& a, const Graph& g, const Budget& budget = {});

struct Gadget {
  GadgetMatrix matrix;
  int K = 1;
  std::function<Instance(const Graph&)> realize;
};

/// A_r(w, w') = sum_i F(w, i) F(w', i)^{rK-1} over D^{n-1}, realized on directed graphs.
Gadget gadget_A_r(const TableFunction& f, int r);
/// A(z, w) over D^l from the double sum, realized on undirected graphs. F must be pure and block-orthogonal.
Gadget gadget_A_typepartition(const TableFunction& f, int ell);

/// H(x, y) = sum_z F(x, z) F(y, z)^{K-1}; Boolean(H) = Omega_F is asserted.
TableFunction gadget_H(const TableFunction& f);
/// Replaces each constraint on `h_name` by a fresh variable z, one F(x, z) and K-1 copies of F(y, z).
Instance expand_H_constraints(const Instance& inst, const std::string& h_name, const std::string& f_name, int K);

struct GadgetB {
  GadgetMatrix matrix;
  /// |A|, the matrix G' is evaluated against.
  GadgetMatrix abs;
  std::function<Graph(const Graph&)> transform;
};

/// B(i, j) = sum_k |A(i, k)| |A(j, k)|, and G -> G' with Z_B(G) = Z_{|A|}(G').
GadgetB gadget_B(const GadgetMatrix& a);

}  // namespace cspw
