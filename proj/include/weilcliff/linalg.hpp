#pragma once

#include <map>
#include <optional>
#include <vector>

#include "weilcliff/rational.hpp"

namespace weilcliff {

// Sparse exact vector: (column, coefficient) pairs, columns strictly increasing,
// no zero coefficients stored.
using SpVec = std::vector<std::pair<int, Rat>>;

SpVec spvec_from_map(const std::map<int, Rat>& m);
SpVec spvec_axpy(const SpVec& y, const Rat& c, const SpVec& x);  // y + c*x
SpVec spvec_scale(const SpVec& v, const Rat& c);

// A subspace kept in reduced row echelon form. The stored basis is the
// canonical RREF basis of the row span, so results do not depend on the
// order rows were added.
class Rref {
 public:
  // Residual of v after elimination by the current rows.
  SpVec reduce(const SpVec& v) const;
  // Reduce and insert if independent; returns true when the rank grew.
  bool add(const SpVec& v);
  bool contains(const SpVec& v) const { return reduce(v).empty(); }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<SpVec>& rows() const { return rows_; }
  const std::map<int, int>& pivots() const { return pivot_row_; }

 private:
  std::vector<SpVec> rows_;      // fully reduced, pivot coefficient 1
  std::map<int, int> pivot_row_; // pivot column -> row index
};

struct LinSolveResult {
  bool ok = false;
  std::vector<Rat> x;
};

// Solves sum_j x_j * col_j = b over the rationals. Columns are processed in
// insertion order and pivots are chosen on the smallest base coordinate, so
// the particular solution returned is deterministic (lexicographically
// minimal pivot choice). Also exposes the kernel of the column map.
class ColumnSolver {
 public:
  explicit ColumnSolver(int base_dim) : base_dim_(base_dim) {}
  void add_column(const SpVec& col);
  int columns() const { return ncols_; }
  int rank() const;  // rank of the column span
  LinSolveResult solve(const SpVec& b) const;
  std::vector<std::vector<Rat>> kernel() const;

 private:
  int base_dim_;
  int ncols_ = 0;
  Rref rref_;
};

// Kernel of the matrix with the given rows (unknowns indexed by 0..ncols-1).
std::vector<std::vector<Rat>> matrix_kernel(const std::vector<SpVec>& rows, int ncols);

// Canonical basis of span(a) intersected with span(b).
std::vector<SpVec> intersect_spans(const std::vector<SpVec>& a, const std::vector<SpVec>& b);

// Exact inverse of a dense square matrix; throws SingularForm if singular.
std::vector<std::vector<Rat>> dense_inverse(const std::vector<std::vector<Rat>>& m);

}  // namespace weilcliff
