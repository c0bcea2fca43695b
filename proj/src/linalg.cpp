#include "weilcliff/linalg.hpp"

#include <algorithm>

namespace weilcliff {

SpVec spvec_from_map(const std::map<int, Rat>& m) {
  SpVec v;
  v.reserve(m.size());
  for (const auto& [c, q] : m)
    if (q != 0) v.emplace_back(c, q);
  return v;
}

SpVec spvec_axpy(const SpVec& y, const Rat& c, const SpVec& x) {
  SpVec out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(y[i++]);
    } else if (i == y.size() || x[j].first < y[i].first) {
      Rat q = c * x[j].second;
      if (q != 0) out.emplace_back(x[j].first, q);
      ++j;
    } else {
      Rat q = y[i].second + c * x[j].second;
      if (q != 0) out.emplace_back(y[i].first, q);
      ++i;
      ++j;
    }
  }
  return out;
}

SpVec spvec_scale(const SpVec& v, const Rat& c) {
  SpVec out;
  if (c == 0) return out;
  out.reserve(v.size());
  for (const auto& [col, q] : v) out.emplace_back(col, c * q);
  return out;
}

SpVec Rref::reduce(const SpVec& v) const {
  // Rows are fully reduced, so each elimination only introduces larger columns.
  std::map<int, Rat> work(v.begin(), v.end());
  SpVec out;
  while (!work.empty()) {
    auto it = work.begin();
    int col = it->first;
    Rat coeff = it->second;
    work.erase(it);
    if (coeff == 0) continue;
    auto p = pivot_row_.find(col);
    if (p == pivot_row_.end()) {
      out.emplace_back(col, coeff);
      continue;
    }
    const SpVec& row = rows_[p->second];
    for (std::size_t k = 1; k < row.size(); ++k) work[row[k].first] -= coeff * row[k].second;
  }
  return out;
}

bool Rref::add(const SpVec& v) {
  SpVec r = reduce(v);
  if (r.empty()) return false;
  Rat inv = 1 / r[0].second;
  r = spvec_scale(r, inv);
  int pivot = r[0].first;
  // Back-substitute into existing rows to stay fully reduced.
  for (auto& row : rows_) {
    auto it = std::lower_bound(row.begin(), row.end(), pivot,
                               [](const std::pair<int, Rat>& e, int c) { return e.first < c; });
    if (it != row.end() && it->first == pivot) {
      Rat c = -it->second;
      row = spvec_axpy(row, c, r);
    }
  }
  pivot_row_[pivot] = static_cast<int>(rows_.size());
  rows_.push_back(std::move(r));
  return true;
}

void ColumnSolver::add_column(const SpVec& col) {
  if (!col.empty() && col.back().first >= base_dim_)
    throw std::out_of_range("column coordinate exceeds the solver base dimension");
  SpVec tagged = col;
  tagged.emplace_back(base_dim_ + ncols_, Rat(1));
  rref_.add(tagged);
  ++ncols_;
}

int ColumnSolver::rank() const {
  int r = 0;
  for (const auto& [piv, row] : rref_.pivots())
    if (piv < base_dim_) ++r;
  return r;
}

LinSolveResult ColumnSolver::solve(const SpVec& b) const {
  if (!b.empty() && b.back().first >= base_dim_)
    throw std::out_of_range("rhs coordinate exceeds the solver base dimension");
  SpVec r = rref_.reduce(b);
  LinSolveResult res;
  for (const auto& [col, q] : r)
    if (col < base_dim_) return res;  // not in the column span
  res.ok = true;
  res.x.assign(ncols_, Rat(0));
  for (const auto& [col, q] : r) res.x[col - base_dim_] = -q;
  return res;
}

std::vector<std::vector<Rat>> ColumnSolver::kernel() const {
  std::vector<std::vector<Rat>> out;
  for (const auto& row : rref_.rows()) {
    if (row.empty() || row[0].first < base_dim_) continue;
    std::vector<Rat> v(ncols_, Rat(0));
    for (const auto& [col, q] : row) v[col - base_dim_] = q;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Rat>> matrix_kernel(const std::vector<SpVec>& rows, int ncols) {
  // Kernel of A: combinations of columns summing to zero.
  std::vector<std::map<int, Rat>> cols(ncols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, q] : rows[r]) cols[c][static_cast<int>(r)] = q;
  ColumnSolver cs(static_cast<int>(rows.size()));
  for (int c = 0; c < ncols; ++c) cs.add_column(spvec_from_map(cols[c]));
  return cs.kernel();
}

std::vector<SpVec> intersect_spans(const std::vector<SpVec>& a, const std::vector<SpVec>& b) {
  int base = 0;
  for (const auto& v : a)
    if (!v.empty()) base = std::max(base, v.back().first + 1);
  for (const auto& v : b)
    if (!v.empty()) base = std::max(base, v.back().first + 1);
  ColumnSolver cs(base);
  for (const auto& v : a) cs.add_column(v);
  for (const auto& v : b) cs.add_column(v);
  Rref out;
  for (const auto& k : cs.kernel()) {
    SpVec acc;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (k[i] != 0) acc = spvec_axpy(acc, k[i], a[i]);
    out.add(acc);
  }
  std::vector<SpVec> rows = out.rows();
  return rows;
}

std::vector<std::vector<Rat>> dense_inverse(const std::vector<std::vector<Rat>>& m) {
  std::size_t n = m.size();
  std::vector<std::vector<Rat>> a(m);
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) throw SingularForm("matrix is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Rat d = a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] /= d;
      inv[c][j] /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

}  // namespace weilcliff
