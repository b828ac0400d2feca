#include "frobex/linalg.hpp"

#include <algorithm>

#include "frobex/parallel.hpp"

namespace frobex {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw Error("Matrix::apply: size mismatch");
  Vec out(rows_, Scalar(0));
  for (std::size_t j = 0; j < cols_; ++j) {
    if (is_zero(v[j])) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Scalar& m = at(i, j);
      if (!is_zero(m)) out[i] += m * v[j];
    }
  }
  return out;
}

Matrix Matrix::multiply(const Matrix& o) const {
  if (cols_ != o.rows_) throw Error("Matrix::multiply: shape mismatch");
  Matrix out(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& a = at(i, k);
      if (is_zero(a)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) {
        const Scalar& b = o.at(k, j);
        if (!is_zero(b)) out.at(i, j) += a * b;
      }
    }
  return out;
}

bool Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != ((i == j) ? 1 : 0)) return false;
  return true;
}

bool Subspace::contains(const Vec& v) const {
  if (v.size() != ambient_dim) throw Error("Subspace::contains: dimension mismatch");
  Vec w = v;
  for (const Vec& b : basis) {
    std::size_t p = 0;
    while (p < ambient_dim && is_zero(b[p])) ++p;
    if (p == ambient_dim) continue;
    if (is_zero(w[p])) continue;
    Scalar f = w[p];  // pivot of b is 1
    for (std::size_t j = p; j < ambient_dim; ++j)
      if (!is_zero(b[j])) w[j] -= f * b[j];
  }
  for (const auto& x : w)
    if (!is_zero(x)) return false;
  return true;
}

namespace {

// One Gauss-Jordan elimination sweep for the pivot at (pr, pc). Rows are
// independent, so this is the project's canonical data-parallel kernel.
void eliminate_column(Matrix& m, std::size_t pr, std::size_t pc,
                      const std::vector<std::size_t>& nz_cols) {
  const std::size_t rows = m.rows();
  struct Ctx {
    Matrix* m;
    std::size_t pr, pc;
    const std::vector<std::size_t>* nz;
  } ctx{&m, pr, pc, &nz_cols};
  parallel_for(rows, &ctx, [](std::size_t i, const void* p) {
    const Ctx& c = *static_cast<const Ctx*>(p);
    if (i == c.pr) return;
    Matrix& mm = *c.m;
    const Scalar f = mm.at(i, c.pc);
    if (is_zero(f)) return;
    const Scalar* prow = mm.row(c.pr);
    Scalar* irow = mm.row(i);
    for (std::size_t j : *c.nz) irow[j] -= f * prow[j];
  });
}

}  // namespace

std::pair<Matrix, std::size_t> rref(Matrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    // deterministic pivot: first nonzero entry in this column at or below r
    std::size_t pr = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (!is_zero(m.at(i, c))) {
        pr = i;
        break;
      }
    if (pr == rows) continue;
    if (pr != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
    if (m.at(r, c) != 1) {
      Scalar inv = Scalar(1) / m.at(r, c);
      for (std::size_t j = c; j < cols; ++j)
        if (!is_zero(m.at(r, j))) m.at(r, j) *= inv;
    }
    std::vector<std::size_t> nz_cols;
    for (std::size_t j = c; j < cols; ++j)
      if (!is_zero(m.at(r, j))) nz_cols.push_back(j);
    eliminate_column(m, r, c, nz_cols);
    ++r;
  }
  return {std::move(m), r};
}

std::size_t rank(const Matrix& m) { return rref(m).second; }

namespace {

std::vector<std::size_t> pivot_columns(const Matrix& echelon, std::size_t rank) {
  std::vector<std::size_t> pivots;
  pivots.reserve(rank);
  for (std::size_t i = 0; i < rank; ++i) {
    std::size_t j = 0;
    while (j < echelon.cols() && is_zero(echelon.at(i, j))) ++j;
    pivots.push_back(j);
  }
  return pivots;
}

}  // namespace

Subspace kernel(const Matrix& m) {
  auto [e, rk] = rref(m);
  const std::size_t cols = m.cols();
  auto pivots = pivot_columns(e, rk);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<Vec> raw;
  for (std::size_t fc = 0; fc < cols; ++fc) {
    if (is_pivot[fc]) continue;
    Vec v(cols, Scalar(0));
    v[fc] = 1;
    for (std::size_t i = 0; i < rk; ++i) v[pivots[i]] = -e.at(i, fc);
    raw.push_back(std::move(v));
  }
  return row_space(raw, cols);
}

std::optional<Vec> solve(const Matrix& m, const Vec& v) {
  if (v.size() != m.rows()) throw Error("solve: rhs length must equal row count");
  const std::size_t cols = m.cols();
  Matrix aug(m.rows(), cols + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, cols) = v[i];
  }
  auto [e, rk] = rref(std::move(aug));
  auto pivots = pivot_columns(e, rk);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;  // inconsistent
  Vec x(cols, Scalar(0));  // free variables stay 0
  for (std::size_t i = 0; i < rk; ++i) x[pivots[i]] = e.at(i, cols);
  return x;
}

Subspace row_space(const std::vector<Vec>& rows, std::size_t ambient_dim) {
  Matrix m(rows.size(), ambient_dim);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != ambient_dim) throw Error("row_space: row length mismatch");
    for (std::size_t j = 0; j < ambient_dim; ++j) m.at(i, j) = rows[i][j];
  }
  auto [e, rk] = rref(std::move(m));
  Subspace s;
  s.ambient_dim = ambient_dim;
  s.basis.reserve(rk);
  for (std::size_t i = 0; i < rk; ++i) {
    Vec row(ambient_dim);
    for (std::size_t j = 0; j < ambient_dim; ++j) row[j] = e.at(i, j);
    s.basis.push_back(std::move(row));
  }
  return s;
}

bool subspace_equal(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim)
    throw Error("subspace_equal: ambient dimension mismatch");
  return a.basis == b.basis;
}

void SpanBuilder::reduce(Vec& w) const {
  for (const auto& [p, row] : rows_) {
    if (is_zero(w[p])) continue;
    Scalar f = w[p];
    for (std::size_t j = p; j < dim_; ++j)
      if (!is_zero(row[j])) w[j] -= f * row[j];
  }
}

bool SpanBuilder::contains(const Vec& v) const {
  if (v.size() != dim_) throw Error("SpanBuilder::contains: dimension mismatch");
  Vec w = v;
  reduce(w);
  for (const auto& x : w)
    if (!is_zero(x)) return false;
  return true;
}

bool SpanBuilder::insert(Vec v) {
  if (v.size() != dim_) throw Error("SpanBuilder::insert: dimension mismatch");
  reduce(v);
  std::size_t p = 0;
  while (p < dim_ && is_zero(v[p])) ++p;
  if (p == dim_) return false;
  Scalar inv = Scalar(1) / v[p];
  for (std::size_t j = p; j < dim_; ++j)
    if (!is_zero(v[j])) v[j] *= inv;
  auto it = std::lower_bound(rows_.begin(), rows_.end(), p,
                             [](const auto& row, std::size_t piv) { return row.first < piv; });
  rows_.insert(it, {p, std::move(v)});
  return true;
}

}  // namespace frobex
