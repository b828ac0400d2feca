#ifndef FROBEX_LINALG_HPP
#define FROBEX_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "frobex/error.hpp"
#include "frobex/scalar.hpp"

namespace frobex {

using Vec = std::vector<Scalar>;

/// Dense row-major matrix over exact rationals.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols, Scalar(0)) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const Scalar& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  /// Row r as a span into the entry storage.
  Scalar* row(std::size_t r) { return entries_.data() + r * cols_; }
  const Scalar* row(std::size_t r) const { return entries_.data() + r * cols_; }

  bool operator==(const Matrix& o) const = default;

  Vec apply(const Vec& v) const;          // this * v
  Matrix multiply(const Matrix& o) const; // this * o
  bool is_identity() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Vec entries_;
};

/// A subspace of Q^ambient_dim held as its canonical reduced-row-echelon
/// basis: nonzero rows, pivots 1, pivot columns strictly increasing and zero
/// elsewhere. Canonical form makes equality syntactic.
struct Subspace {
  std::size_t ambient_dim = 0;
  std::vector<Vec> basis;  // RREF rows

  std::size_t dim() const { return basis.size(); }
  /// True iff v lies in the span (reduction against the echelon rows ends at zero).
  bool contains(const Vec& v) const;
};

/// Reduced row echelon form with deterministic pivoting: pivots are found
/// scanning columns left to right and rows top to bottom; exact arithmetic,
/// no tolerances. Returns the echelon matrix and its rank.
std::pair<Matrix, std::size_t> rref(Matrix m);

std::size_t rank(const Matrix& m);

/// Basis of the right null space { x : m x = 0 }, echelon-canonicalized.
Subspace kernel(const Matrix& m);

/// One exact solution of m x = v, with free variables set to 0, or nullopt
/// if the system is inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& v);

/// Canonicalizes a spanning set of row vectors into a Subspace.
Subspace row_space(const std::vector<Vec>& rows, std::size_t ambient_dim);

bool subspace_equal(const Subspace& a, const Subspace& b);

/// Incrementally grown span with exact membership tests; rows are kept in
/// echelon (pivot-sorted) form but not back-eliminated, which is enough for
/// membership and dimension.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t ambient_dim) : dim_(ambient_dim) {}

  bool contains(const Vec& v) const;
  /// Returns true if v enlarged the span.
  bool insert(Vec v);
  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient_dim() const { return dim_; }

 private:
  void reduce(Vec& w) const;

  std::size_t dim_;
  std::vector<std::pair<std::size_t, Vec>> rows_;  // (pivot, normalized row)
};

}  // namespace frobex

#endif
