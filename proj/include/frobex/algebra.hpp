#ifndef FROBEX_ALGEBRA_HPP
#define FROBEX_ALGEBRA_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobex/grading.hpp"
#include "frobex/linalg.hpp"
#include "frobex/report.hpp"

namespace frobex {

/// Sparse coefficient vector, entries sorted by index. Structure constants
/// are stored this way; basis products in the builtin examples have at most
/// a handful of terms, and the verification scans live on that sparsity.
using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

SparseVec to_sparse(const Vec& dense);
Vec to_dense(const SparseVec& sparse, std::size_t dim);

/// A graded superalgebra presented by structure constants over Q: ordered
/// homogeneous basis, a degree per basis element, the unit, and for each
/// ordered basis pair (i,j) the expansion of e_i * e_j.
struct AlgebraSpec {
  std::string name;
  std::size_t arity = 1;
  std::vector<std::string> basis;
  std::vector<Degree> degrees;
  Vec unit;
  std::vector<SparseVec> products;  // index i*dim+j

  std::size_t dim() const { return basis.size(); }
  const SparseVec& product(std::size_t i, std::size_t j) const { return products[i * dim() + j]; }
  std::optional<std::size_t> label_index(const std::string& label) const;

  bool operator==(const AlgebraSpec& o) const = default;
};

using AlgebraPtr = std::shared_ptr<const AlgebraSpec>;

/// Shape validation only (sizes, arity, nonzero unit); the algebra *axioms*
/// are check_algebra's job so that bad input yields reports, not throws.
AlgebraPtr make_algebra(AlgebraSpec spec);

struct Element {
  AlgebraPtr algebra;
  Vec coeffs;

  bool is_zero() const;
  bool operator==(const Element& o) const;
};

Element zero_element(const AlgebraPtr& a);
Element unit_element(const AlgebraPtr& a);
Element basis_element(const AlgebraPtr& a, std::size_t i);
Element add(const Element& x, const Element& y);
Element scale(const Scalar& c, const Element& x);
Element multiply(const Element& x, const Element& y);

/// Dense-coordinate product in a given algebra (both vectors in its basis).
Vec multiply_vec(const AlgebraSpec& a, const Vec& x, const Vec& y);

/// Degree of a nonzero homogeneous element; nullopt if zero or mixed.
std::optional<Degree> homogeneous_degree(const AlgebraSpec& a, const Vec& coeffs);

/// Canonical linear-combination text, e.g. `1*u1 + -3/2*u12`, `0` for zero.
std::string lincomb_string(const AlgebraSpec& a, const Vec& coeffs);

/// A unital, multiplicative, degree-preserving injection of algebras,
/// stored as the coordinate matrix source -> target.
struct Embedding {
  AlgebraPtr source, target;
  Matrix matrix;  // dim(target) x dim(source)

  Vec apply(const Vec& source_coeffs) const;
  Element apply(const Element& e) const;
  bool operator==(const Embedding& o) const;
};

Embedding identity_embedding(const AlgebraPtr& a);
Embedding compose(const Embedding& second, const Embedding& first);  // second o first

/// The ambient data of every problem: R inside B inside A.
struct Tower {
  AlgebraPtr R, B, A;
  Embedding iota_RB, iota_BA, iota_RA;

  bool operator==(const Tower& o) const;
};

Tower make_tower(AlgebraPtr R, AlgebraPtr B, AlgebraPtr A, Embedding iota_RB, Embedding iota_BA);

// ---- structural checks (failures are reported with witnesses, never thrown)

/// Unit law, associativity over all basis triples, grading compatibility.
Report check_algebra(const AlgebraSpec& a, const std::string& stage = "algebra",
                     const std::string& prefix = "");

/// e_i e_j = (-1)^{deg_i deg_j} e_j e_i on all basis pairs.
Report check_supercommutative(const AlgebraSpec& a, const std::string& stage = "algebra",
                              const std::string& prefix = "");

Report check_embedding(const Embedding& e, const std::string& stage = "embedding",
                       const std::string& prefix = "");

/// All structural tower checks: the three algebras, supercommutativity of R,
/// both embeddings, and consistency of the composite.
Report validate_tower(const Tower& t);

/// C_A(R) = A: iota(r) a = (-1)^{r a} a iota(r) for all basis r of R, a of A.
Report check_centralizer_full(const Tower& t);

/// Greedy minimal-ish generating set of the algebra (basis indices, unit
/// excluded): scans the basis in order and keeps elements outside the
/// subalgebra generated so far. Deterministic.
std::vector<std::size_t> generating_basis_indices(const AlgebraSpec& a);

}  // namespace frobex

#endif
