#ifndef FROBEX_FROBENIUS_HPP
#define FROBEX_FROBENIUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "frobex/algebra.hpp"

namespace frobex {

/// A candidate trace map for an extension sub ⊆ big: an exact linear map
/// big -> sub, homogeneous of `degree` = (-lambda, pi), together with the
/// left twist beta (automorphism of sub) and right twist alpha (automorphism
/// of big). Untwisted traces carry identity matrices.
struct TraceData {
  AlgebraPtr sub, big;
  Embedding embedding;  // sub -> big
  Matrix matrix;        // dim(sub) x dim(big)
  Degree degree;        // homogeneity degree (-lambda, pi)
  Matrix left_twist;    // beta on sub
  Matrix right_twist;   // alpha on big

  /// {lambda, pi}: the shift under which tr is a degree-(0,0) bimodule map.
  Degree shift() const { return Degree(degree_negate(degree).weight, degree.parity); }
  bool twists_trivial() const { return left_twist.is_identity() && right_twist.is_identity(); }

  /// Value tr(a) in sub coordinates.
  Vec apply(const Vec& big_coeffs) const { return matrix.apply(big_coeffs); }

  bool operator==(const TraceData& o) const;
};

TraceData untwisted_trace(AlgebraPtr sub, AlgebraPtr big, Embedding embedding, Matrix matrix,
                          Degree degree);

/// Dual sets of generators {x_i}, {y_i} of sub over the base, with
/// |y_i| = lambda - |x_i| and parity(y_i) = pi - parity(x_i).
struct DualGenerators {
  std::vector<Element> x, y;
  Degree lambda_pi;  // (lambda, pi) of the extension sub / base
};

/// The Nakayama automorphism psi of a big algebra, the unique map with
/// tr(c a) = (-1)^{a c} tr(a psi(c)).
struct NakayamaMap {
  Matrix matrix;  // dim(big) x dim(big), column c = psi(e_c)

  Vec apply(const Vec& v) const { return matrix.apply(v); }
  bool is_identity() const { return matrix.is_identity(); }
};

// ---- verification --------------------------------------------------------

/// Bimodule morphism property of tr: for all sub-basis b and big-basis a,
///   tr(beta(b) a) = (-1)^{pi b} b tr(a)   and   tr(a alpha(b)) = tr(a) b,
/// plus homogeneity of the stated degree.
Report verify_trace_bimodule(const TraceData& td, const std::string& stage);

/// T1 nondegeneracy: the pairing a -> (tr(e_i a))_i has zero kernel.
Report verify_T1(const TraceData& td, const std::string& stage);

/// T2: the image of a -> tr o rho_a equals HOM_sub(beta-twisted big, shifted
/// sub), compared sector by sector as canonical subspaces.
Report verify_T2(const TraceData& td, const std::string& stage);

/// Solves the defining equation per basis element, homogeneity imposed up
/// front; throws Error on an inconsistent or non-unique system (T1 failure
/// or malformed trace).
NakayamaMap compute_nakayama(const TraceData& td);

/// Unital, multiplicative on all basis pairs, degree-preserving, invertible.
Report check_automorphism(const AlgebraSpec& alg, const Matrix& psi, const std::string& stage,
                          const std::string& prefix = "");

/// Solves both dual-basis identities for {y_i} given the declared homogeneous
/// basis {x_i} of sub over the trace's base; throws Error when the system is
/// singular (trace not Frobenius relative to this basis) or non-unique.
DualGenerators compute_dual_generators(const TraceData& td, const std::vector<Element>& x_basis);

/// Re-checks both displayed identities with all Koszul signs on every basis
/// element, plus the degree condition on the pairs (x_i, y_i).
Report verify_dual_generators(const DualGenerators& dg, const TraceData& td,
                              const std::string& stage);

/// Lemma "alpha|_R = beta and psi|_R = id_R" at instance level. The trace's
/// sub must be one of tower.R, tower.B, tower.A so the R-image is known.
/// psi, when supplied, is checked to fix the R-image pointwise.
Report check_AR_identities(const Tower& tower, const TraceData& td, const NakayamaMap* psi,
                           const std::string& stage);

struct FreenessResult {
  bool free = false;                       // false means Inconclusive, never "not projective"
  std::size_t rank = 0;
  std::vector<std::size_t> basis_indices;  // big-basis indices of the free generators
};

/// Greedy probe for freeness of big as a left sub-module; returns the basis
/// found or an inconclusive result. Verification never consumes this.
FreenessResult freeness_probe(const AlgebraSpec& big, const AlgebraSpec& sub,
                              const Embedding& embedding);

}  // namespace frobex

#endif
