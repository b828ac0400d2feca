#ifndef FROBEX_HOMSPACE_HPP
#define FROBEX_HOMSPACE_HPP

#include <memory>
#include <optional>
#include <vector>

#include "frobex/algebra.hpp"
#include "frobex/frobenius.hpp"

namespace frobex {

/// One side of a module structure: the acting algebra, its embedding into
/// the carrier's ambient algebra, and a twist automorphism of the actor.
struct ActorSpec {
  AlgebraPtr alg;
  Matrix embed;  // dim(carrier) x dim(actor)
  Matrix twist;  // dim(actor) x dim(actor)
};

/// A graded module carried by a tower algebra. The shift degree's sign
/// (-1)^{pi_shift * b} is applied inside the left-action evaluation, so no
/// downstream code special-cases shifts. Right actions take no shift sign.
struct ModuleSpec {
  AlgebraPtr carrier;
  std::optional<ActorSpec> left, right;
  Degree shift;

  std::size_t dim() const { return carrier->dim(); }
  /// Degree of basis element i in the shifted grading.
  Degree degree_of_basis(std::size_t i) const { return degree_add(carrier->degrees[i], shift); }

  /// Matrix of m -> b . m for the left actor's basis element b (twist and
  /// shift sign included).
  Matrix left_action_matrix(std::size_t actor_basis) const;
  /// Matrix of m -> m . a (right twist included, no sign; the Koszul sign of
  /// rho is applied by callers who know the parity of m).
  Matrix right_action_matrix(std::size_t actor_basis) const;
};

using ModulePtr = std::shared_ptr<const ModuleSpec>;

/// A homogeneous linear map between module structures. `degree` is measured
/// in the shifted gradings of source and target.
struct HomElement {
  ModulePtr source, target;
  Matrix matrix;  // dim(target) x dim(source)
  Degree degree;

  Vec apply(const Vec& v) const { return matrix.apply(v); }
};

// ---- module builders over a tower ----------------------------------------

/// A (B,A)-bimodule within the tower: a carrier algebra with B acting on the
/// left through b_embed and A on the right through a_embed, the right action
/// twisted by a_twist. The main instance is the carrier A itself.
struct TowerBimodule {
  AlgebraPtr carrier;
  AlgebraPtr B, A;
  Matrix b_embed, a_embed;
  Matrix a_twist;
};

/// M = A with left B-action via iota_BA and right A-action twisted by psi_A
/// (pass identity for the untwisted bimodule).
TowerBimodule bimodule_A(const Tower& t, const Matrix& a_twist);

/// View of M for HOM_B(^{beta}M, B): left actor B twisted by beta; the right
/// A-actor is kept so act_on_hom can apply rho_a.
ModulePtr hom_source_view(const TowerBimodule& m, const Matrix& beta);

/// View of M for M^v = HOM_R(M, R): constraint actor R on the left (through
/// the tower embeddings); B/A actions are *not* represented here — dual
/// elements meant for act_on_hom carry dual_element_view instead.
ModulePtr dual_source_view(const Tower& t, const TowerBimodule& m);

/// Full bimodule view of M (left B untwisted, right A twisted): the source
/// module recorded on dual elements so act_on_hom matches the dual action
/// a . f . b = (-1)^{a f} f o rho_a o lambda_b.
ModulePtr dual_element_view(const TowerBimodule& m);

/// B as the regular (B,B)-bimodule, optionally shifted.
ModulePtr regular_module(const AlgebraPtr& alg, const Degree& shift);

/// R as a module over itself (target of functionals).
ModulePtr base_module(const AlgebraPtr& R);

// ---- operations -----------------------------------------------------------

/// Basis of all homogeneous maps f of the given parity (all weights, one
/// HomElement per solution-basis vector) satisfying the signed left-linearity
///   f(b . m) = (-1)^{parity(f) b} b . f(m)
/// for the common left actor. Maps are grouped by weight sector in
/// lexicographic order and echelon-canonical within each sector.
std::vector<HomElement> hom_basis(const ModulePtr& source, const ModulePtr& target,
                                  Parity parity_sector);

/// Total dimension and per-sector subspaces of the same space, keyed by map
/// degree; the raw form consumed by verify_T2.
struct HomSectors {
  std::vector<std::pair<Degree, Subspace>> sectors;             // sorted by degree
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> supports;  // (tgt,src) per sector
  std::size_t total_dim() const;
};
HomSectors hom_sectors(const ModulePtr& source, const ModulePtr& target, Parity parity_sector);

/// The dual action (-1)^{a f} f o rho_a o lambda_b. a must belong to the
/// right actor of f's source, b to its left actor; both homogeneous.
HomElement act_on_hom(const Element& a, const HomElement& f, const Element& b);

/// f |-> tr_B o f, from HOM_B(beta-twisted M, B) to M^v.
HomElement dual_isom_forward(const HomElement& f, const TraceData& trB, const Tower& tower,
                             const TowerBimodule& m);

/// theta |-> (m |-> (-1)^{pi_B(theta + m)} sum_i (-1)^{y_i(pi_B + m)}
///            theta(y_i m) x_i), from M^v to HOM_B(psi_B-twisted M, B).
/// psiB only labels the returned source view; the formula does not use it.
HomElement dual_isom_inverse(const HomElement& theta, const DualGenerators& dg,
                             const TraceData& trB, const Matrix& psiB, const Tower& tower,
                             const TowerBimodule& m);

/// phi_A(a) = tr_A o rho_{psi_A(a)}, an element of (B A^{psi_A} A)^v.
HomElement phi_A(const Element& a, const TraceData& trA, const NakayamaMap& psiA,
                 const Tower& tower);

/// kappa = dual_isom_inverse specialized to M = A with its (B, A^{psi_A})
/// bimodule structure.
HomElement kappa(const HomElement& theta, const DualGenerators& dg, const TraceData& trB,
                 const NakayamaMap& psiA, const Matrix& psiB, const Tower& tower);

}  // namespace frobex

#endif
