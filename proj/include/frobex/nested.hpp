#ifndef FROBEX_NESTED_HPP
#define FROBEX_NESTED_HPP

#include <optional>
#include <string>
#include <vector>

#include "frobex/frobenius.hpp"

namespace frobex {

/// Input to the main-theorem pipeline: a tower R ⊆ B ⊆ A with candidate
/// untwisted traces for A over R and B over R, plus the declared R-basis of
/// B (a free-module basis, required for dual-generator computation).
struct NestedProblem {
  std::string name;  // e.g. "nilcoxeter:3"; cosmetic, used in reports
  Tower tower;
  TraceData tr_A, tr_B;
  std::vector<Element> b_r_basis;

  bool operator==(const NestedProblem& o) const;
};

/// Pipeline output: the nested trace with its twists, the Nakayama maps,
/// dual generators, and the full check report. `valid` covers stages 1-7
/// and 9; an inconclusive freeness probe only downgrades to a warning.
struct Certificate {
  bool valid = false;
  std::optional<TraceData> nested_trace;
  std::optional<NakayamaMap> psi_A, psi_B;
  std::optional<DualGenerators> dual_gens;
  FreenessResult freeness;
  bool freeness_warning = false;
  Degree extension_degree;  // (lambda_B - lambda_A, pi_A + pi_B)
  Report checks;
  std::string failed_stage;  // empty when valid

  std::string summary_line() const;  // CERTIFICATE VALID|INVALID degree=... twists=...
};

/// Evaluates the nested trace formula
///   tr(a) = (-1)^{pi_B(pi_A + a)} sum_i (-1)^{y_i(pi_B + a)} tr_A(y_i a) x_i
/// on every basis element of A, producing TraceData for A over B of degree
/// (lambda_B - lambda_A, pi_A + pi_B) with twists (psi_A on the right,
/// psi_B on the left).
TraceData build_nested_trace(const NestedProblem& p, const DualGenerators& dg,
                             const NakayamaMap& psi_A, const NakayamaMap& psi_B);

/// Recomputes kappa(phi_A(1_A)) through the homspace isomorphisms and checks
/// it equals td entry for entry.
Report verify_kappa_phi_route(const NestedProblem& p, const TraceData& td,
                              const DualGenerators& dg, const NakayamaMap& psi_A,
                              const NakayamaMap& psi_B);

/// The full pipeline of the main theorem; see Certificate.
Certificate verify_main_theorem(const NestedProblem& p);

/// Re-runs the bimodule check on the nested trace under all four twist
/// substitutions {id, psi_A} x {id, psi_B}; one CHECK line per combination.
/// Diagnostic: FAIL lines here are expected for nontrivially twisted
/// extensions and do not affect certificate validity.
Report twist_necessity(const NestedProblem& p, const TraceData& td, const NakayamaMap& psi_A,
                       const NakayamaMap& psi_B);

}  // namespace frobex

#endif
