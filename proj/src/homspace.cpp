#include "frobex/homspace.hpp"

#include <algorithm>
#include <map>

namespace frobex {

Matrix ModuleSpec::left_action_matrix(std::size_t actor_basis) const {
  if (!left) throw Error("module has no left actor");
  const AlgebraSpec& act = *left->alg;
  const std::size_t d = dim();
  Vec eb(act.dim(), Scalar(0));
  eb[actor_basis] = 1;
  Vec img = left->embed.apply(left->twist.apply(eb));
  const int sign = koszul_sign(shift.parity, act.degrees[actor_basis].parity);
  Matrix out(d, d);
  for (std::size_t m = 0; m < d; ++m) {
    Vec em(d, Scalar(0));
    em[m] = 1;
    Vec col = multiply_vec(*carrier, img, em);
    for (std::size_t i = 0; i < d; ++i)
      if (!is_zero(col[i])) out.at(i, m) = sign * col[i];
  }
  return out;
}

Matrix ModuleSpec::right_action_matrix(std::size_t actor_basis) const {
  if (!right) throw Error("module has no right actor");
  const AlgebraSpec& act = *right->alg;
  const std::size_t d = dim();
  Vec eb(act.dim(), Scalar(0));
  eb[actor_basis] = 1;
  Vec img = right->embed.apply(right->twist.apply(eb));
  Matrix out(d, d);
  for (std::size_t m = 0; m < d; ++m) {
    Vec em(d, Scalar(0));
    em[m] = 1;
    Vec col = multiply_vec(*carrier, em, img);
    for (std::size_t i = 0; i < d; ++i)
      if (!is_zero(col[i])) out.at(i, m) = col[i];
  }
  return out;
}

TowerBimodule bimodule_A(const Tower& t, const Matrix& a_twist) {
  return TowerBimodule{t.A, t.B, t.A, t.iota_BA.matrix, Matrix::identity(t.A->dim()), a_twist};
}

ModulePtr hom_source_view(const TowerBimodule& m, const Matrix& beta) {
  return std::make_shared<const ModuleSpec>(ModuleSpec{
      m.carrier, ActorSpec{m.B, m.b_embed, beta}, ActorSpec{m.A, m.a_embed, m.a_twist},
      zero_degree(m.carrier->arity)});
}

ModulePtr dual_source_view(const Tower& t, const TowerBimodule& m) {
  Matrix r_embed;
  if (*m.carrier == *t.A) r_embed = t.iota_RA.matrix;
  else if (*m.carrier == *t.B) r_embed = t.iota_RB.matrix;
  else if (*m.carrier == *t.R) r_embed = Matrix::identity(t.R->dim());
  else throw Error("dual_source_view: carrier is not a tower level");
  return std::make_shared<const ModuleSpec>(ModuleSpec{
      m.carrier, ActorSpec{t.R, std::move(r_embed), Matrix::identity(t.R->dim())}, std::nullopt,
      zero_degree(m.carrier->arity)});
}

ModulePtr dual_element_view(const TowerBimodule& m) {
  return std::make_shared<const ModuleSpec>(ModuleSpec{
      m.carrier, ActorSpec{m.B, m.b_embed, Matrix::identity(m.B->dim())},
      ActorSpec{m.A, m.a_embed, m.a_twist}, zero_degree(m.carrier->arity)});
}

ModulePtr regular_module(const AlgebraPtr& alg, const Degree& shift) {
  Matrix id = Matrix::identity(alg->dim());
  return std::make_shared<const ModuleSpec>(
      ModuleSpec{alg, ActorSpec{alg, id, id}, ActorSpec{alg, id, id}, shift});
}

ModulePtr base_module(const AlgebraPtr& R) { return regular_module(R, zero_degree(R->arity)); }

std::size_t HomSectors::total_dim() const {
  std::size_t n = 0;
  for (const auto& [d, s] : sectors) n += s.dim();
  return n;
}

HomSectors hom_sectors(const ModulePtr& source, const ModulePtr& target, Parity parity_sector) {
  const ModuleSpec& src = *source;
  const ModuleSpec& tgt = *target;
  if (!src.left || !tgt.left) throw Error("hom_basis: both modules need a left actor");
  if (!(src.left->alg == tgt.left->alg || *src.left->alg == *tgt.left->alg))
    throw Error("hom_basis: left actor algebras disagree");
  if (src.carrier->arity != tgt.carrier->arity) throw Error("hom_basis: arity mismatch");
  const AlgebraSpec& actor = *src.left->alg;
  const std::size_t dS = src.dim(), dT = tgt.dim();

  std::vector<Degree> ds(dS), dt(dT);
  for (std::size_t s = 0; s < dS; ++s) ds[s] = src.degree_of_basis(s);
  for (std::size_t t = 0; t < dT; ++t) dt[t] = tgt.degree_of_basis(t);

  // sector degrees: all differences dt - ds of the requested parity
  std::vector<Degree> sector_degrees;
  for (std::size_t s = 0; s < dS; ++s)
    for (std::size_t t = 0; t < dT; ++t) {
      if (dt[t].parity - ds[s].parity != parity_sector) continue;
      Degree d = degree_sub(dt[t], ds[s]);
      if (std::find(sector_degrees.begin(), sector_degrees.end(), d) == sector_degrees.end())
        sector_degrees.push_back(d);
    }
  std::sort(sector_degrees.begin(), sector_degrees.end(), degree_less);

  // constraints only for a generating set; linearity for products follows
  const std::vector<std::size_t> gens = generating_basis_indices(actor);
  std::vector<Matrix> Ls, Lt;
  for (std::size_t g : gens) {
    Ls.push_back(src.left_action_matrix(g));
    Lt.push_back(tgt.left_action_matrix(g));
  }
  // sparse columns of each action matrix
  auto columns_of = [](const Matrix& m) {
    std::vector<std::vector<std::pair<std::size_t, Scalar>>> cols(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i)
        if (!is_zero(m.at(i, j))) cols[j].emplace_back(i, m.at(i, j));
    return cols;
  };
  std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>> LsCols, LtCols;
  for (const auto& m : Ls) LsCols.push_back(columns_of(m));
  for (const auto& m : Lt) LtCols.push_back(columns_of(m));

  // target indices grouped by shifted degree
  std::map<std::vector<std::int64_t>, std::vector<std::size_t>> targets_by_weight[2];
  for (std::size_t t = 0; t < dT; ++t)
    targets_by_weight[static_cast<int>(dt[t].parity)][dt[t].weight].push_back(t);

  HomSectors out;
  for (const Degree& d : sector_degrees) {
    // unknown support: pairs (t, s) with dt = ds + d, flattened s-major
    std::vector<std::pair<std::size_t, std::size_t>> support;
    std::vector<std::vector<std::size_t>> idx(dT, std::vector<std::size_t>(dS, SIZE_MAX));
    for (std::size_t s = 0; s < dS; ++s) {
      const Degree want = degree_add(ds[s], d);
      auto it = targets_by_weight[static_cast<int>(want.parity)].find(want.weight);
      if (it == targets_by_weight[static_cast<int>(want.parity)].end()) continue;
      for (std::size_t t : it->second) {
        idx[t][s] = support.size();
        support.emplace_back(t, s);
      }
    }
    if (support.empty()) continue;
    const std::size_t U = support.size();

    std::vector<Vec> rows;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
      const int sign = koszul_sign(parity_sector, actor.degrees[gens[gi]].parity);
      for (std::size_t s = 0; s < dS; ++s) {
        // candidate equation indices t'
        std::vector<std::size_t> cand;
        for (const auto& [s2, c] : LsCols[gi][s]) {
          const Degree want = degree_add(ds[s2], d);
          auto it = targets_by_weight[static_cast<int>(want.parity)].find(want.weight);
          if (it == targets_by_weight[static_cast<int>(want.parity)].end()) continue;
          for (std::size_t t : it->second) cand.push_back(t);
        }
        {
          const Degree want = degree_add(ds[s], d);
          auto it = targets_by_weight[static_cast<int>(want.parity)].find(want.weight);
          if (it != targets_by_weight[static_cast<int>(want.parity)].end())
            for (std::size_t t : it->second)
              for (const auto& [t2, c] : LtCols[gi][t]) cand.push_back(t2);
        }
        std::sort(cand.begin(), cand.end());
        cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
        for (std::size_t tp : cand) {
          Vec row(U, Scalar(0));
          bool nonzero = false;
          // f(b.m) component at t': sum over s' of Ls(s',s) X[t',s']
          for (const auto& [s2, c] : LsCols[gi][s]) {
            const std::size_t k = idx[tp][s2];
            if (k != SIZE_MAX) {
              row[k] += c;
              nonzero = true;
            }
          }
          // -(sign) (b.f(m)) component at t': sum over t of Lt(t',t) X[t,s]
          const Degree want = degree_add(ds[s], d);
          auto it = targets_by_weight[static_cast<int>(want.parity)].find(want.weight);
          if (it != targets_by_weight[static_cast<int>(want.parity)].end())
            for (std::size_t t : it->second) {
              const Scalar& c = Lt[gi].at(tp, t);
              if (!is_zero(c)) {
                row[idx[t][s]] -= sign * c;
                nonzero = true;
              }
            }
          if (nonzero) rows.push_back(std::move(row));
        }
      }
    }
    Matrix sys(rows.size(), U);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < U; ++j) sys.at(i, j) = rows[i][j];
    out.sectors.emplace_back(d, kernel(sys));
    out.supports.push_back(std::move(support));
  }
  return out;
}

std::vector<HomElement> hom_basis(const ModulePtr& source, const ModulePtr& target,
                                  Parity parity_sector) {
  HomSectors hs = hom_sectors(source, target, parity_sector);
  std::vector<HomElement> out;
  for (std::size_t s = 0; s < hs.sectors.size(); ++s) {
    const auto& [deg, space] = hs.sectors[s];
    for (const Vec& row : space.basis) {
      Matrix m(target->dim(), source->dim());
      for (std::size_t k = 0; k < hs.supports[s].size(); ++k)
        if (!is_zero(row[k])) m.at(hs.supports[s][k].first, hs.supports[s][k].second) = row[k];
      out.push_back(HomElement{source, target, std::move(m), deg});
    }
  }
  return out;
}

HomElement act_on_hom(const Element& a, const HomElement& f, const Element& b) {
  const ModuleSpec& src = *f.source;
  if (!src.right) throw Error("act_on_hom: source module has no right actor");
  if (!src.left) throw Error("act_on_hom: source module has no left actor");
  if (!(a.algebra == src.right->alg || *a.algebra == *src.right->alg))
    throw Error("act_on_hom: a must lie in the right actor of f's source");
  if (!(b.algebra == src.left->alg || *b.algebra == *src.left->alg))
    throw Error("act_on_hom: b must lie in the left actor of f's source");

  const AlgebraSpec& carrier = *src.carrier;
  const std::size_t d = carrier.dim();

  auto da = homogeneous_degree(*a.algebra, a.coeffs);
  auto db = homogeneous_degree(*b.algebra, b.coeffs);
  if ((!da && !a.is_zero()) || (!db && !b.is_zero()))
    throw Error("act_on_hom: a and b must be homogeneous");
  HomElement out{f.source, f.target, Matrix(f.target->dim(), f.source->dim()), f.degree};
  if (a.is_zero() || b.is_zero()) return out;
  out.degree = degree_add(degree_add(f.degree, *da), *db);

  const int sign_af = koszul_sign(da->parity, f.degree.parity);
  const int shift_b = koszul_sign(src.shift.parity, db->parity);
  Vec b_img = src.left->embed.apply(src.left->twist.apply(b.coeffs));
  Vec a_img = src.right->embed.apply(src.right->twist.apply(a.coeffs));

  for (std::size_t m = 0; m < d; ++m) {
    Vec em(d, Scalar(0));
    em[m] = 1;
    // lambda_b
    Vec v = multiply_vec(carrier, b_img, em);
    if (shift_b == -1)
      for (auto& x : v) x = -x;
    // rho_a with its Koszul sign (parity of v is b + shifted parity of m)
    const Parity pv = db->parity + degree_add(carrier.degrees[m], src.shift).parity;
    const int sign_rho = koszul_sign(da->parity, pv);
    Vec w = multiply_vec(carrier, v, a_img);
    const int total = sign_af * sign_rho;
    Vec col = f.apply(w);
    for (std::size_t i = 0; i < col.size(); ++i)
      if (!is_zero(col[i])) out.matrix.at(i, m) = total * col[i];
  }
  return out;
}

HomElement dual_isom_forward(const HomElement& f, const TraceData& trB, const Tower& tower,
                             const TowerBimodule& m) {
  if (!(*trB.big == *tower.B)) throw Error("dual_isom_forward: trB must be the trace of B over R");
  if (f.matrix.rows() != tower.B->dim() || f.matrix.cols() != m.carrier->dim())
    throw Error("dual_isom_forward: f must map M to B");
  HomElement out{dual_element_view(m), base_module(tower.R), trB.matrix.multiply(f.matrix),
                 degree_add(f.degree, trB.degree)};
  return out;
}

HomElement dual_isom_inverse(const HomElement& theta, const DualGenerators& dg,
                             const TraceData& trB, const Matrix& psiB, const Tower& tower,
                             const TowerBimodule& m) {
  const AlgebraSpec& B = *tower.B;
  const AlgebraSpec& carrier = *m.carrier;
  const std::size_t dB = B.dim(), dM = carrier.dim();
  if (theta.matrix.rows() != tower.R->dim() || theta.matrix.cols() != dM)
    throw Error("dual_isom_inverse: theta must be a functional on M");
  const Parity piB = dg.lambda_pi.parity;
  const Parity ptheta = theta.degree.parity;

  Matrix out_m(dB, dM);
  for (std::size_t mi = 0; mi < dM; ++mi) {
    const Parity pm = carrier.degrees[mi].parity;
    const int s1 = koszul_sign(piB, ptheta + pm);
    Vec em(dM, Scalar(0));
    em[mi] = 1;
    Vec acc(dB, Scalar(0));
    for (std::size_t i = 0; i < dg.x.size(); ++i) {
      if (dg.y[i].is_zero()) continue;
      auto dy = homogeneous_degree(B, dg.y[i].coeffs);
      const int s2 = koszul_sign(dy->parity, piB + pm);
      Vec ym = multiply_vec(carrier, m.b_embed.apply(dg.y[i].coeffs), em);
      Vec tv = theta.matrix.apply(ym);  // in R
      Vec term = multiply_vec(B, tower.iota_RB.apply(tv), dg.x[i].coeffs);
      for (std::size_t s = 0; s < dB; ++s) acc[s] += Scalar(s1 * s2) * term[s];
    }
    for (std::size_t s = 0; s < dB; ++s)
      if (!is_zero(acc[s])) out_m.at(s, mi) = acc[s];
  }
  return HomElement{hom_source_view(m, psiB), regular_module(tower.B, zero_degree(B.arity)),
                    std::move(out_m), degree_add(theta.degree, dg.lambda_pi)};
}

HomElement phi_A(const Element& a, const TraceData& trA, const NakayamaMap& psiA,
                 const Tower& tower) {
  const AlgebraSpec& A = *tower.A;
  const std::size_t dA = A.dim();
  if (!(a.algebra == tower.A || *a.algebra == *tower.A)) throw Error("phi_A: a must lie in A");
  auto da = homogeneous_degree(A, a.coeffs);
  if (!da && !a.is_zero()) throw Error("phi_A: a must be homogeneous");

  TowerBimodule m = bimodule_A(tower, psiA.matrix);
  HomElement out{dual_element_view(m), base_module(tower.R), Matrix(tower.R->dim(), dA),
                 a.is_zero() ? trA.degree : degree_add(*da, trA.degree)};
  if (a.is_zero()) return out;

  Vec psi_a = psiA.apply(a.coeffs);
  for (std::size_t x = 0; x < dA; ++x) {
    Vec ex(dA, Scalar(0));
    ex[x] = 1;
    const int sign = koszul_sign(da->parity, A.degrees[x].parity);
    Vec val = trA.apply(multiply_vec(A, ex, psi_a));
    for (std::size_t i = 0; i < val.size(); ++i)
      if (!is_zero(val[i])) out.matrix.at(i, x) = sign * val[i];
  }
  return out;
}

HomElement kappa(const HomElement& theta, const DualGenerators& dg, const TraceData& trB,
                 const NakayamaMap& psiA, const Matrix& psiB, const Tower& tower) {
  TowerBimodule m = bimodule_A(tower, psiA.matrix);
  return dual_isom_inverse(theta, dg, trB, psiB, tower, m);
}

}  // namespace frobex
