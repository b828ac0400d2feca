#include "frobex/frobenius.hpp"

#include <algorithm>

#include "frobex/homspace.hpp"
#include "frobex/parallel.hpp"

namespace frobex {

bool TraceData::operator==(const TraceData& o) const {
  return *sub == *o.sub && *big == *o.big && embedding == o.embedding && matrix == o.matrix &&
         degree == o.degree && left_twist == o.left_twist && right_twist == o.right_twist;
}

TraceData untwisted_trace(AlgebraPtr sub, AlgebraPtr big, Embedding embedding, Matrix matrix,
                          Degree degree) {
  const std::size_t ds = sub->dim(), db = big->dim();
  if (matrix.rows() != ds || matrix.cols() != db)
    throw Error("trace: matrix must map big coordinates to sub coordinates");
  return TraceData{std::move(sub), std::move(big), std::move(embedding), std::move(matrix),
                   std::move(degree), Matrix::identity(ds), Matrix::identity(db)};
}

Report verify_trace_bimodule(const TraceData& td, const std::string& stage) {
  Report rep;
  const AlgebraSpec& sub = *td.sub;
  const AlgebraSpec& big = *td.big;
  const std::size_t ds = sub.dim(), db = big.dim();
  const Parity pi = td.degree.parity;

  // precompute twisted images of the sub basis inside big
  std::vector<Vec> beta_img(ds), alpha_img(ds);
  for (std::size_t b = 0; b < ds; ++b) {
    Vec eb(ds, Scalar(0));
    eb[b] = 1;
    beta_img[b] = td.embedding.apply(td.left_twist.apply(eb));
    alpha_img[b] = td.right_twist.apply(td.embedding.apply(eb));
  }
  std::vector<Vec> tr_of_basis(db);
  for (std::size_t a = 0; a < db; ++a) {
    Vec ea(db, Scalar(0));
    ea[a] = 1;
    tr_of_basis[a] = td.apply(ea);
  }

  std::size_t left_fails = 0, right_fails = 0;
  std::string left_witness, right_witness;
  for (std::size_t b = 0; b < ds; ++b) {
    const int shift_sign = koszul_sign(pi, sub.degrees[b].parity);
    for (std::size_t a = 0; a < db; ++a) {
      Vec ea(db, Scalar(0));
      ea[a] = 1;
      // tr(beta(b) a) = (-1)^{pi b} b tr(a)
      Vec lhs = td.apply(multiply_vec(big, beta_img[b], ea));
      Vec eb(ds, Scalar(0));
      eb[b] = 1;
      Vec rhs = multiply_vec(sub, eb, tr_of_basis[a]);
      bool ok = true;
      for (std::size_t i = 0; i < ds; ++i)
        if (lhs[i] != shift_sign * rhs[i]) ok = false;
      if (!ok) {
        if (left_fails == 0) left_witness = "(" + sub.basis[b] + "," + big.basis[a] + ")";
        ++left_fails;
      }
      // tr(a alpha(b)) = tr(a) b
      Vec lhs2 = td.apply(multiply_vec(big, ea, alpha_img[b]));
      Vec rhs2 = multiply_vec(sub, tr_of_basis[a], eb);
      if (lhs2 != rhs2) {
        if (right_fails == 0) right_witness = "(" + sub.basis[b] + "," + big.basis[a] + ")";
        ++right_fails;
      }
    }
  }
  rep.add(stage, "bimodule_left", left_fails == 0,
          left_fails == 0 ? "" : "first witness " + left_witness + ", " +
                                     std::to_string(left_fails) + " failure(s)");
  rep.add(stage, "bimodule_right", right_fails == 0,
          right_fails == 0 ? "" : "first witness " + right_witness + ", " +
                                      std::to_string(right_fails) + " failure(s)");

  std::size_t hom_fails = 0;
  std::string hom_witness;
  for (std::size_t a = 0; a < db; ++a) {
    const Degree expect = degree_add(big.degrees[a], td.degree);
    for (std::size_t i = 0; i < ds; ++i)
      if (!is_zero(tr_of_basis[a][i]) && !(sub.degrees[i] == expect)) {
        if (hom_fails == 0) hom_witness = big.basis[a];
        ++hom_fails;
      }
  }
  rep.add(stage, "homogeneous", hom_fails == 0,
          hom_fails == 0 ? "degree " + to_string(td.degree)
                         : "first witness " + hom_witness + ", " + std::to_string(hom_fails) +
                               " failure(s)");
  return rep;
}

namespace {

// Pairing values tr(e_i e_j) for all big-basis pairs, in sub coordinates.
std::vector<Vec> pairing_table(const TraceData& td) {
  const AlgebraSpec& big = *td.big;
  const std::size_t db = big.dim();
  std::vector<Vec> table(db * db);
  struct Ctx {
    const TraceData* td;
    std::vector<Vec>* table;
  } ctx{&td, &table};
  parallel_for(db, &ctx, [](std::size_t i, const void* p) {
    const Ctx& c = *static_cast<const Ctx*>(p);
    const AlgebraSpec& bg = *c.td->big;
    const std::size_t n = bg.dim();
    for (std::size_t j = 0; j < n; ++j) {
      Vec prod(n, Scalar(0));
      for (const auto& [l, s] : bg.product(i, j)) prod[l] = s;
      (*c.table)[i * n + j] = c.td->apply(prod);
    }
  });
  return table;
}

}  // namespace

Report verify_T1(const TraceData& td, const std::string& stage) {
  Report rep;
  const std::size_t ds = td.sub->dim(), db = td.big->dim();
  auto table = pairing_table(td);
  Matrix pairing(db * ds, db);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t c = 0; c < ds; ++c) pairing.at(i * ds + c, j) = table[i * db + j][c];
  Subspace k = kernel(pairing);
  bool pass = k.dim() == 0;
  rep.add(stage, "T1", pass,
          pass ? "pairing has full rank " + std::to_string(db)
               : "kernel witness a = " + lincomb_string(*td.big, k.basis.front()));
  return rep;
}

Report verify_T2(const TraceData& td, const std::string& stage) {
  Report rep;
  const AlgebraSpec& sub = *td.sub;
  const AlgebraSpec& big = *td.big;
  const std::size_t ds = sub.dim(), db = big.dim();

  auto src = std::make_shared<const ModuleSpec>(ModuleSpec{
      td.big, ActorSpec{td.sub, td.embedding.matrix, td.left_twist}, std::nullopt,
      zero_degree(big.arity)});
  auto tgt = std::make_shared<const ModuleSpec>(ModuleSpec{
      td.sub, ActorSpec{td.sub, Matrix::identity(ds), Matrix::identity(ds)}, std::nullopt,
      td.shift()});

  std::size_t hom_total = 0, image_total = 0;
  bool pass = true;
  std::string detail;

  auto table = pairing_table(td);

  for (Parity p : {Parity::even, Parity::odd}) {
    HomSectors hs = hom_sectors(src, tgt, p);
    hom_total += hs.total_dim();

    // candidate functionals tr o rho_a, keyed by their sector degree (|a|, a)
    std::vector<std::vector<Vec>> image_rows(hs.sectors.size());
    std::size_t outside = 0;
    std::string outside_witness;
    for (std::size_t a = 0; a < db; ++a) {
      if (big.degrees[a].parity != p) continue;
      const Degree key(big.degrees[a].weight, p);
      // matrix of tr o rho_a : column m = (-1)^{a m} tr(e_m e_a)
      Matrix f(ds, db);
      for (std::size_t m = 0; m < db; ++m) {
        const int sign = koszul_sign(big.degrees[a].parity, big.degrees[m].parity);
        const Vec& t = table[m * db + a];
        for (std::size_t i = 0; i < ds; ++i)
          if (!is_zero(t[i])) f.at(i, m) = sign * t[i];
      }
      // locate the sector and scatter into its coordinates
      std::size_t sec = hs.sectors.size();
      for (std::size_t s = 0; s < hs.sectors.size(); ++s)
        if (hs.sectors[s].first == key) {
          sec = s;
          break;
        }
      if (sec == hs.sectors.size()) {
        // no sector: the functional must vanish identically
        for (std::size_t i = 0; i < ds; ++i)
          for (std::size_t m = 0; m < db; ++m)
            if (!is_zero(f.at(i, m))) {
              if (outside == 0) outside_witness = big.basis[a];
              ++outside;
            }
        continue;
      }
      const auto& support = hs.supports[sec];
      Vec row(support.size(), Scalar(0));
      Matrix left = f;  // copy to blank out supported entries, then audit the rest
      for (std::size_t k = 0; k < support.size(); ++k) {
        row[k] = f.at(support[k].first, support[k].second);
        left.at(support[k].first, support[k].second) = 0;
      }
      for (std::size_t i = 0; i < ds; ++i)
        for (std::size_t m = 0; m < db; ++m)
          if (!is_zero(left.at(i, m))) {
            if (outside == 0) outside_witness = big.basis[a];
            ++outside;
          }
      image_rows[sec].push_back(std::move(row));
    }
    if (outside) {
      pass = false;
      detail = "tr o rho_a falls outside the HOM grading, witness a = " + outside_witness;
    }
    for (std::size_t s = 0; s < hs.sectors.size() && pass; ++s) {
      Subspace image = row_space(image_rows[s], hs.sectors[s].second.ambient_dim);
      image_total += image.dim();
      if (!subspace_equal(image, hs.sectors[s].second)) {
        pass = false;
        detail = "sector " + to_string(hs.sectors[s].first) + " image dim " +
                 std::to_string(image.dim()) + " vs HOM dim " +
                 std::to_string(hs.sectors[s].second.dim());
      }
    }
    if (!pass) break;
  }
  if (pass)
    detail = "image dim = HOM dim = " + std::to_string(hom_total);
  rep.add(stage, "T2", pass, detail);
  return rep;
}

NakayamaMap compute_nakayama(const TraceData& td) {
  const AlgebraSpec& big = *td.big;
  const std::size_t ds = td.sub->dim(), db = big.dim();
  auto table = pairing_table(td);

  Matrix psi(db, db);
  for (std::size_t c = 0; c < db; ++c) {
    // homogeneous ansatz psi(e_c) = sum of z_d e_d over degree-matched d
    std::vector<std::size_t> support;
    for (std::size_t d = 0; d < db; ++d)
      if (big.degrees[d] == big.degrees[c]) support.push_back(d);

    Matrix sys(db * ds, support.size());
    Vec rhs(db * ds, Scalar(0));
    const Parity pc = big.degrees[c].parity;
    for (std::size_t a = 0; a < db; ++a) {
      const int sign = koszul_sign(big.degrees[a].parity, pc);
      for (std::size_t k = 0; k < support.size(); ++k) {
        const Vec& t = table[a * db + support[k]];
        for (std::size_t s = 0; s < ds; ++s)
          if (!is_zero(t[s])) sys.at(a * ds + s, k) = sign * t[s];
      }
      const Vec& lhs = table[c * db + a];
      for (std::size_t s = 0; s < ds; ++s) rhs[a * ds + s] = lhs[s];
    }
    auto sol = solve(sys, rhs);
    if (!sol)
      throw Error("nakayama: defining equation inconsistent at basis element '" + big.basis[c] +
                  "' (trace fails T1 or is malformed)");
    if (kernel(sys).dim() != 0)
      throw Error("nakayama: solution not unique at basis element '" + big.basis[c] +
                  "' (trace fails T1 or is malformed)");
    for (std::size_t k = 0; k < support.size(); ++k) psi.at(support[k], c) = (*sol)[k];
  }
  return NakayamaMap{std::move(psi)};
}

Report check_automorphism(const AlgebraSpec& alg, const Matrix& psi, const std::string& stage,
                          const std::string& prefix) {
  Report rep;
  const std::size_t d = alg.dim();
  if (psi.rows() != d || psi.cols() != d) {
    rep.add(stage, prefix + "shape", false, "matrix is not dim x dim");
    return rep;
  }
  rep.add(stage, prefix + "unital", psi.apply(alg.unit) == alg.unit, "");

  std::vector<Vec> img(d);
  for (std::size_t i = 0; i < d; ++i) {
    Vec ei(d, Scalar(0));
    ei[i] = 1;
    img[i] = psi.apply(ei);
  }
  std::size_t mult_fails = 0;
  std::string mult_witness;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec lhs = psi.apply(to_dense(alg.product(i, j), d));
      Vec rhs = multiply_vec(alg, img[i], img[j]);
      if (lhs != rhs) {
        if (mult_fails == 0) mult_witness = alg.basis[i] + "*" + alg.basis[j];
        ++mult_fails;
      }
    }
  rep.add(stage, prefix + "multiplicative", mult_fails == 0,
          mult_fails == 0 ? "" : "first witness " + mult_witness + ", " +
                                     std::to_string(mult_fails) + " failure(s)");

  std::size_t deg_fails = 0;
  std::string deg_witness;
  for (std::size_t i = 0; i < d; ++i) {
    auto dg = homogeneous_degree(alg, img[i]);
    if (!dg || !(*dg == alg.degrees[i])) {
      if (deg_fails == 0) deg_witness = alg.basis[i];
      ++deg_fails;
    }
  }
  rep.add(stage, prefix + "degree", deg_fails == 0,
          deg_fails == 0 ? "" : "first witness " + deg_witness + ", " +
                                    std::to_string(deg_fails) + " failure(s)");

  rep.add(stage, prefix + "invertible", rank(psi) == d, "");
  return rep;
}

DualGenerators compute_dual_generators(const TraceData& td, const std::vector<Element>& x_basis) {
  if (!td.twists_trivial())
    throw Error("dual generators: the trace of B over R must be untwisted");
  const AlgebraSpec& B = *td.big;
  const std::size_t db = B.dim();
  const Degree lambda_pi = td.shift();
  const Parity pi = lambda_pi.parity;
  const std::size_t n = x_basis.size();

  std::vector<Degree> xdeg(n);
  std::vector<std::vector<std::size_t>> slots(n);
  std::vector<std::size_t> offset(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(x_basis[j].algebra == td.big) && !(*x_basis[j].algebra == B))
      throw Error("dual generators: declared basis element lives in the wrong algebra");
    auto dg = homogeneous_degree(B, x_basis[j].coeffs);
    if (!dg) throw Error("dual generators: declared basis must be homogeneous and nonzero");
    xdeg[j] = *dg;
    const Degree target = degree_sub(lambda_pi, *dg);
    for (std::size_t t = 0; t < db; ++t)
      if (B.degrees[t] == target) slots[j].push_back(t);
    offset[j + 1] = offset[j] + slots[j].size();
  }
  const std::size_t unknowns = offset[n];

  // Equations from both displayed identities, stacked; unknowns are the
  // homogeneous coordinates of the y_j.
  Matrix sys(2 * db * db, unknowns);
  Vec rhs(2 * db * db, Scalar(0));
  for (std::size_t b = 0; b < db; ++b) {
    Vec eb(db, Scalar(0));
    eb[b] = 1;
    // right identity: sum_j y_j iota(tr(x_j e_b)) = e_b
    for (std::size_t j = 0; j < n; ++j) {
      Vec r = td.apply(multiply_vec(B, x_basis[j].coeffs, eb));
      Vec ir = td.embedding.apply(r);
      for (std::size_t k = 0; k < slots[j].size(); ++k) {
        Vec et(db, Scalar(0));
        et[slots[j][k]] = 1;
        Vec col = multiply_vec(B, et, ir);
        for (std::size_t s = 0; s < db; ++s)
          if (!is_zero(col[s])) sys.at(b * db + s, offset[j] + k) = col[s];
      }
    }
    rhs[b * db + b] = 1;
    // left identity: (-1)^{pi b} sum_j (-1)^{pi x_j} iota(tr(e_b y_j)) x_j = e_b
    const int sign_b = koszul_sign(pi, B.degrees[b].parity);
    for (std::size_t j = 0; j < n; ++j) {
      const int sign_j = koszul_sign(pi, xdeg[j].parity);
      for (std::size_t k = 0; k < slots[j].size(); ++k) {
        Vec et(db, Scalar(0));
        et[slots[j][k]] = 1;
        Vec r = td.apply(multiply_vec(B, eb, et));
        Vec col = multiply_vec(B, td.embedding.apply(r), x_basis[j].coeffs);
        for (std::size_t s = 0; s < db; ++s)
          if (!is_zero(col[s]))
            sys.at((db + b) * db + s, offset[j] + k) = sign_b * sign_j * col[s];
      }
    }
    rhs[(db + b) * db + b] = 1;
  }

  auto sol = solve(sys, rhs);
  if (!sol)
    throw Error("dual generators: singular Gram system (trace is not Frobenius relative to the "
                "declared basis)");
  if (kernel(sys).dim() != 0)
    throw Error("dual generators: solution not unique for the declared basis");

  DualGenerators dg;
  dg.x = x_basis;
  dg.lambda_pi = lambda_pi;
  for (std::size_t j = 0; j < n; ++j) {
    Element y = zero_element(td.big);
    for (std::size_t k = 0; k < slots[j].size(); ++k) y.coeffs[slots[j][k]] = (*sol)[offset[j] + k];
    dg.y.push_back(std::move(y));
  }
  return dg;
}

Report verify_dual_generators(const DualGenerators& dg, const TraceData& td,
                              const std::string& stage) {
  Report rep;
  const AlgebraSpec& B = *td.big;
  const std::size_t db = B.dim();
  const Parity pi = dg.lambda_pi.parity;
  const std::size_t n = dg.x.size();

  bool deg_ok = dg.y.size() == n;
  std::string deg_witness;
  for (std::size_t j = 0; j < n && deg_ok; ++j) {
    auto dx = homogeneous_degree(B, dg.x[j].coeffs);
    auto dy = homogeneous_degree(B, dg.y[j].coeffs);
    // zero y_j carries no degree and is acceptable; nonzero must match
    if (!dx) {
      deg_ok = false;
      deg_witness = "x_" + std::to_string(j + 1);
    } else if (dy && !(*dy == degree_sub(dg.lambda_pi, *dx))) {
      deg_ok = false;
      deg_witness = "y_" + std::to_string(j + 1);
    }
  }
  rep.add(stage, "degrees", deg_ok, deg_ok ? "" : "witness " + deg_witness);

  std::size_t right_fails = 0, left_fails = 0;
  std::string right_witness, left_witness;
  for (std::size_t b = 0; b < db; ++b) {
    Vec eb(db, Scalar(0));
    eb[b] = 1;
    Vec acc_right(db, Scalar(0));
    Vec acc_left(db, Scalar(0));
    const int sign_b = koszul_sign(pi, B.degrees[b].parity);
    for (std::size_t j = 0; j < n; ++j) {
      Vec r = td.apply(multiply_vec(B, dg.x[j].coeffs, eb));
      Vec term = multiply_vec(B, dg.y[j].coeffs, td.embedding.apply(r));
      for (std::size_t s = 0; s < db; ++s) acc_right[s] += term[s];

      auto dx = homogeneous_degree(B, dg.x[j].coeffs);
      const int sign_j = dx ? koszul_sign(pi, dx->parity) : 1;
      Vec r2 = td.apply(multiply_vec(B, eb, dg.y[j].coeffs));
      Vec term2 = multiply_vec(B, td.embedding.apply(r2), dg.x[j].coeffs);
      for (std::size_t s = 0; s < db; ++s) acc_left[s] += Scalar(sign_b * sign_j) * term2[s];
    }
    if (acc_right != eb) {
      if (right_fails == 0) right_witness = B.basis[b];
      ++right_fails;
    }
    if (acc_left != eb) {
      if (left_fails == 0) left_witness = B.basis[b];
      ++left_fails;
    }
  }
  rep.add(stage, "identity_right", right_fails == 0,
          right_fails == 0 ? "b = sum y_i tr(x_i b)"
                           : "witness b = " + right_witness + ", " + std::to_string(right_fails) +
                                 " failure(s)");
  rep.add(stage, "identity_left", left_fails == 0,
          left_fails == 0 ? "b = (-1)^{pi b} sum (-1)^{pi x_i} tr(b y_i) x_i"
                          : "witness b = " + left_witness + ", " + std::to_string(left_fails) +
                                " failure(s)");
  return rep;
}

Report check_AR_identities(const Tower& tower, const TraceData& td, const NakayamaMap* psi,
                           const std::string& stage) {
  Report rep;
  const std::size_t dr = tower.R->dim();
  Matrix r_to_sub, r_to_big;
  if (*td.sub == *tower.R) {
    r_to_sub = Matrix::identity(dr);
    r_to_big = td.embedding.matrix;
  } else if (*td.sub == *tower.B && *td.big == *tower.A) {
    r_to_sub = tower.iota_RB.matrix;
    r_to_big = tower.iota_RA.matrix;
  } else {
    throw Error("check_AR_identities: trace does not match the tower levels");
  }

  std::size_t ab_fails = 0;
  std::string ab_witness;
  for (std::size_t r = 0; r < dr; ++r) {
    Vec er(dr, Scalar(0));
    er[r] = 1;
    Vec lhs = td.right_twist.apply(r_to_big.apply(er));
    Vec rhs = td.embedding.apply(td.left_twist.apply(r_to_sub.apply(er)));
    if (lhs != rhs) {
      if (ab_fails == 0) ab_witness = tower.R->basis[r];
      ++ab_fails;
    }
  }
  rep.add(stage, "alpha_eq_beta_on_R", ab_fails == 0,
          ab_fails == 0 ? "" : "witness r = " + ab_witness);

  if (psi) {
    std::size_t psi_fails = 0;
    std::string psi_witness;
    for (std::size_t r = 0; r < dr; ++r) {
      Vec er(dr, Scalar(0));
      er[r] = 1;
      Vec img = r_to_big.apply(er);
      if (psi->apply(img) != img) {
        if (psi_fails == 0) psi_witness = tower.R->basis[r];
        ++psi_fails;
      }
    }
    rep.add(stage, "psi_fixes_R", psi_fails == 0,
            psi_fails == 0 ? "" : "witness r = " + psi_witness);
  }
  return rep;
}

FreenessResult freeness_probe(const AlgebraSpec& big, const AlgebraSpec& sub,
                              const Embedding& embedding) {
  const std::size_t db = big.dim(), ds = sub.dim();
  std::vector<Vec> sub_img(ds);
  for (std::size_t b = 0; b < ds; ++b) {
    Vec eb(ds, Scalar(0));
    eb[b] = 1;
    sub_img[b] = embedding.apply(eb);
  }

  // greedily pick big-basis elements whose left-sub-span strictly grows
  SpanBuilder span(db);
  std::vector<std::size_t> chosen;
  for (std::size_t g = 0; g < db; ++g) {
    Vec eg(db, Scalar(0));
    eg[g] = 1;
    if (span.contains(eg)) continue;
    chosen.push_back(g);
    for (std::size_t b = 0; b < ds; ++b) span.insert(multiply_vec(big, sub_img[b], eg));
  }

  FreenessResult out;
  out.rank = chosen.size();
  out.basis_indices = chosen;
  if (ds * chosen.size() != db) return out;  // not even the right dimension: inconclusive

  // bijectivity of (b_j) -> sum b_j g_j from sub^m to big
  Matrix assembled(db, ds * chosen.size());
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    Vec eg(db, Scalar(0));
    eg[chosen[j]] = 1;
    for (std::size_t b = 0; b < ds; ++b) {
      Vec col = multiply_vec(big, sub_img[b], eg);
      for (std::size_t i = 0; i < db; ++i) assembled.at(i, j * ds + b) = col[i];
    }
  }
  out.free = rank(assembled) == db;
  return out;
}

}  // namespace frobex
