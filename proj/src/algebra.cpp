#include "frobex/algebra.hpp"

#include <algorithm>

#include "frobex/parallel.hpp"

namespace frobex {

SparseVec to_sparse(const Vec& dense) {
  SparseVec s;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (!is_zero(dense[i])) s.emplace_back(static_cast<std::uint32_t>(i), dense[i]);
  return s;
}

Vec to_dense(const SparseVec& sparse, std::size_t dim) {
  Vec v(dim, Scalar(0));
  for (const auto& [i, c] : sparse) v[i] = c;
  return v;
}

std::optional<std::size_t> AlgebraSpec::label_index(const std::string& label) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == label) return i;
  return std::nullopt;
}

AlgebraPtr make_algebra(AlgebraSpec spec) {
  const std::size_t d = spec.basis.size();
  if (d == 0) throw Error("algebra '" + spec.name + "': zero-dimensional algebras are rejected (no unit)");
  if (spec.degrees.size() != d)
    throw Error("algebra '" + spec.name + "': one degree per basis element required");
  for (const auto& deg : spec.degrees)
    if (deg.arity() != spec.arity)
      throw Error("algebra '" + spec.name + "': degree arity mismatch");
  if (spec.unit.size() != d) throw Error("algebra '" + spec.name + "': unit vector length mismatch");
  bool unit_nonzero = false;
  for (const auto& c : spec.unit) unit_nonzero = unit_nonzero || !is_zero(c);
  if (!unit_nonzero) throw Error("algebra '" + spec.name + "': unit must be nonzero");
  if (spec.products.size() != d * d)
    throw Error("algebra '" + spec.name + "': structure constants must cover all ordered pairs");
  for (const auto& p : spec.products)
    for (const auto& [i, c] : p)
      if (i >= d || is_zero(c)) throw Error("algebra '" + spec.name + "': malformed structure constants");
  // duplicate labels would make references ambiguous
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (spec.basis[i] == spec.basis[j])
        throw Error("algebra '" + spec.name + "': duplicate basis label '" + spec.basis[i] + "'");
  return std::make_shared<const AlgebraSpec>(std::move(spec));
}

bool Element::is_zero() const {
  for (const auto& c : coeffs)
    if (!frobex::is_zero(c)) return false;
  return true;
}

bool Element::operator==(const Element& o) const {
  return coeffs == o.coeffs && (algebra == o.algebra || *algebra == *o.algebra);
}

Element zero_element(const AlgebraPtr& a) { return {a, Vec(a->dim(), Scalar(0))}; }

Element unit_element(const AlgebraPtr& a) { return {a, a->unit}; }

Element basis_element(const AlgebraPtr& a, std::size_t i) {
  Element e = zero_element(a);
  e.coeffs[i] = 1;
  return e;
}

Element add(const Element& x, const Element& y) {
  if (x.algebra != y.algebra && !(*x.algebra == *y.algebra))
    throw Error("add: elements of different algebras");
  Element r = x;
  for (std::size_t i = 0; i < r.coeffs.size(); ++i) r.coeffs[i] += y.coeffs[i];
  return r;
}

Element scale(const Scalar& c, const Element& x) {
  Element r = x;
  for (auto& v : r.coeffs) v *= c;
  return r;
}

Vec multiply_vec(const AlgebraSpec& a, const Vec& x, const Vec& y) {
  const std::size_t d = a.dim();
  if (x.size() != d || y.size() != d) throw Error("multiply: coefficient length mismatch");
  Vec out(d, Scalar(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (is_zero(x[i])) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (is_zero(y[j])) continue;
      const Scalar xy = x[i] * y[j];
      for (const auto& [l, c] : a.product(i, j)) out[l] += xy * c;
    }
  }
  return out;
}

Element multiply(const Element& x, const Element& y) {
  if (x.algebra != y.algebra && !(*x.algebra == *y.algebra))
    throw Error("multiply: elements of different algebras");
  return {x.algebra, multiply_vec(*x.algebra, x.coeffs, y.coeffs)};
}

std::optional<Degree> homogeneous_degree(const AlgebraSpec& a, const Vec& coeffs) {
  std::optional<Degree> deg;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (is_zero(coeffs[i])) continue;
    if (!deg)
      deg = a.degrees[i];
    else if (!(*deg == a.degrees[i]))
      return std::nullopt;
  }
  return deg;
}

std::string lincomb_string(const AlgebraSpec& a, const Vec& coeffs) {
  std::string s;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (is_zero(coeffs[i])) continue;
    if (!s.empty()) s += " + ";
    if (coeffs[i] == 1)
      s += a.basis[i];
    else
      s += to_string(coeffs[i]) + "*" + a.basis[i];
  }
  return s.empty() ? "0" : s;
}

Vec Embedding::apply(const Vec& source_coeffs) const { return matrix.apply(source_coeffs); }

Element Embedding::apply(const Element& e) const {
  return {target, matrix.apply(e.coeffs)};
}

bool Embedding::operator==(const Embedding& o) const {
  return matrix == o.matrix && *source == *o.source && *target == *o.target;
}

Embedding identity_embedding(const AlgebraPtr& a) {
  return {a, a, Matrix::identity(a->dim())};
}

Embedding compose(const Embedding& second, const Embedding& first) {
  if (!(*second.source == *first.target)) throw Error("compose: embeddings do not chain");
  return {first.source, second.target, second.matrix.multiply(first.matrix)};
}

bool Tower::operator==(const Tower& o) const {
  return *R == *o.R && *B == *o.B && *A == *o.A && iota_RB == o.iota_RB && iota_BA == o.iota_BA;
}

Tower make_tower(AlgebraPtr R, AlgebraPtr B, AlgebraPtr A, Embedding iota_RB, Embedding iota_BA) {
  Embedding composite = compose(iota_BA, iota_RB);
  return Tower{std::move(R), std::move(B), std::move(A), std::move(iota_RB), std::move(iota_BA),
               std::move(composite)};
}

namespace {

std::string witness_pair(const AlgebraSpec& a, std::size_t i, std::size_t j) {
  return a.basis[i] + "*" + a.basis[j];
}

}  // namespace

Report check_algebra(const AlgebraSpec& a, const std::string& stage, const std::string& prefix) {
  Report rep;
  const std::size_t d = a.dim();

  // unit law
  {
    std::size_t fails = 0;
    std::string witness;
    for (std::size_t j = 0; j < d; ++j) {
      Vec left = multiply_vec(a, a.unit, to_dense({{static_cast<std::uint32_t>(j), Scalar(1)}}, d));
      Vec right = multiply_vec(a, to_dense({{static_cast<std::uint32_t>(j), Scalar(1)}}, d), a.unit);
      Vec ej(d, Scalar(0));
      ej[j] = 1;
      if (left != ej || right != ej) {
        if (fails == 0) witness = a.basis[j];
        ++fails;
      }
    }
    rep.add(stage, prefix + "unit", fails == 0,
            fails == 0 ? "" : "first witness " + witness + ", " + std::to_string(fails) + " failure(s)");
  }

  // associativity on all basis triples; hot loop, parallel over i
  {
    std::vector<std::size_t> fail_count(d, 0);
    std::vector<std::string> first_witness(d);
    struct Ctx {
      const AlgebraSpec* a;
      std::vector<std::size_t>* fails;
      std::vector<std::string>* witness;
    } ctx{&a, &fail_count, &first_witness};
    parallel_for(d, &ctx, [](std::size_t i, const void* p) {
      const Ctx& c = *static_cast<const Ctx*>(p);
      const AlgebraSpec& alg = *c.a;
      const std::size_t n = alg.dim();
      Vec scratch(n, Scalar(0));
      std::vector<std::uint32_t> touched;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          for (const auto& [l, s] : alg.product(i, j))
            for (const auto& [t, u] : alg.product(l, k)) {
              if (is_zero(scratch[t])) touched.push_back(t);
              scratch[t] += s * u;
            }
          for (const auto& [m, s] : alg.product(j, k))
            for (const auto& [t, u] : alg.product(i, m)) {
              if (is_zero(scratch[t])) touched.push_back(t);
              scratch[t] -= s * u;
            }
          bool ok = true;
          for (auto t : touched) {
            if (!is_zero(scratch[t])) ok = false;
            scratch[t] = 0;
          }
          touched.clear();
          if (!ok) {
            if ((*c.fails)[i] == 0)
              (*c.witness)[i] = "(" + alg.basis[i] + "," + alg.basis[j] + "," + alg.basis[k] + ")";
            ++(*c.fails)[i];
          }
        }
    });
    std::size_t total = 0;
    std::string witness;
    for (std::size_t i = 0; i < d; ++i) {
      if (fail_count[i] && witness.empty()) witness = first_witness[i];
      total += fail_count[i];
    }
    rep.add(stage, prefix + "assoc", total == 0,
            total == 0 ? std::to_string(d * d * d) + " triples"
                       : "first witness " + witness + ", " + std::to_string(total) + " failure(s)");
  }

  // grading compatibility of every structure constant
  {
    std::size_t fails = 0;
    std::string witness;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        Degree expect = degree_add(a.degrees[i], a.degrees[j]);
        for (const auto& [l, c] : a.product(i, j))
          if (!(a.degrees[l] == expect)) {
            if (fails == 0) witness = witness_pair(a, i, j);
            ++fails;
          }
      }
    rep.add(stage, prefix + "grading", fails == 0,
            fails == 0 ? "" : "first witness " + witness + ", " + std::to_string(fails) + " failure(s)");
  }
  return rep;
}

Report check_supercommutative(const AlgebraSpec& a, const std::string& stage,
                              const std::string& prefix) {
  Report rep;
  const std::size_t d = a.dim();
  std::size_t fails = 0;
  std::string witness;
  Vec scratch(d, Scalar(0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const int sign = koszul_sign(a.degrees[i].parity, a.degrees[j].parity);
      std::fill(scratch.begin(), scratch.end(), Scalar(0));
      for (const auto& [l, c] : a.product(i, j)) scratch[l] += c;
      for (const auto& [l, c] : a.product(j, i)) scratch[l] -= sign * c;
      for (const auto& v : scratch)
        if (!is_zero(v)) {
          if (fails == 0) witness = witness_pair(a, i, j);
          ++fails;
          break;
        }
    }
  rep.add(stage, prefix + "supercommutative", fails == 0,
          fails == 0 ? "" : "first witness " + witness + ", " + std::to_string(fails) + " failure(s)");
  return rep;
}

Report check_embedding(const Embedding& e, const std::string& stage, const std::string& prefix) {
  Report rep;
  const AlgebraSpec& src = *e.source;
  const AlgebraSpec& tgt = *e.target;
  const std::size_t ds = src.dim(), dt = tgt.dim();
  if (e.matrix.rows() != dt || e.matrix.cols() != ds) {
    rep.add(stage, prefix + "shape", false, "matrix shape mismatch");
    return rep;
  }

  rep.add(stage, prefix + "injective", rank(e.matrix) == ds,
          "column rank vs " + std::to_string(ds));

  rep.add(stage, prefix + "unital", e.apply(src.unit) == tgt.unit, "");

  std::vector<Vec> image(ds);
  for (std::size_t i = 0; i < ds; ++i) {
    Vec ei(ds, Scalar(0));
    ei[i] = 1;
    image[i] = e.apply(ei);
  }
  {
    std::size_t fails = 0;
    std::string witness;
    for (std::size_t i = 0; i < ds; ++i)
      for (std::size_t j = 0; j < ds; ++j) {
        Vec lhs = e.apply(to_dense(src.product(i, j), ds));
        Vec rhs = multiply_vec(tgt, image[i], image[j]);
        if (lhs != rhs) {
          if (fails == 0) witness = witness_pair(src, i, j);
          ++fails;
        }
      }
    rep.add(stage, prefix + "multiplicative", fails == 0,
            fails == 0 ? "" : "first witness " + witness + ", " + std::to_string(fails) + " failure(s)");
  }
  {
    std::size_t fails = 0;
    std::string witness;
    for (std::size_t i = 0; i < ds; ++i) {
      auto deg = homogeneous_degree(tgt, image[i]);
      if (!deg || !(*deg == src.degrees[i])) {
        if (fails == 0) witness = src.basis[i];
        ++fails;
      }
    }
    rep.add(stage, prefix + "degree", fails == 0,
            fails == 0 ? "" : "first witness " + witness + ", " + std::to_string(fails) + " failure(s)");
  }
  return rep;
}

Report validate_tower(const Tower& t) {
  Report rep;
  rep.append(check_algebra(*t.R, "tower", "R_"));
  rep.append(check_algebra(*t.B, "tower", "B_"));
  rep.append(check_algebra(*t.A, "tower", "A_"));
  rep.append(check_supercommutative(*t.R, "tower", "R_"));
  rep.append(check_embedding(t.iota_RB, "tower", "embed_RB_"));
  rep.append(check_embedding(t.iota_BA, "tower", "embed_BA_"));
  rep.add("tower", "embed_RA_composite",
          t.iota_RA.matrix == t.iota_BA.matrix.multiply(t.iota_RB.matrix), "");
  return rep;
}

Report check_centralizer_full(const Tower& t) {
  Report rep;
  const std::size_t dr = t.R->dim(), da = t.A->dim();
  std::size_t fails = 0;
  std::string witness;
  for (std::size_t r = 0; r < dr; ++r) {
    Vec rimg(da, Scalar(0));
    for (std::size_t i = 0; i < da; ++i) rimg[i] = t.iota_RA.matrix.at(i, r);
    for (std::size_t a = 0; a < da; ++a) {
      Vec ea(da, Scalar(0));
      ea[a] = 1;
      Vec lhs = multiply_vec(*t.A, rimg, ea);
      Vec rhs = multiply_vec(*t.A, ea, rimg);
      const int sign = koszul_sign(t.R->degrees[r].parity, t.A->degrees[a].parity);
      bool ok = true;
      for (std::size_t i = 0; i < da; ++i)
        if (lhs[i] != sign * rhs[i]) ok = false;
      if (!ok) {
        if (fails == 0) witness = "(" + t.R->basis[r] + "," + t.A->basis[a] + ")";
        ++fails;
      }
    }
  }
  rep.add("tower", "centralizer", fails == 0,
          fails == 0 ? "C_A(R) = A"
                     : "first witness " + witness + ", " + std::to_string(fails) + " failure(s)");
  return rep;
}

namespace {

// Span of all words in the given generators (unit included), built by
// closing under right multiplication.
SpanBuilder generated_subalgebra(const AlgebraSpec& a, const std::vector<std::size_t>& gens) {
  const std::size_t d = a.dim();
  SpanBuilder span(d);
  std::vector<Vec> worklist;
  span.insert(a.unit);
  worklist.push_back(a.unit);
  while (!worklist.empty()) {
    Vec w = std::move(worklist.back());
    worklist.pop_back();
    for (std::size_t g : gens) {
      Vec eg(d, Scalar(0));
      eg[g] = 1;
      Vec prod = multiply_vec(a, w, eg);
      if (span.insert(prod)) worklist.push_back(std::move(prod));
    }
  }
  return span;
}

}  // namespace

std::vector<std::size_t> generating_basis_indices(const AlgebraSpec& a) {
  const std::size_t d = a.dim();
  std::vector<std::size_t> gens;
  SpanBuilder span = generated_subalgebra(a, gens);
  for (std::size_t i = 0; i < d; ++i) {
    Vec ei(d, Scalar(0));
    ei[i] = 1;
    if (!span.contains(ei)) {
      gens.push_back(i);
      span = generated_subalgebra(a, gens);
    }
  }
  return gens;
}

}  // namespace frobex
