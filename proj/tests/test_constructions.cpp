#include <doctest.h>

#include "frobex/constructions.hpp"

using namespace frobex;

namespace {

Element labeled(const AlgebraPtr& a, const std::string& label) {
  auto idx = a->label_index(label);
  REQUIRE(idx.has_value());
  return basis_element(a, *idx);
}

}  // namespace

TEST_CASE("symmetric group enumeration and lengths") {
  SymmetricGroup s3 = symmetric_group(3);
  CHECK(s3.elements.size() == 6);
  CHECK(s3.elements.front() == identity_permutation(3));
  CHECK(length(identity_permutation(3)) == 0);
  CHECK(length(longest_permutation(3)) == 3);
  CHECK(length(longest_permutation(4)) == 6);

  // ordering is by (length, lexicographic one-line)
  for (std::size_t i = 1; i < s3.elements.size(); ++i) {
    auto la = length(s3.elements[i - 1]), lb = length(s3.elements[i]);
    CHECK((la < lb || (la == lb && s3.elements[i - 1].one_line < s3.elements[i].one_line)));
  }

  // composition convention (v w)(i) = v(w(i))
  Permutation v{{2, 1, 3}}, w{{1, 3, 2}};
  Permutation vw = compose(v, w);
  CHECK(vw.one_line == std::vector<int>{2, 3, 1});
  CHECK(compose(v, inverse(v)) == identity_permutation(3));
}

TEST_CASE("lexicographically smallest reduced words") {
  CHECK(lex_min_reduced_word(identity_permutation(3)).empty());
  CHECK(lex_min_reduced_word(Permutation{{2, 1, 3}}) == std::vector<int>{1});
  CHECK(lex_min_reduced_word(longest_permutation(3)) == std::vector<int>{1, 2, 1});
  // every element: word length equals Coxeter length, and the word multiplies back
  SymmetricGroup s4 = symmetric_group(4);
  for (const auto& p : s4.elements) {
    auto word = lex_min_reduced_word(p);
    CHECK(word.size() == length(p));
    Permutation acc = identity_permutation(4);
    for (int i : word) {
      Permutation si = identity_permutation(4);
      std::swap(si.one_line[i - 1], si.one_line[i]);
      acc = compose(acc, si);
    }
    CHECK(acc == p);
  }
}

TEST_CASE("nilcoxeter: small cases and the defining relations") {
  auto n1 = nilcoxeter(1);
  CHECK(n1.algebra->dim() == 1);
  CHECK(n1.trace.matrix == Matrix::identity(1));
  CHECK(n1.trace.degree == Degree(0, Parity::even));

  auto n3 = nilcoxeter(3);
  CHECK(n3.algebra->dim() == 6);
  // tr_3 picks exactly the u_{w_0} coefficient
  for (std::size_t j = 0; j < 6; ++j) {
    Vec ej(6, Scalar(0));
    ej[j] = 1;
    Vec v = n3.trace.apply(ej);
    CHECK(v[0] == ((n3.algebra->basis[j] == "u121") ? 1 : 0));
  }
  CHECK(n3.trace.degree == Degree(-3, Parity::odd));

  // braid relation lands on the longest element
  Element u1 = labeled(n3.algebra, "u1"), u2 = labeled(n3.algebra, "u2");
  Element braid_a = multiply(multiply(u1, u2), u1);
  Element braid_b = multiply(multiply(u2, u1), u2);
  CHECK(braid_a == braid_b);
  CHECK(braid_a == labeled(n3.algebra, "u121"));

  // u_i^2 = 0, commutation for |i-j| > 1, braid for adjacent i — for n <= 5
  for (std::size_t n : {2, 3, 4, 5}) {
    auto nc = nilcoxeter(n);
    std::vector<Element> u;
    for (std::size_t i = 1; i + 1 <= n; ++i)
      u.push_back(labeled(nc.algebra, "u" + std::to_string(i)));
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(multiply(u[i], u[i]).is_zero());
      for (std::size_t j = i + 2; j < u.size(); ++j)
        CHECK(multiply(u[i], u[j]) == multiply(u[j], u[i]));
      if (i + 1 < u.size())
        CHECK(multiply(multiply(u[i], u[i + 1]), u[i]) ==
              multiply(multiply(u[i + 1], u[i]), u[i + 1]));
    }
  }
}

TEST_CASE("nilcoxeter passes the structural checks up to n = 5") {
  for (std::size_t n : {2, 3, 4, 5}) {
    auto nc = nilcoxeter(n);
    CHECK(check_algebra(*nc.algebra).all_pass());
    if (n > 1) CHECK(check_embedding(nc.sub_embedding).all_pass());
  }
}

TEST_CASE("group ring construction") {
  auto z2 = group_ring(builtin_group("Z2"), rationals(1));
  CHECK(z2.algebra->dim() == 2);
  // tr(r_e e + r_g g) = r_e
  Vec v(2, Scalar(0));
  v[0] = scalar_from(5);
  v[1] = scalar_from(7);
  CHECK(z2.trace.apply(v) == Vec{scalar_from(5)});

  auto s3 = group_ring(builtin_group("S3"), rationals(1));
  CHECK(s3.algebra->dim() == 6);
  CHECK(check_algebra(*s3.algebra).all_pass());

  auto z2ext = group_ring(builtin_group("Z2"), exterior_base(1));
  CHECK(z2ext.algebra->dim() == 4);
  auto idx = z2ext.algebra->label_index("th1.g");
  REQUIRE(idx.has_value());
  CHECK(z2ext.algebra->degrees[*idx] == Degree(0, Parity::odd));
  CHECK(check_algebra(*z2ext.algebra).all_pass());

  // non-supercommutative base is rejected
  CHECK_THROWS_AS(group_ring(builtin_group("Z2"), nilcoxeter(3).algebra), Error);
}

TEST_CASE("group ring tower assembly and subgroup validation") {
  auto p = builtin_problem("groupring:S3:A3");
  CHECK(p.tower.B->dim() == 3);
  CHECK(p.tower.A->dim() == 6);
  CHECK(validate_tower(p.tower).all_pass());

  // trivial subgroup: B has rank 1 and the nested trace collapses to tr_A
  auto pt = builtin_problem("groupring:Z2:trivial");
  CHECK(pt.tower.B->dim() == 1);
  auto cert = verify_main_theorem(pt);
  REQUIRE(cert.valid);
  CHECK(cert.nested_trace->matrix == pt.tr_A.matrix);

  // non-closed subset is rejected with the witness product
  GroupTable s3 = builtin_group("S3");
  try {
    subgroup_of(s3, "{e,t12,t13}");
    FAIL("expected rejection");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("t12*t13") != std::string::npos);
    CHECK(msg.find("c132") != std::string::npos);
  }
}

TEST_CASE("exterior base") {
  CHECK(exterior_base(0)->name == "Q");
  CHECK(exterior_base(0)->dim() == 1);

  auto e1 = exterior_base(1);
  CHECK(e1->dim() == 2);
  CHECK(multiply(basis_element(e1, 1), basis_element(e1, 1)).is_zero());

  auto e2 = exterior_base(2);
  CHECK(e2->dim() == 4);
  Element th1 = labeled(e2, "th1"), th2 = labeled(e2, "th2");
  Element ab = multiply(th1, th2);
  Element ba = multiply(th2, th1);
  CHECK(ab == scale(scalar_from(-1), ba));
  CHECK(check_algebra(*e2).all_pass());
  CHECK(check_supercommutative(*e2).all_pass());
}

TEST_CASE("builtin problem parsing") {
  CHECK(builtin_problem("nilcoxeter:3").tower.A->dim() == 6);
  CHECK_THROWS_AS(builtin_problem("nilcoxeter:0"), Error);
  CHECK_THROWS_AS(builtin_problem("nilcoxeter:3", "ext:1"), Error);
  CHECK_THROWS_AS(builtin_problem("groupring:Z5:trivial"), Error);
  CHECK_THROWS_AS(builtin_problem("groupring:Z4:Z3"), Error);
  CHECK_THROWS_AS(builtin_problem("frobnicate:1"), Error);
}
