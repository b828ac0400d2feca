#include <doctest.h>

#include "frobex/grading.hpp"

using namespace frobex;

TEST_CASE("koszul sign table is exhaustive over Z2 x Z2") {
  CHECK(koszul_sign(Parity::even, Parity::even) == +1);
  CHECK(koszul_sign(Parity::odd, Parity::even) == +1);
  CHECK(koszul_sign(Parity::even, Parity::odd) == +1);
  CHECK(koszul_sign(Parity::odd, Parity::odd) == -1);
}

TEST_CASE("koszul sign laws") {
  for (Parity p : {Parity::even, Parity::odd}) {
    CHECK(koszul_sign(p, Parity::even) == +1);
    for (Parity q : {Parity::even, Parity::odd}) CHECK(koszul_sign(p, q) == koszul_sign(q, p));
  }
}

TEST_CASE("degree_add") {
  CHECK(degree_add(Degree(1, Parity::odd), Degree(2, Parity::odd)) == Degree(3, Parity::even));
  Degree d({4, -1}, Parity::odd);
  CHECK(degree_add(zero_degree(2), d) == d);
  CHECK(degree_add(Degree({1, -1}, Parity::odd), Degree({0, 2}, Parity::even)) ==
        Degree({1, 1}, Parity::odd));
  CHECK_THROWS_AS(degree_add(Degree(1, Parity::even), zero_degree(2)), Error);
}

TEST_CASE("degree_add is associative and commutative with neutral element") {
  std::vector<Degree> sample;
  for (std::int64_t w : {-2, 0, 3})
    for (Parity p : {Parity::even, Parity::odd}) sample.push_back(Degree(w, p));
  for (const auto& a : sample)
    for (const auto& b : sample) {
      CHECK(degree_add(a, b) == degree_add(b, a));
      for (const auto& c : sample)
        CHECK(degree_add(degree_add(a, b), c) == degree_add(a, degree_add(b, c)));
    }
  for (const auto& a : sample) CHECK(degree_add(a, zero_degree(1)) == a);
}

TEST_CASE("degree_negate") {
  CHECK(degree_negate(Degree(3, Parity::odd)) == Degree(-3, Parity::odd));
  CHECK(degree_negate(zero_degree(1)) == zero_degree(1));
  Degree d({5, -7}, Parity::odd);
  CHECK(degree_negate(degree_negate(d)) == d);
}

TEST_CASE("degree rendering") {
  CHECK(to_string(Degree(-2, Parity::even)) == "(-2|even)");
  CHECK(to_string(Degree({1, 0}, Parity::odd)) == "(1,0|odd)");
}
