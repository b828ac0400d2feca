#include <doctest.h>

#include <random>

#include "frobex/linalg.hpp"

using namespace frobex;

namespace {

Matrix from_rows(const std::vector<std::vector<long>>& rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.at(i, j) = Scalar(rows[i][j]);
  return m;
}

Vec from_longs(const std::vector<long>& v) {
  Vec out;
  for (long x : v) out.push_back(Scalar(x));
  return out;
}

// small deterministic random matrices with entries in {-2..2}/{1..3}
Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> num(-2, 2), den(1, 3);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = scalar_from(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("rref examples") {
  auto [e1, r1] = rref(Matrix::identity(2));
  CHECK(e1 == Matrix::identity(2));
  CHECK(r1 == 2);

  auto [e2, r2] = rref(from_rows({{1, 2}, {2, 4}}));
  CHECK(r2 == 1);
  CHECK(e2 == from_rows({{1, 2}, {0, 0}}));

  auto [e3, r3] = rref(Matrix(3, 3));
  CHECK(r3 == 0);
  CHECK(e3 == Matrix(3, 3));
}

TEST_CASE("kernel examples") {
  CHECK(kernel(Matrix::identity(3)).dim() == 0);

  Subspace full = kernel(Matrix(3, 3));
  CHECK(full.dim() == 3);
  CHECK(full.basis == std::vector<Vec>{from_longs({1, 0, 0}), from_longs({0, 1, 0}),
                                       from_longs({0, 0, 1})});

  // one equation x + y = 0: canonical echelon basis row (1, -1)
  Subspace k = kernel(from_rows({{1, 1}}));
  CHECK(k.dim() == 1);
  CHECK(k.basis == std::vector<Vec>{from_longs({1, -1})});
}

TEST_CASE("solve examples") {
  Vec v = from_longs({3, -1});
  auto s1 = solve(Matrix::identity(2), v);
  REQUIRE(s1.has_value());
  CHECK(*s1 == v);

  // underdetermined: free variables pinned to zero
  auto s2 = solve(from_rows({{1, 1}}), from_longs({2}));
  REQUIRE(s2.has_value());
  CHECK(*s2 == from_longs({2, 0}));

  auto s3 = solve(from_rows({{1}, {1}}), from_longs({1, 2}));
  CHECK(!s3.has_value());
}

TEST_CASE("subspace_equal examples") {
  CHECK(subspace_equal(row_space({from_longs({1, 0})}, 2), row_space({from_longs({2, 0})}, 2)));
  CHECK(!subspace_equal(row_space({from_longs({1, 0})}, 2), row_space({from_longs({0, 1})}, 2)));
  // full space presented in different order canonicalizes identically
  CHECK(subspace_equal(row_space({from_longs({1, 2}), from_longs({3, 1})}, 2),
                       row_space({from_longs({0, 1}), from_longs({1, 0})}, 2)));
  CHECK_THROWS_AS(subspace_equal(row_space({}, 2), row_space({}, 3)), Error);
}

TEST_CASE("rank-nullity, exact solve and idempotence on random matrices") {
  std::mt19937 rng(20240811);
  for (int iter = 0; iter < 25; ++iter) {
    std::size_t rows = 1 + rng() % 6, cols = 1 + rng() % 6;
    Matrix m = random_matrix(rng, rows, cols);

    auto [e, rk] = rref(m);
    CHECK(rk + kernel(m).dim() == cols);
    auto [e2, rk2] = rref(e);
    CHECK(e2 == e);
    CHECK(rk2 == rk);

    // a right-hand side known to be consistent
    Vec x0 = from_longs({});
    for (std::size_t j = 0; j < cols; ++j) x0.push_back(scalar_from((long)(rng() % 5) - 2));
    Vec rhs = m.apply(x0);
    auto sol = solve(m, rhs);
    REQUIRE(sol.has_value());
    CHECK(m.apply(*sol) == rhs);
  }
}

TEST_CASE("kernel vectors annihilate the matrix") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 10; ++iter) {
    Matrix m = random_matrix(rng, 4, 5);
    Subspace k = kernel(m);
    for (const Vec& v : k.basis) CHECK(m.apply(v) == Vec(4, Scalar(0)));
  }
}

TEST_CASE("SpanBuilder membership") {
  SpanBuilder sb(3);
  CHECK(sb.insert(from_longs({1, 2, 0})));
  CHECK(sb.insert(from_longs({0, 1, 1})));
  CHECK(!sb.insert(from_longs({2, 5, 1})));  // dependent
  CHECK(sb.dim() == 2);
  CHECK(sb.contains(from_longs({1, 3, 1})));
  CHECK(!sb.contains(from_longs({0, 0, 1})));
}
