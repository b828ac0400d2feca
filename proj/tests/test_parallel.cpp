#include <doctest.h>

#include <random>

#include "frobex/constructions.hpp"
#include "frobex/homspace.hpp"
#include "frobex/nested.hpp"
#include "frobex/parallel.hpp"

using namespace frobex;

namespace {

struct ModeGuard {
  ExecMode saved = exec_mode();
  ~ModeGuard() { set_exec_mode(saved); }
};

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 4);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = scalar_from(num(rng), den(rng));
  return m;
}

}  // namespace

TEST_CASE("rref: serial and parallel paths agree exactly") {
  ModeGuard guard;
  std::mt19937 rng(99);
  for (int iter = 0; iter < 8; ++iter) {
    Matrix m = random_matrix(rng, 20, 14);
    // plant dependencies so the rank is deficient
    for (std::size_t j = 0; j < 14; ++j) {
      m.at(5, j) = m.at(0, j) + m.at(1, j);
      m.at(11, j) = m.at(2, j);
    }
    set_exec_mode(ExecMode::serial);
    auto [es, rs] = rref(m);
    set_exec_mode(ExecMode::parallel);
    auto [ep, rp] = rref(m);
    CHECK(rs == rp);
    CHECK(es == ep);
  }
}

TEST_CASE("check_algebra: serial and parallel reports agree") {
  ModeGuard guard;
  auto n4 = nilcoxeter(4);
  set_exec_mode(ExecMode::serial);
  Report s = check_algebra(*n4.algebra);
  set_exec_mode(ExecMode::parallel);
  Report p = check_algebra(*n4.algebra);
  CHECK(s.render() == p.render());
  CHECK(s.all_pass());
}

TEST_CASE("hom sectors: identical subspaces under both modes") {
  ModeGuard guard;
  NestedProblem prob = nilcoxeter_tower(3);
  NakayamaMap psiA = compute_nakayama(prob.tr_A);
  NakayamaMap psiB = compute_nakayama(prob.tr_B);
  TowerBimodule m = bimodule_A(prob.tower, psiA.matrix);
  ModulePtr src = hom_source_view(m, psiB.matrix);
  ModulePtr tgt = regular_module(prob.tower.B, zero_degree(1));

  for (Parity parity : {Parity::even, Parity::odd}) {
    set_exec_mode(ExecMode::serial);
    HomSectors s = hom_sectors(src, tgt, parity);
    set_exec_mode(ExecMode::parallel);
    HomSectors p = hom_sectors(src, tgt, parity);
    REQUIRE(s.sectors.size() == p.sectors.size());
    for (std::size_t i = 0; i < s.sectors.size(); ++i) {
      CHECK(s.sectors[i].first == p.sectors[i].first);
      CHECK(s.sectors[i].second.basis == p.sectors[i].second.basis);
    }
  }
}

TEST_CASE("full pipeline output is identical under both modes") {
  ModeGuard guard;
  NestedProblem prob = builtin_problem("nilcoxeter:3");
  set_exec_mode(ExecMode::serial);
  Certificate s = verify_main_theorem(prob);
  set_exec_mode(ExecMode::parallel);
  Certificate p = verify_main_theorem(prob);
  CHECK(s.valid == p.valid);
  CHECK(s.checks.render() == p.checks.render());
  CHECK(s.summary_line() == p.summary_line());
  CHECK(s.nested_trace->matrix == p.nested_trace->matrix);
}
