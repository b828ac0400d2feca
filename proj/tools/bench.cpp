// Compares the serial reference kernels against the OpenMP path on the
// heaviest workloads: the associativity scan, the T1 pairing-rank solve,
// and the full nilcoxeter:5 pipeline.

#include <chrono>
#include <cstdio>
#include <string>

#include "frobex/constructions.hpp"
#include "frobex/nested.hpp"
#include "frobex/parallel.hpp"

using namespace frobex;
using Clock = std::chrono::steady_clock;

namespace {

template <class Fn>
long long time_ms(Fn&& fn) {
  auto t0 = Clock::now();
  fn();
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

}  // namespace

int main() {
  NilcoxeterData n5 = nilcoxeter(5);
  NestedProblem tower5 = nilcoxeter_tower(5);

  struct Row {
    const char* name;
    long long serial_ms = 0, parallel_ms = 0;
  } rows[] = {
      {"check_algebra(N5)"},
      {"verify_T1(tr_5)"},
      {"verify_main_theorem(nilcoxeter:5)"},
  };

  for (ExecMode mode : {ExecMode::serial, ExecMode::parallel}) {
    set_exec_mode(mode);
    long long* slot0 = mode == ExecMode::serial ? &rows[0].serial_ms : &rows[0].parallel_ms;
    long long* slot1 = mode == ExecMode::serial ? &rows[1].serial_ms : &rows[1].parallel_ms;
    long long* slot2 = mode == ExecMode::serial ? &rows[2].serial_ms : &rows[2].parallel_ms;
    *slot0 = time_ms([&] {
      if (!check_algebra(*n5.algebra).all_pass()) std::printf("unexpected FAIL\n");
    });
    *slot1 = time_ms([&] {
      if (!verify_T1(n5.trace, "bench").all_pass()) std::printf("unexpected FAIL\n");
    });
    *slot2 = time_ms([&] {
      if (!verify_main_theorem(tower5).valid) std::printf("unexpected INVALID\n");
    });
  }

  std::printf("%-36s %10s %10s %8s\n", "workload", "serial", "openmp", "speedup");
  for (const Row& r : rows) {
    double speedup = r.parallel_ms > 0 ? double(r.serial_ms) / double(r.parallel_ms) : 0.0;
    std::printf("%-36s %8lld ms %8lld ms %7.2fx\n", r.name, r.serial_ms, r.parallel_ms, speedup);
  }
  return 0;
}
