#include "frobex/parallel.hpp"

#include <atomic>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace frobex {

namespace {
std::atomic<ExecMode> g_mode{
#ifdef _OPENMP
    ExecMode::parallel
#else
    ExecMode::serial
#endif
};
}  // namespace

void set_exec_mode(ExecMode m) { g_mode.store(m); }
ExecMode exec_mode() { return g_mode.load(); }

void parallel_for(std::size_t n, const void* tag, void (*fn)(std::size_t, const void*)) {
#ifdef _OPENMP
  if (g_mode.load() == ExecMode::parallel && n > 1) {
    #pragma omp parallel for schedule(dynamic, 8)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      fn(static_cast<std::size_t>(i), tag);
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i, tag);
}

}  // namespace frobex
