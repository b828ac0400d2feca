#ifndef FROBEX_PARALLEL_HPP
#define FROBEX_PARALLEL_HPP

#include <cstddef>

namespace frobex {

/// Execution mode for the data-parallel kernels. Every kernel has a serial
/// reference path and an OpenMP path producing bit-identical results (all
/// parallel iterations write disjoint slots); tests compare the two.
enum class ExecMode { serial, parallel };

void set_exec_mode(ExecMode m);
ExecMode exec_mode();

/// Runs fn(i) for i in [0, n). Parallelized over i when the current mode is
/// parallel and OpenMP is compiled in; iterations must be independent.
void parallel_for(std::size_t n, const void* tag, void (*fn)(std::size_t, const void*));

template <class Fn>
void for_each_index(std::size_t n, Fn&& fn) {
  const Fn& ref = fn;
  parallel_for(n, &ref, [](std::size_t i, const void* ctx) { (*static_cast<const Fn*>(ctx))(i); });
}

}  // namespace frobex

#endif
