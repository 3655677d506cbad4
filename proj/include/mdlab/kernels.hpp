#pragma once

// Data-parallel kernels. Each OpenMP kernel has a serial reference that the
// tests hold it to; results never depend on the thread count.

#include <cstdint>
#include <span>
#include <vector>

#include <omp.h>

#include "mdlab/md_core.hpp"

namespace mdlab::kernels {

/// out[i] = f(i) for every state i < out.size().
void tabulate_serial(const BlockMap& f, std::span<std::uint32_t> out);
void tabulate_omp(const BlockMap& f, std::span<std::uint32_t> out, int threads);

/// Evaluates fn(i) for i in [0, n) and returns the results in index order.
template <class T, class Fn>
std::vector<T> map_indices_serial(std::uint64_t n, Fn&& fn) {
  std::vector<T> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) out.push_back(fn(i));
  return out;
}

template <class T, class Fn>
std::vector<T> map_indices_omp(std::uint64_t n, int threads, Fn&& fn) {
  std::vector<T> out(n);
  const auto count = static_cast<std::int64_t>(n);
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nt) schedule(dynamic, 1)
  for (std::int64_t i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::uint64_t>(i));
  return out;
}

/// Serial when threads == 1, OpenMP otherwise (0 = OpenMP default).
template <class T, class Fn>
std::vector<T> map_indices(std::uint64_t n, int threads, Fn&& fn) {
  if (threads == 1) return map_indices_serial<T>(n, fn);
  return map_indices_omp<T>(n, threads, fn);
}

}  // namespace mdlab::kernels
