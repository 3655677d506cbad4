#include "mdlab/kernels.hpp"

namespace mdlab::kernels {

void tabulate_serial(const BlockMap& f, std::span<std::uint32_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::uint32_t>(f(State{i}).low64());
}

void tabulate_omp(const BlockMap& f, std::span<std::uint32_t> out, int threads) {
  const auto n = static_cast<std::int64_t>(out.size());
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nt) schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(f(State{static_cast<u128>(i)}).low64());
  }
}

}  // namespace mdlab::kernels
