#include "mdlab/stats.hpp"

#include <cmath>
#include <numbers>

#include "mdlab/errors.hpp"
#include "mdlab/kernels.hpp"
#include "mdlab/mix.hpp"

namespace mdlab {

namespace {

constexpr unsigned kSampleBlockBits = 32;

double rel_err(double measured, double expected) { return std::abs(measured - expected) / expected; }

void check_ell(unsigned ell, MappingMode mode) {
  if (ell < 1) throw ContractViolation("state size must be positive");
  if (ell > kMaxSampleStateBits) throw DomainTooLarge("sampling needs l <= " + std::to_string(kMaxSampleStateBits));
  if (mode == MappingMode::UniformTable && ell > kMaxUniformTableStateBits) {
    throw DomainTooLarge("uniform table mode needs l <= " + std::to_string(kMaxUniformTableStateBits));
  }
}

}  // namespace

NodeExpectation expected_node_stats(double node_count) {
  if (node_count < 1) throw ContractViolation("node count must be positive");
  const double tail = std::sqrt(std::numbers::pi * node_count / 8.0);
  return {tail, tail, 2.0 * tail};
}

GraphExpectation expected_graph_stats(double node_count) {
  if (node_count < 1) throw ContractViolation("node count must be positive");
  const double root = std::sqrt(node_count);
  return {std::sqrt(std::numbers::pi * node_count / 2.0), 0.78 * root, 1.74 * root, 2.41 * root};
}

SampleDraw draw_sample(unsigned ell, std::uint64_t master_seed, std::uint64_t index) {
  const std::uint64_t seed = split_seed(master_seed, index);
  return {seed, State{mix64(seed ^ kGolden) & low_bits_mask(ell)}};
}

std::vector<std::uint32_t> uniform_table(unsigned ell, std::uint64_t seed) {
  std::vector<std::uint32_t> table(std::size_t{1} << ell);
  std::uint64_t x = seed;
  for (auto& v : table) {
    x += kGolden;
    v = static_cast<std::uint32_t>(mix64(x) & low_bits_mask(ell));
  }
  return table;
}

RhoShape sample_rho(unsigned ell, MappingMode mode, std::uint64_t master_seed, std::uint64_t index) {
  check_ell(ell, mode);
  const SampleDraw draw = draw_sample(ell, master_seed, index);
  if (mode == MappingMode::Toy) {
    return rho_shape(CompressionSpec::toy(draw.seed, ell, kSampleBlockBits), Block::zero(kSampleBlockBits),
                     draw.start);
  }
  const auto table = uniform_table(ell, draw.seed);
  return rho_shape([&](State s) { return State{table[s.low64()]}; }, draw.start);
}

GraphSummary sample_graph(unsigned ell, MappingMode mode, std::uint64_t master_seed, std::uint64_t index) {
  check_ell(ell, mode);
  if (ell > kMaxGraphTrialStateBits) {
    throw DomainTooLarge("graph trials need l <= " + std::to_string(kMaxGraphTrialStateBits));
  }
  const SampleDraw draw = draw_sample(ell, master_seed, index);
  if (mode == MappingMode::Toy) {
    return graph_summary(CompressionSpec::toy(draw.seed, ell, kSampleBlockBits), Block::zero(kSampleBlockBits));
  }
  return graph_summary(uniform_table(ell, draw.seed));
}

NodeStatsReport sample_node_stats(unsigned ell, std::uint64_t sample_count, std::uint64_t master_seed,
                                  MappingMode mode, int threads) {
  check_ell(ell, mode);
  if (sample_count < 1) throw ContractViolation("sample count must be positive");
  const auto shapes = kernels::map_indices<RhoShape>(
      sample_count, threads, [&](std::uint64_t i) { return sample_rho(ell, mode, master_seed, i); });

  NodeStatsReport r;
  r.node_count = std::uint64_t{1} << ell;
  r.sample_count = sample_count;
  for (const RhoShape& s : shapes) {
    r.sum_lambda += s.lambda;
    r.sum_mu += s.mu;
  }
  const auto n = static_cast<double>(sample_count);
  r.mean_lambda = static_cast<double>(r.sum_lambda) / n;
  r.mean_mu = static_cast<double>(r.sum_mu) / n;
  r.mean_rho = static_cast<double>(r.sum_lambda + r.sum_mu) / n;
  r.expected = expected_node_stats(static_cast<double>(r.node_count));
  r.rel_err_lambda = rel_err(r.mean_lambda, r.expected.lambda);
  r.rel_err_mu = rel_err(r.mean_mu, r.expected.mu);
  r.rel_err_rho = rel_err(r.mean_rho, r.expected.rho);
  return r;
}

GraphStatsReport sample_graph_stats(unsigned ell, std::uint64_t trial_count, std::uint64_t master_seed,
                                    MappingMode mode, int threads) {
  check_ell(ell, mode);
  if (ell > kMaxGraphTrialStateBits) {
    throw DomainTooLarge("graph trials need l <= " + std::to_string(kMaxGraphTrialStateBits));
  }
  if (trial_count < 1) throw ContractViolation("trial count must be positive");
  const auto summaries = kernels::map_indices<GraphSummary>(
      trial_count, threads, [&](std::uint64_t i) { return sample_graph(ell, mode, master_seed, i); });

  std::uint64_t cyclic = 0, tail = 0, cycle = 0, rho = 0;
  for (const GraphSummary& g : summaries) {
    cyclic += g.cyclic_node_count;
    tail += g.max_tail;
    cycle += g.max_cycle;
    rho += g.max_rho;
  }
  GraphStatsReport r;
  r.node_count = std::uint64_t{1} << ell;
  r.trial_count = trial_count;
  const auto n = static_cast<double>(trial_count);
  r.mean_cyclic = static_cast<double>(cyclic) / n;
  r.mean_max_tail = static_cast<double>(tail) / n;
  r.mean_max_cycle = static_cast<double>(cycle) / n;
  r.mean_max_rho = static_cast<double>(rho) / n;
  r.expected = expected_graph_stats(static_cast<double>(r.node_count));
  r.rel_err_cyclic = rel_err(r.mean_cyclic, r.expected.cyclic);
  r.rel_err_max_tail = rel_err(r.mean_max_tail, r.expected.max_tail);
  r.rel_err_max_cycle = rel_err(r.mean_max_cycle, r.expected.max_cycle);
  r.rel_err_max_rho = rel_err(r.mean_max_rho, r.expected.max_rho);
  return r;
}

}  // namespace mdlab
