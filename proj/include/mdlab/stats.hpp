#pragma once

// Monte Carlo checks of the random-mapping asymptotics for tail, cycle and
// rho lengths, per node and per graph.

#include <cstdint>

#include "mdlab/funcgraph.hpp"

namespace mdlab {

/// Largest state size for node sampling (each sample runs a cycle search).
inline constexpr unsigned kMaxSampleStateBits = 40;
/// Largest state size for graph trials (each trial is exhaustive).
inline constexpr unsigned kMaxGraphTrialStateBits = 16;
/// Largest state size for the uniform table mapping mode.
inline constexpr unsigned kMaxUniformTableStateBits = 16;

/// How a random mapping on 2^l states is realized for sample i: a toy
/// compression keyed by the split seed with an all-zero 32-bit block, or an
/// explicit table drawn uniformly from a SplitMix64 stream.
enum class MappingMode { Toy, UniformTable };

struct NodeExpectation {
  double lambda;
  double mu;
  double rho;

  friend bool operator==(const NodeExpectation&, const NodeExpectation&) = default;
};

/// (sqrt(pi N/8), sqrt(pi N/8), sqrt(pi N/2)).
NodeExpectation expected_node_stats(double node_count);

struct GraphExpectation {
  double cyclic;     // sqrt(pi N/2)
  double max_tail;   // 0.78 sqrt(N)
  double max_cycle;  // 1.74 sqrt(N)
  double max_rho;    // 2.41 sqrt(N)

  friend bool operator==(const GraphExpectation&, const GraphExpectation&) = default;
};
GraphExpectation expected_graph_stats(double node_count);

struct NodeStatsReport {
  std::uint64_t node_count = 0;
  std::uint64_t sample_count = 0;
  std::uint64_t sum_lambda = 0;
  std::uint64_t sum_mu = 0;
  double mean_lambda = 0;
  double mean_mu = 0;
  double mean_rho = 0;
  NodeExpectation expected{};
  double rel_err_lambda = 0;
  double rel_err_mu = 0;
  double rel_err_rho = 0;

  friend bool operator==(const NodeStatsReport&, const NodeStatsReport&) = default;
};

struct GraphStatsReport {
  std::uint64_t node_count = 0;
  std::uint64_t trial_count = 0;
  double mean_cyclic = 0;
  double mean_max_tail = 0;
  double mean_max_cycle = 0;
  double mean_max_rho = 0;
  GraphExpectation expected{};
  double rel_err_cyclic = 0;
  double rel_err_max_tail = 0;
  double rel_err_max_cycle = 0;
  double rel_err_max_rho = 0;

  friend bool operator==(const GraphStatsReport&, const GraphStatsReport&) = default;
};

/// The mapping and start node used by sample i.
struct SampleDraw {
  std::uint64_t seed;
  State start;
};
SampleDraw draw_sample(unsigned ell, std::uint64_t master_seed, std::uint64_t index);

/// Uniform random table on 2^l nodes from a SplitMix64 stream.
std::vector<std::uint32_t> uniform_table(unsigned ell, std::uint64_t seed);

RhoShape sample_rho(unsigned ell, MappingMode mode, std::uint64_t master_seed, std::uint64_t index);
GraphSummary sample_graph(unsigned ell, MappingMode mode, std::uint64_t master_seed, std::uint64_t index);

NodeStatsReport sample_node_stats(unsigned ell, std::uint64_t sample_count, std::uint64_t master_seed,
                                  MappingMode mode = MappingMode::Toy, int threads = 1);
GraphStatsReport sample_graph_stats(unsigned ell, std::uint64_t trial_count, std::uint64_t master_seed,
                                    MappingMode mode = MappingMode::Toy, int threads = 1);

}  // namespace mdlab
