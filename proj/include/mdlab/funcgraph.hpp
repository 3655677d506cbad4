#pragma once

// Functional graphs of self-maps on states: rho shapes and exhaustive
// whole-graph statistics.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mdlab/md_core.hpp"

namespace mdlab {

/// Largest state size for exhaustive traversal of all 2^l nodes.
inline constexpr unsigned kMaxExhaustiveStateBits = 26;

struct RhoShape {
  std::uint64_t lambda = 0;  // tail length
  std::uint64_t mu = 1;      // cycle length

  std::uint64_t rho() const noexcept { return lambda + mu; }
  friend bool operator==(const RhoShape&, const RhoShape&) = default;
};

struct GraphSummary {
  std::uint64_t node_count = 0;
  std::uint64_t cyclic_node_count = 0;
  std::uint64_t max_tail = 0;
  std::uint64_t max_cycle = 0;
  std::uint64_t max_rho = 0;
  std::uint64_t component_count = 0;

  friend bool operator==(const GraphSummary&, const GraphSummary&) = default;
};

/// An explicit self-map on {0, ..., N-1}: line i of a table file is f(i).
class TableMap {
 public:
  explicit TableMap(std::vector<std::uint64_t> table);

  State operator()(State s) const noexcept { return State{table_[s.low64()]}; }
  std::size_t size() const noexcept { return table_.size(); }
  std::span<const std::uint64_t> table() const noexcept { return table_; }

 private:
  std::vector<std::uint64_t> table_;
};

/// Wraps a self-map and counts evaluations. Lives for one invocation.
template <class Map>
class CountingMap {
 public:
  explicit CountingMap(const Map& map) : map_(map) {}
  State operator()(State s) {
    ++calls_;
    return map_(s);
  }
  std::uint64_t calls() const noexcept { return calls_; }

 private:
  const Map& map_;
  std::uint64_t calls_ = 0;
};

template <class Map>
State iterate(Map&& f, State start, std::uint64_t k) {
  for (std::uint64_t i = 0; i < k; ++i) start = f(start);
  return start;
}

/// Outcome of Brent's power-of-two search: the cycle length, plus the first
/// position where the hare met the tortoise. That position is >= lambda.
struct CycleDetection {
  std::uint64_t mu = 0;
  std::uint64_t position = 0;
  State state;  // f^position(start)
};

/// Brent's cycle search. `visit(position, state)` sees every position the
/// hare reaches (starting with 0, start) and may return false to abandon the
/// search, in which case nullopt is returned.
template <class Map, class Visit>
std::optional<CycleDetection> detect_cycle(Map&& f, State start, Visit&& visit) {
  if (!visit(std::uint64_t{0}, start)) return std::nullopt;
  std::uint64_t power = 1;
  std::uint64_t lap = 1;
  std::uint64_t position = 1;
  State tortoise = start;
  State hare = f(start);
  if (!visit(position, hare)) return std::nullopt;
  while (tortoise != hare) {
    if (power == lap) {
      tortoise = hare;
      power *= 2;
      lap = 0;
    }
    hare = f(hare);
    ++position;
    ++lap;
    if (!visit(position, hare)) return std::nullopt;
  }
  return CycleDetection{lap, position, hare};
}

template <class Map>
CycleDetection detect_cycle(Map&& f, State start) {
  return *detect_cycle(std::forward<Map>(f), start, [](std::uint64_t, State) { return true; });
}

/// Exact (lambda, mu) of `start`: Brent for mu, then two cursors mu apart
/// walk in lockstep until they meet at the first cyclic node.
template <class Map>
RhoShape rho_shape(Map&& f, State start) {
  const std::uint64_t mu = detect_cycle(f, start).mu;
  State lead = iterate(f, start, mu);
  State trail = start;
  std::uint64_t lambda = 0;
  while (trail != lead) {
    trail = f(trail);
    lead = f(lead);
    ++lambda;
  }
  return {lambda, mu};
}

State iterate(const CompressionSpec& spec, const Block& block, State start, std::uint64_t k);
RhoShape rho_shape(const CompressionSpec& spec, const Block& block, State start);

/// Exhaustive analysis of a tabulated map f: i -> table[i].
GraphSummary graph_summary(std::span<const std::uint32_t> table);
std::vector<State> cyclic_nodes(std::span<const std::uint32_t> table);

GraphSummary graph_summary(const TableMap& map);
std::vector<State> cyclic_nodes(const TableMap& map);

/// Tabulates f_B over all 2^l states (throws DomainTooLarge above
/// kMaxExhaustiveStateBits). `threads` = 0 means the OpenMP default.
GraphSummary graph_summary(const CompressionSpec& spec, const Block& block, int threads = 1);
std::vector<State> cyclic_nodes(const CompressionSpec& spec, const Block& block, int threads = 1);

std::vector<std::uint32_t> tabulate(const CompressionSpec& spec, const Block& block, int threads = 1);

}  // namespace mdlab
