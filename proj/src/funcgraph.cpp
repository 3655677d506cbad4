#include "mdlab/funcgraph.hpp"

#include <algorithm>
#include <limits>

#include "mdlab/errors.hpp"
#include "mdlab/kernels.hpp"

namespace mdlab {

namespace {

constexpr std::uint32_t kUnvisited = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kOnPath = kUnvisited - 1;

struct Analysis {
  GraphSummary summary;
  std::vector<State> cyclic;
};

// Iterative three-colour walk. `tail` doubles as the colour array; once a
// node is finished its entry in `next` is overwritten with its component id,
// since finished nodes are never walked through again.
Analysis analyze(std::vector<std::uint32_t> next, bool collect_cyclic) {
  const std::size_t n = next.size();
  Analysis out;
  out.summary.node_count = n;
  std::vector<std::uint32_t> tail(n, kUnvisited);
  std::vector<std::uint64_t> cycle_len;      // per component
  std::vector<std::uint64_t> component_tail; // max tail per component
  std::vector<std::uint32_t> path;

  for (std::size_t s = 0; s < n; ++s) {
    if (tail[s] != kUnvisited) continue;
    path.clear();
    std::uint32_t x = static_cast<std::uint32_t>(s);
    while (tail[x] == kUnvisited) {
      tail[x] = kOnPath;
      path.push_back(x);
      x = next[x];
    }
    std::uint32_t component;
    std::size_t tree_end = path.size();
    if (tail[x] == kOnPath) {
      // x closes a new cycle: it and everything after it on the path.
      const auto at = std::find(path.begin(), path.end(), x);
      tree_end = static_cast<std::size_t>(at - path.begin());
      const std::uint64_t mu = path.size() - tree_end;
      component = static_cast<std::uint32_t>(cycle_len.size());
      cycle_len.push_back(mu);
      component_tail.push_back(0);
      out.summary.cyclic_node_count += mu;
      for (std::size_t i = tree_end; i < path.size(); ++i) {
        tail[path[i]] = 0;
        if (collect_cyclic) out.cyclic.emplace_back(path[i]);
      }
      for (std::size_t i = tree_end; i < path.size(); ++i) next[path[i]] = component;
    } else {
      component = next[x];
    }
    for (std::size_t i = tree_end; i-- > 0;) {
      const std::uint32_t y = path[i];
      const std::uint32_t succ_tail = i + 1 < tree_end ? tail[path[i + 1]] : tail[x];
      tail[y] = succ_tail + 1;
      next[y] = component;
      component_tail[component] = std::max<std::uint64_t>(component_tail[component], tail[y]);
    }
  }

  out.summary.component_count = cycle_len.size();
  for (std::size_t c = 0; c < cycle_len.size(); ++c) {
    out.summary.max_cycle = std::max(out.summary.max_cycle, cycle_len[c]);
    out.summary.max_tail = std::max(out.summary.max_tail, component_tail[c]);
    out.summary.max_rho = std::max(out.summary.max_rho, component_tail[c] + cycle_len[c]);
  }
  std::sort(out.cyclic.begin(), out.cyclic.end());
  return out;
}

std::vector<std::uint32_t> narrow(const TableMap& map) {
  if (map.size() > (std::size_t{1} << kMaxExhaustiveStateBits)) throw DomainTooLarge("table map too large");
  return {map.table().begin(), map.table().end()};
}

void check_exhaustive(const CompressionSpec& spec) {
  if (spec.state_bits() > kMaxExhaustiveStateBits) {
    throw DomainTooLarge("exhaustive traversal needs l <= " + std::to_string(kMaxExhaustiveStateBits) + ", got " +
                         std::to_string(spec.state_bits()));
  }
}

}  // namespace

TableMap::TableMap(std::vector<std::uint64_t> table) : table_(std::move(table)) {
  if (table_.empty()) throw ContractViolation("table map needs at least one node");
  for (std::uint64_t v : table_) {
    if (v >= table_.size()) throw ContractViolation("table map value " + std::to_string(v) + " out of range");
  }
}

State iterate(const CompressionSpec& spec, const Block& block, State start, std::uint64_t k) {
  if (start.value() > spec.state_mask()) throw ContractViolation("start state does not fit the state size");
  return iterate(BlockMap(spec, block), start, k);
}

RhoShape rho_shape(const CompressionSpec& spec, const Block& block, State start) {
  if (start.value() > spec.state_mask()) throw ContractViolation("start state does not fit the state size");
  return rho_shape(BlockMap(spec, block), start);
}

GraphSummary graph_summary(std::span<const std::uint32_t> table) {
  return analyze({table.begin(), table.end()}, false).summary;
}

std::vector<State> cyclic_nodes(std::span<const std::uint32_t> table) {
  return analyze({table.begin(), table.end()}, true).cyclic;
}

GraphSummary graph_summary(const TableMap& map) { return analyze(narrow(map), false).summary; }

std::vector<State> cyclic_nodes(const TableMap& map) { return analyze(narrow(map), true).cyclic; }

std::vector<std::uint32_t> tabulate(const CompressionSpec& spec, const Block& block, int threads) {
  check_exhaustive(spec);
  const BlockMap f(spec, block);
  std::vector<std::uint32_t> table(std::size_t{1} << spec.state_bits());
  if (threads == 1) {
    kernels::tabulate_serial(f, table);
  } else {
    kernels::tabulate_omp(f, table, threads);
  }
  return table;
}

GraphSummary graph_summary(const CompressionSpec& spec, const Block& block, int threads) {
  return analyze(tabulate(spec, block, threads), false).summary;
}

std::vector<State> cyclic_nodes(const CompressionSpec& spec, const Block& block, int threads) {
  return analyze(tabulate(spec, block, threads), true).cyclic;
}

}  // namespace mdlab
