#include "mdlab/game.hpp"

#include <algorithm>
#include <unordered_map>

#include "mdlab/errors.hpp"
#include "mdlab/kernels.hpp"
#include "mdlab/mix.hpp"

namespace mdlab {

namespace {

struct Emission {
  CompressedMessage m0;
  CompressedMessage m1;
  std::uint64_t calls = 0;
};

Emission single_blocks(unsigned block_bits, std::uint64_t i, std::uint64_t j, std::uint64_t calls) {
  return {{Block::from_index(block_bits, i), RepeatCount::explicit_count(1)},
          {Block::from_index(block_bits, j), RepeatCount::explicit_count(1)},
          calls};
}

// Queries f(B_j, iv) for distinct single blocks until two chaining values
// meet. Equal-length messages get equal padding, so that is a full collision.
Emission birthday_search(const GameConfig& config, const HashSpec& spec, std::uint64_t max_queries) {
  std::unordered_map<State, std::uint64_t, StateHash> seen;
  seen.reserve(max_queries);
  for (std::uint64_t j = 0; j < max_queries; ++j) {
    const State s = BlockMap(spec.compression, Block::from_index(config.block_bits, j))(spec.iv);
    const auto [it, inserted] = seen.emplace(s, j);
    if (!inserted) return single_blocks(config.block_bits, it->second, j, j + 1);
  }
  return single_blocks(config.block_bits, 0, 1, max_queries);
}

}  // namespace

void GameConfig::validate() const {
  if (trial_count < 1) throw ContractViolation("trial count must be positive");
  if (ell < 1) throw ContractViolation("state size must be positive");
  if (block_bits == 0 || block_bits % 8 != 0) throw ContractViolation("block size must be a positive multiple of 8");
  if (padding.length_bits < 1 || padding.length_bits >= block_bits) {
    throw ContractViolation("length field must satisfy 1 <= L <= b - 1");
  }
}

HashSpec keyed_hash(const GameConfig& config, std::uint64_t key) {
  return HashSpec::toy(key, std::min(config.ell, 64U), config.block_bits, config.padding, State{0});
}

std::pair<CompressedMessage, CompressedMessage> formula_adversary_output(const GameConfig& config,
                                                                         const FormulaAdversary& adversary) {
  if (adversary.c1 == adversary.c2) throw ContractViolation("formula adversary needs c1 != c2");
  const BigInt cs[] = {adversary.c1, adversary.c2};
  auto messages = formula_messages(Block::zero(config.block_bits), config.ell, cs);
  return {std::move(messages[0]), std::move(messages[1])};
}

GameOutcome run_game(const GameConfig& config, const Adversary& adversary) {
  config.validate();
  if (const auto* f = std::get_if<FormulaAdversary>(&adversary); f && f->c1 == f->c2) {
    throw ContractViolation("formula adversary needs c1 != c2");
  }

  auto play = [&](std::uint64_t i) {
    TrialRecord rec;
    rec.key = split_seed(config.master_seed, i);
    const HashSpec spec = keyed_hash(config, rec.key);

    // The formula adversary never receives the key; a key-blind birthday
    // adversary has nothing to query and guesses.
    Emission e = std::visit(
        [&](const auto& a) -> Emission {
          using A = std::decay_t<decltype(a)>;
          if constexpr (std::is_same_v<A, FormulaAdversary>) {
            auto [m0, m1] = formula_adversary_output(config, a);
            return {std::move(m0), std::move(m1), 0};
          } else {
            if (config.key_visibility == KeyVisibility::KeyBlind) return single_blocks(config.block_bits, 0, 1, 0);
            return birthday_search(config, spec, a.max_queries);
          }
        },
        adversary);

    rec.m0 = std::move(e.m0);
    rec.m1 = std::move(e.m1);
    rec.adversary_calls = e.calls;
    rec.distinct = !(rec.m0.block == rec.m1.block && rec.m0.repeat == rec.m1.repeat);
    const CollisionReport report = verify_collision(spec, rec.m0, rec.m1);
    rec.verifier_calls = report.compression_calls;
    rec.collided = report.full_collision && !report.rejection;
    rec.win = rec.distinct && rec.collided;
    const BigInt limit = config.written_out_limit_bits;
    rec.win_written_out = rec.win && compare(rec.m0.bit_length(), limit) != std::strong_ordering::greater &&
                          compare(rec.m1.bit_length(), limit) != std::strong_ordering::greater;
    return rec;
  };

  GameOutcome out;
  out.records = kernels::map_indices<TrialRecord>(config.trial_count, config.threads, play);
  out.trials = config.trial_count;
  for (const TrialRecord& r : out.records) {
    out.wins_compressed += r.win ? 1 : 0;
    out.wins_written_out += r.win_written_out ? 1 : 0;
    out.adversary_compression_calls += r.adversary_calls;
    out.verifier_compression_calls += r.verifier_calls;
  }
  out.wins = config.allow_compressed_output ? out.wins_compressed : out.wins_written_out;
  out.win_rate = static_cast<double>(out.wins) / static_cast<double>(out.trials);
  return out;
}

}  // namespace mdlab
