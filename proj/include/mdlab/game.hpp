#pragma once

// The collision game over a keyed toy hash family, with a formula adversary
// that never looks at the key and a birthday-search baseline.

#include <cstdint>
#include <variant>
#include <vector>

#include "mdlab/collide.hpp"

namespace mdlab {

enum class KeyVisibility { KeyGiven, KeyBlind };

struct GameConfig {
  unsigned ell = 12;
  unsigned block_bits = 32;
  PaddingSpec padding = PaddingSpec::truncating(16);
  KeyVisibility key_visibility = KeyVisibility::KeyBlind;
  std::uint64_t trial_count = 100;
  std::uint64_t master_seed = 0;
  /// Whether a compressed [B]^k counts as "outputting" the message. Both
  /// interpretations are always reported; this picks the headline win rate.
  bool allow_compressed_output = true;
  /// Longest message, in bits, an adversary could write out in full.
  std::uint64_t written_out_limit_bits = std::uint64_t{1} << 32;
  int threads = 1;

  void validate() const;
};

/// Keyed family member for a key: a toy compression seeded by the key, with
/// state size min(l, 64), iv 0 and full-width output.
HashSpec keyed_hash(const GameConfig& config, std::uint64_t key);

struct FormulaAdversary {
  BigInt c1 = 0;
  BigInt c2 = 1;
};

struct BirthdayAdversary {
  std::uint64_t max_queries = 0;
};

using Adversary = std::variant<FormulaAdversary, BirthdayAdversary>;

/// Messages produced by the formula adversary. Depends on (l, b, c1, c2) only.
std::pair<CompressedMessage, CompressedMessage> formula_adversary_output(const GameConfig& config,
                                                                         const FormulaAdversary& adversary);

struct TrialRecord {
  std::uint64_t key = 0;
  bool distinct = false;
  bool collided = false;  // equal digests, no rejection
  bool win = false;
  bool win_written_out = false;
  std::uint64_t adversary_calls = 0;
  std::uint64_t verifier_calls = 0;
  CompressedMessage m0;
  CompressedMessage m1;
};

struct GameOutcome {
  std::uint64_t wins = 0;
  std::uint64_t trials = 0;
  double win_rate = 0;
  std::uint64_t wins_compressed = 0;   // compressed output admissible
  std::uint64_t wins_written_out = 0;  // messages must be written out in full
  std::uint64_t adversary_compression_calls = 0;
  std::uint64_t verifier_compression_calls = 0;
  std::vector<TrialRecord> records;
};

GameOutcome run_game(const GameConfig& config, const Adversary& adversary);

}  // namespace mdlab
