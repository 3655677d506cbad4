#pragma once

// Collision synthesis for [B]^k messages and their verification, including
// evaluation of the iterated compression at astronomically large k.

#include <concepts>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mdlab/bigrepeat.hpp"
#include "mdlab/funcgraph.hpp"
#include "mdlab/md_core.hpp"

namespace mdlab {

/// Cycle search (Brent) is refused for wider states; verification of wider
/// specs falls back to the structural argument below.
inline constexpr unsigned kMaxCycleSearchStateBits = 40;

/// Explicit repeat counts up to this size are walked directly at any width.
inline constexpr std::uint64_t kMaxDirectWalk = std::uint64_t{1} << 24;

enum class Rejection { InputTooLong };
std::string to_string(Rejection r);

struct CollisionReport {
  bool iterated_collision = false;  // equal chaining values before padding
  bool full_collision = false;      // equal digests after padding
  std::optional<Rejection> rejection;
  std::uint64_t compression_calls = 0;

  friend bool operator==(const CollisionReport&, const CollisionReport&) = default;
};

/// ([B]^lambda, [B]^(lambda+mu)) for the rho shape of iv under f_B.
std::pair<CompressedMessage, CompressedMessage> minimal_collision(const CompressionSpec& spec, const Block& block,
                                                                  State iv, std::uint64_t* calls = nullptr);

/// Same construction over any self-map standing in for f_B.
template <class Map>
  requires std::invocable<const Map&, State>
std::pair<CompressedMessage, CompressedMessage> minimal_collision(const Map& f, const Block& block, State iv) {
  const RhoShape shape = rho_shape(f, iv);
  return {CompressedMessage{block, RepeatCount::explicit_count(shape.lambda)},
          CompressedMessage{block, RepeatCount::explicit_count(BigInt(shape.lambda) + shape.mu)}};
}

/// [B]^(a + c*mu) for each c.
std::vector<CompressedMessage> collision_family(const RepeatCount& a, const BigInt& mu, const Block& block,
                                                std::span<const BigInt> cs);

/// [B]^(2^l + c * (2^l)!) for each c. Needs nothing but the block and l.
std::vector<CompressedMessage> formula_messages(const Block& block, std::uint64_t ell, std::span<const BigInt> cs);

/// [B]^(ceil(0.78 * 2^(l/2)) + c * (ceil(1.74 * 2^(l/2)))!) for even l.
/// Collides only in expectation.
std::vector<CompressedMessage> heuristic_formula_messages(const Block& block, std::uint64_t ell,
                                                          std::span<const BigInt> cs);

/// f_B^k(iv) in O(lambda + mu) compressions regardless of the size of k.
State fast_state(const CompressionSpec& spec, const Block& block, State iv, const RepeatCount& k,
                 std::uint64_t* calls = nullptr);

/// f_B^k(iv) for several k, sharing one cycle search and one walk around the
/// cycle: at most T + mu compressions where T <= 2*max(lambda+1, mu) + mu.
std::vector<State> fast_states(const CompressionSpec& spec, const Block& block, State iv,
                               std::span<const RepeatCount> ks, std::uint64_t* calls = nullptr);

/// Digest of [B]^k. Strict padding rejects with InputTooLong before any
/// compression is evaluated.
Digest full_hash(const HashSpec& spec, const CompressedMessage& m, std::uint64_t* calls = nullptr);

/// Checks both collision notions for a pair of compressed messages.
///
/// For states up to kMaxCycleSearchStateBits wide the chaining values and
/// digests are computed. For wider states (MD5, or a stand-in for a wide
/// hash) the verdict comes from the formula's own argument: two counts of the
/// same block that are both >= 2^l - 1 and differ by a multiple of
/// (2^l)! land on the same node, and equal padding then gives equal digests.
/// Throws DomainTooLarge when neither route can decide.
CollisionReport verify_collision(const HashSpec& spec, const CompressedMessage& m0, const CompressedMessage& m1);

/// Empirical success of the heuristic formula over random toy compressions:
/// the c=0 and c=1 messages are checked for an iterated collision from a
/// random iv.
struct HeuristicRate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double rate() const { return trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0; }
};
HeuristicRate heuristic_success_rate(std::uint64_t ell, std::uint64_t trials, std::uint64_t master_seed,
                                     int threads = 1);

}  // namespace mdlab
