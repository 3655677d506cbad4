#include "mdlab/collide.hpp"

#include <algorithm>

#include "mdlab/errors.hpp"
#include "mdlab/kernels.hpp"
#include "mdlab/mix.hpp"

namespace mdlab {

namespace {

void check_state(const CompressionSpec& spec, State s) {
  if (s.value() > spec.state_mask()) throw ContractViolation("state does not fit the state size");
}

void check_block(const HashSpec& spec, const CompressedMessage& m) {
  if (m.block.bit_size() != spec.compression.block_bits()) {
    throw ContractViolation("message block size does not match the hash block size");
  }
}

BigInt ceil_scaled(const BigInt& value, unsigned hundredths) { return (value * hundredths + 99) / 100; }

// Sound only in one direction: true means f^k0(iv) == f^k1(iv) for every
// self-map on 2^l nodes and every iv.
bool certified_same_node(unsigned state_bits, const RepeatCount& k0, const RepeatCount& k1) {
  if (k0 == k1) return true;
  const BigInt nodes = pow2(state_bits);
  for (const RepeatCount* k : {&k0, &k1}) {
    if (compare(*k, nodes - 1) == std::strong_ordering::less) return false;  // may not reach the cycle
    if (!k->is_plain() && k->arg() < nodes) return false;                    // factorial may miss a cycle length
  }
  // Both counts are now base_i modulo every possible cycle length.
  return k0.base() == k1.base();
}

}  // namespace

std::string to_string(Rejection r) {
  switch (r) {
    case Rejection::InputTooLong:
      return "InputTooLong";
  }
  return "unknown";
}

std::pair<CompressedMessage, CompressedMessage> minimal_collision(const CompressionSpec& spec, const Block& block,
                                                                  State iv, std::uint64_t* calls) {
  check_state(spec, iv);
  const BlockMap f(spec, block);
  CountingMap counted(f);
  const RhoShape shape = rho_shape(counted, iv);
  if (calls) *calls += counted.calls();
  return {CompressedMessage{block, RepeatCount::explicit_count(shape.lambda)},
          CompressedMessage{block, RepeatCount::explicit_count(BigInt(shape.lambda) + shape.mu)}};
}

std::vector<CompressedMessage> collision_family(const RepeatCount& a, const BigInt& mu, const Block& block,
                                                std::span<const BigInt> cs) {
  if (mu < 1) throw ContractViolation("cycle length must be positive");
  std::vector<CompressedMessage> out;
  out.reserve(cs.size());
  for (const BigInt& c : cs) {
    const BigInt shift = c * mu;
    RepeatCount k = a.form() == RepeatCount::Form::Explicit
                        ? RepeatCount::explicit_count(a.base() + shift)
                        : RepeatCount::factorial(a.base() + shift, a.coeff(), a.arg());
    out.push_back({block, std::move(k)});
  }
  return out;
}

std::vector<CompressedMessage> formula_messages(const Block& block, std::uint64_t ell, std::span<const BigInt> cs) {
  if (ell < 1) throw ContractViolation("state size must be positive");
  const BigInt nodes = pow2(ell);
  std::vector<CompressedMessage> out;
  out.reserve(cs.size());
  for (const BigInt& c : cs) out.push_back({block, RepeatCount::factorial(nodes, c, nodes)});
  return out;
}

std::vector<CompressedMessage> heuristic_formula_messages(const Block& block, std::uint64_t ell,
                                                          std::span<const BigInt> cs) {
  if (ell < 2 || ell % 2 != 0) throw ContractViolation("heuristic formula needs an even state size");
  const BigInt root = pow2(ell / 2);
  const BigInt base = ceil_scaled(root, 78);
  const BigInt arg = ceil_scaled(root, 174);
  std::vector<CompressedMessage> out;
  out.reserve(cs.size());
  for (const BigInt& c : cs) out.push_back({block, RepeatCount::factorial(base, c, arg)});
  return out;
}

std::vector<State> fast_states(const CompressionSpec& spec, const Block& block, State iv,
                               std::span<const RepeatCount> ks, std::uint64_t* calls) {
  check_state(spec, iv);
  const BlockMap f(spec, block);
  CountingMap counted(f);
  std::vector<State> result(ks.size());
  std::vector<bool> done(ks.size(), false);

  std::vector<std::pair<std::uint64_t, std::size_t>> small;
  bool any_large = false;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (auto v = ks[i].to_u64()) {
      small.emplace_back(*v, i);
    } else {
      any_large = true;
    }
  }
  if (any_large && spec.state_bits() > kMaxCycleSearchStateBits) {
    throw DomainTooLarge("cycle search over 2^" + std::to_string(spec.state_bits()) + " states is out of reach");
  }
  std::sort(small.begin(), small.end());

  // Small positions are picked up while the hare passes them; the search is
  // abandoned once they are all seen and nothing larger is pending.
  std::size_t next_small = 0;
  auto visit = [&](std::uint64_t position, State s) {
    while (next_small < small.size() && small[next_small].first == position) {
      result[small[next_small].second] = s;
      done[small[next_small].second] = true;
      ++next_small;
    }
    return any_large || next_small < small.size();
  };

  if (!ks.empty()) {
    if (const auto found = detect_cycle(counted, iv, visit)) {
      // Every pending k exceeds found->position >= lambda, so
      // f^k(iv) = f^r(f^T(iv)) with r = (k - T) mod mu.
      const std::uint64_t mu = found->mu;
      const std::uint64_t t_mod = found->position % mu;
      std::vector<std::pair<std::uint64_t, std::size_t>> residues;
      for (std::size_t i = 0; i < ks.size(); ++i) {
        if (!done[i]) residues.emplace_back((reduce_mod(ks[i], mu) + mu - t_mod) % mu, i);
      }
      std::sort(residues.begin(), residues.end());
      State s = found->state;
      std::uint64_t at = 0;
      for (const auto& [r, i] : residues) {
        s = iterate(counted, s, r - at);
        at = r;
        result[i] = s;
      }
    }
  }
  if (calls) *calls += counted.calls();
  return result;
}

State fast_state(const CompressionSpec& spec, const Block& block, State iv, const RepeatCount& k,
                 std::uint64_t* calls) {
  return fast_states(spec, block, iv, std::span<const RepeatCount>(&k, 1), calls).front();
}

Digest full_hash(const HashSpec& spec, const CompressedMessage& m, std::uint64_t* calls) {
  spec.validate();
  check_block(spec, m);
  const PaddingBits padding = pad(spec.padding, spec.compression.block_bits(), m.bit_length());
  State s = fast_state(spec.compression, m.block, spec.iv, m.repeat, calls);
  s = absorb_padding(spec, s, padding, calls);
  return make_digest(spec, s);
}

CollisionReport verify_collision(const HashSpec& spec, const CompressedMessage& m0, const CompressedMessage& m1) {
  spec.validate();
  check_block(spec, m0);
  check_block(spec, m1);
  const unsigned b = spec.compression.block_bits();
  CollisionReport report;

  std::optional<PaddingBits> p0, p1;
  try {
    p0 = pad(spec.padding, b, m0.bit_length());
    p1 = pad(spec.padding, b, m1.bit_length());
  } catch (const InputTooLong&) {
    report.rejection = Rejection::InputTooLong;
  }

  auto walkable = [](const RepeatCount& k) {
    const auto v = k.to_u64();
    return v && *v <= kMaxDirectWalk;
  };
  const bool computed = spec.compression.state_bits() <= kMaxCycleSearchStateBits ||
                        (walkable(m0.repeat) && walkable(m1.repeat));

  if (computed) {
    std::uint64_t calls = 0;
    State s0, s1;
    if (m0.block == m1.block) {
      const RepeatCount ks[] = {m0.repeat, m1.repeat};
      const auto states = fast_states(spec.compression, m0.block, spec.iv, ks, &calls);
      s0 = states[0];
      s1 = states[1];
    } else {
      s0 = fast_state(spec.compression, m0.block, spec.iv, m0.repeat, &calls);
      s1 = fast_state(spec.compression, m1.block, spec.iv, m1.repeat, &calls);
    }
    report.iterated_collision = s0 == s1;
    if (!report.rejection) {
      const Digest d0 = make_digest(spec, absorb_padding(spec, s0, *p0, &calls));
      const Digest d1 = make_digest(spec, absorb_padding(spec, s1, *p1, &calls));
      report.full_collision = d0 == d1;
    }
    report.compression_calls = calls;
    return report;
  }

  if (!(m0.block == m1.block) || !certified_same_node(spec.compression.state_bits(), m0.repeat, m1.repeat)) {
    throw DomainTooLarge("cannot decide the collision without a cycle search over 2^" +
                         std::to_string(spec.compression.state_bits()) + " states");
  }
  report.iterated_collision = true;
  report.full_collision = !report.rejection && *p0 == *p1;
  return report;
}

HeuristicRate heuristic_success_rate(std::uint64_t ell, std::uint64_t trials, std::uint64_t master_seed,
                                     int threads) {
  if (ell > kMaxCycleSearchStateBits) throw DomainTooLarge("heuristic harness needs a searchable state size");
  const BigInt cs[] = {0, 1};
  const Block block = Block::zero(32);
  const auto messages = heuristic_formula_messages(block, ell, cs);
  const RepeatCount ks[] = {messages[0].repeat, messages[1].repeat};
  const auto hits = kernels::map_indices<std::uint8_t>(trials, threads, [&](std::uint64_t i) -> std::uint8_t {
    const std::uint64_t seed = split_seed(master_seed, i);
    const auto spec = CompressionSpec::toy(seed, static_cast<unsigned>(ell), 32);
    const State iv{mix64(seed ^ kGolden) & low_bits_mask(static_cast<unsigned>(ell))};
    const auto states = fast_states(spec, block, iv, ks);
    return states[0] == states[1] ? 1 : 0;
  });
  HeuristicRate rate;
  rate.trials = trials;
  for (std::uint8_t h : hits) rate.successes += h;
  return rate;
}

}  // namespace mdlab
