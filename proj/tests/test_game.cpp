#include "doctest.h"

#include "mdlab/errors.hpp"
#include "mdlab/game.hpp"
#include "mdlab/serialize.hpp"

using namespace mdlab;

namespace {

GameConfig toy_config(KeyVisibility visibility, std::uint64_t trials) {
  GameConfig c;
  c.ell = 12;
  c.block_bits = 32;
  c.padding = PaddingSpec::truncating(16);
  c.key_visibility = visibility;
  c.trial_count = trials;
  c.master_seed = 2024;
  return c;
}

GameConfig wide_strict_config() {
  GameConfig c;
  c.ell = 160;
  c.block_bits = 128;
  c.padding = PaddingSpec::strict(64);
  c.trial_count = 10;
  return c;
}

}  // namespace

TEST_CASE("formula adversary wins every key-blind game without compressions") {
  const GameOutcome o = run_game(toy_config(KeyVisibility::KeyBlind, 100), FormulaAdversary{0, 1});
  CHECK(o.win_rate == 1.0);
  CHECK(o.wins == 100);
  CHECK(o.adversary_compression_calls == 0);
  CHECK(o.verifier_compression_calls > 0);
  // Under the written-out reading the c = 1 message is hopeless.
  CHECK(o.wins_written_out == 0);
}

TEST_CASE("formula adversary output ignores the key") {
  const GameOutcome o = run_game(toy_config(KeyVisibility::KeyGiven, 20), FormulaAdversary{2, 7});
  CHECK(o.win_rate == 1.0);
  for (const TrialRecord& r : o.records) {
    CHECK(r.m0 == o.records.front().m0);
    CHECK(r.m1 == o.records.front().m1);
  }
  CHECK(o.records[0].key != o.records[1].key);
}

TEST_CASE("formula adversary output is logarithmic in size") {
  for (const GameConfig& c : {toy_config(KeyVisibility::KeyBlind, 1), wide_strict_config()}) {
    const auto [m0, m1] = formula_adversary_output(c, FormulaAdversary{0, 1});
    CHECK(serialize(m0).size() <= 256);
    CHECK(serialize(m1).size() <= 256);
  }
  // Doubling l adds digits, not blocks.
  GameConfig big = wide_strict_config();
  big.ell = 1024;
  const auto [m0, m1] = formula_adversary_output(big, FormulaAdversary{0, BigInt(1) << 100});
  CHECK(serialize(m1).size() < 1000);
}

TEST_CASE("strict 64-bit lengths defeat the formula at l = 160") {
  const GameOutcome o = run_game(wide_strict_config(), FormulaAdversary{0, 1});
  CHECK(o.win_rate == 0.0);
  CHECK(o.adversary_compression_calls == 0);
  for (const TrialRecord& r : o.records) {
    CHECK(r.distinct);
    CHECK_FALSE(r.collided);
  }
}

TEST_CASE("birthday adversary with the key finds collisions near sqrt(pi N / 2) queries") {
  GameConfig c = toy_config(KeyVisibility::KeyGiven, 200);
  c.ell = 16;
  const GameOutcome o = run_game(c, BirthdayAdversary{8 * 256});
  CHECK(o.win_rate >= 0.95);
  CHECK(o.wins_written_out == o.wins_compressed);
  const double mean_calls = static_cast<double>(o.adversary_compression_calls) / static_cast<double>(o.wins);
  MESSAGE("mean adversary calls per win: " << mean_calls);
  CHECK(mean_calls == doctest::Approx(320.8).epsilon(0.15));
}

TEST_CASE("key-blind birthday adversary can only guess") {
  GameConfig c = toy_config(KeyVisibility::KeyBlind, 50);
  c.ell = 16;
  const GameOutcome o = run_game(c, BirthdayAdversary{2048});
  CHECK(o.adversary_compression_calls == 0);
  CHECK(o.wins <= 2);
}

TEST_CASE("equal formula coefficients are a configuration error") {
  CHECK_THROWS_AS(run_game(toy_config(KeyVisibility::KeyBlind, 1), FormulaAdversary{3, 3}), ContractViolation);
}

TEST_CASE("compressed-output flag picks the headline interpretation") {
  GameConfig c = toy_config(KeyVisibility::KeyBlind, 10);
  c.allow_compressed_output = false;
  const GameOutcome o = run_game(c, FormulaAdversary{0, 1});
  CHECK(o.wins == 0);
  CHECK(o.wins_compressed == 10);
}

TEST_CASE("games are reproducible and thread-count independent") {
  GameConfig c = toy_config(KeyVisibility::KeyGiven, 30);
  c.ell = 14;
  const GameOutcome a = run_game(c, BirthdayAdversary{1024});
  c.threads = 4;
  const GameOutcome b = run_game(c, BirthdayAdversary{1024});
  CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("configuration errors") {
  GameConfig c = toy_config(KeyVisibility::KeyBlind, 0);
  CHECK_THROWS_AS(run_game(c, FormulaAdversary{0, 1}), ContractViolation);
  c.trial_count = 1;
  c.padding = PaddingSpec::truncating(32);
  CHECK_THROWS_AS(run_game(c, FormulaAdversary{0, 1}), ContractViolation);
}
