#include "doctest.h"

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "mdlab/collide.hpp"
#include "mdlab/game.hpp"
#include "mdlab/serialize.hpp"
#include "mdlab/stats.hpp"

using namespace mdlab;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
};

/// Runs the CLI with stderr discarded (or merged when asked).
RunResult run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(MDLAB_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mdlab_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("rho matches the library call") {
  const RunResult r = run("rho --ell 8 --seed 1 --iv 0");
  CHECK(r.exit_code == 0);
  const RhoShape s = rho_shape(CompressionSpec::toy(1, 8), Block::zero(32), State{0});
  CHECK(r.out == to_json(s).dump() + "\n");
  CHECK(run("rho --ell 8 --seed 1 --iv 0 --output csv").out == std::string(kRhoCsvHeader) + "\n" + csv_row(s) + "\n");
}

TEST_CASE("rho and graph over a table file") {
  const auto path = temp_file("constant.txt");
  {
    std::ofstream f(path);
    for (int i = 0; i < 8; ++i) f << "0\n";
  }
  CHECK(run("rho --table-file " + path.string() + " --iv 3").out == R"({"lambda":1,"mu":1,"rho":2})"
                                                                      "\n");
  CHECK(run("rho --table-file " + path.string() + " --iv 0").out == R"({"lambda":0,"mu":1,"rho":1})"
                                                                      "\n");
  const GraphSummary g = graph_summary(TableMap(std::vector<std::uint64_t>(8, 0)));
  CHECK(run("graph --table-file " + path.string()).out == to_json(g).dump() + "\n");
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit with 2") {
  const RunResult missing = run("rho --seed 1", true);
  CHECK(missing.exit_code == 2);
  CHECK(missing.out.find("--ell") != std::string::npos);
  CHECK(run("rho --ell 8 --bogus").exit_code == 2);
  CHECK(run("").exit_code == 2);
  CHECK(run("collide --ell 12 --padding zip:16").exit_code == 2);
  CHECK(run("collide --ell 12 --mode sideways").exit_code == 2);
  CHECK(run("stats graph --ell 17 --trials 1").exit_code == 2);
  CHECK(run("game --ell 12 --padding trunc:32 --block-bits 32").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("collide formula at l = 12 verifies every pair") {
  const RunResult r = run("collide --mode formula --ell 12 --c 0,1,2,3 --padding trunc:16");
  CHECK(r.exit_code == 0);
  const HashSpec hs = HashSpec::toy(0, 12);
  const std::vector<BigInt> cs{0, 1, 2, 3};
  const auto ms = formula_messages(Block::zero(32), 12, cs);
  std::string expected;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = i + 1; j < ms.size(); ++j) {
      const CollisionReport rep = verify_collision(hs, ms[i], ms[j]);
      CHECK(rep.full_collision);
      expected += to_json(rep).dump() + "\n";
    }
  }
  CHECK(r.out == expected);
}

TEST_CASE("collide under strict padding at l = 160 is rejected with exit 3") {
  const RunResult r = run("collide --mode formula --ell 160 --padding strict:64");
  CHECK(r.exit_code == 3);
  CHECK(r.out == R"({"iterated":true,"full":false,"rejection":"InputTooLong","compression_calls":0})"
                 "\n");
}

TEST_CASE("collide minimal matches the library") {
  const RunResult r = run("collide --mode minimal --ell 8 --seed 4");
  CHECK(r.exit_code == 0);
  const HashSpec hs = HashSpec::toy(4, 8);
  const auto [m0, m1] = minimal_collision(hs.compression, Block::zero(32), hs.iv);
  const CollisionReport rep = verify_collision(hs, m0, m1);
  CHECK(rep.iterated_collision);
  CHECK(r.out == to_json(rep).dump() + "\n");
}

TEST_CASE("hash subcommand") {
  CHECK(run("hash --md5 --message abc --output text").out == "900150983cd24fb0d6963f7d28e17f72\n");
  CHECK(run("hash --md5 --hex '' --output text").out == "d41d8cd98f00b204e9800998ecf8427e\n");
  const CompressedMessage m{Block::zero(32), RepeatCount::explicit_count(5)};
  const RunResult r = run("hash --ell 12 --output text --compressed '" + serialize(m) + "'");
  CHECK(r.exit_code == 0);
  CHECK(r.out == full_hash(HashSpec::toy(0, 12), m).hex() + "\n");
  CHECK(run("hash --ell 12 --message a --hex 61").exit_code == 2);
}

TEST_CASE("stats matches the library and ignores the thread count") {
  const RunResult r = run("stats node --ell 12 --samples 200 --seed 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == to_json(sample_node_stats(12, 200, 3)).dump() + "\n");
  CHECK(run("stats node --ell 12 --samples 200 --seed 3 --threads 4").out == r.out);
  const RunResult g = run("stats graph --ell 8 --trials 20 --seed 3 --mapping table --output csv");
  CHECK(g.out == std::string(kGraphStatsCsvHeader) + "\n" +
                     csv_row(sample_graph_stats(8, 20, 3, MappingMode::UniformTable)) + "\n");
  CHECK(run("stats graph --ell 8 --trials 20 --seed 3 --mapping table --output csv --threads 4").out == g.out);
}

TEST_CASE("heuristic success rate matches the library") {
  const RunResult r = run("stats heuristic --ell 12 --trials 50 --seed 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == to_json(heuristic_success_rate(12, 50, 2)).dump() + "\n");
  CHECK(run("stats heuristic --ell 11 --trials 5").exit_code == 2);
}

TEST_CASE("game matches the library") {
  GameConfig c;
  c.trial_count = 25;
  c.master_seed = 8;
  const RunResult r = run("game --ell 12 --trials 25 --seed 8");
  CHECK(r.exit_code == 0);
  CHECK(r.out == to_json(run_game(c, FormulaAdversary{0, 1})).dump() + "\n");

  const auto csv = temp_file("trials.csv");
  const RunResult b =
      run("game --ell 14 --trials 10 --seed 8 --adversary birthday --visibility given --max-queries 1024 "
          "--per-trial-csv " + csv.string());
  CHECK(b.exit_code == 0);
  const std::string rows = slurp(csv);
  CHECK(rows.starts_with(kTrialCsvHeader));
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 11);
  std::filesystem::remove(csv);
}

TEST_CASE("--out writes the report to a file") {
  const auto path = temp_file("out.json");
  const RunResult r = run("rho --ell 8 --seed 1 --out " + path.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(path) == run("rho --ell 8 --seed 1").out);
  std::filesystem::remove(path);
}
