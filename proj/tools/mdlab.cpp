// mdlab: command-line front end over the mdlab library.
//
// Exit codes: 0 success, 2 usage or configuration error, 3 verification
// rejection (the report is still printed).

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mdlab/collide.hpp"
#include "mdlab/errors.hpp"
#include "mdlab/funcgraph.hpp"
#include "mdlab/game.hpp"
#include "mdlab/serialize.hpp"
#include "mdlab/stats.hpp"

namespace {

using namespace mdlab;

constexpr int kExitUsage = 2;
constexpr int kExitRejected = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv, Text };

struct Common {
  std::uint64_t seed = 0;
  std::optional<unsigned> ell;
  std::string block_hex;
  std::optional<unsigned> block_bits;
  Format format = Format::Json;
  std::string out;
  int threads = 1;
};

void add_common(CLI::App& cmd, Common& c) {
  cmd.add_option("--seed", c.seed, "Master seed / toy compression seed");
  cmd.add_option("--ell", c.ell, "State size l in bits")->check(CLI::Range(1U, 1U << 20));
  cmd.add_option("--block-hex", c.block_hex, "Message block as hex (default: all-zero block)");
  cmd.add_option("--block-bits", c.block_bits, "Block size b in bits (multiple of 8)");
  cmd.add_option("--output", c.format, "Output format")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, Format>{{"json", Format::Json}, {"csv", Format::Csv}, {"text", Format::Text}}));
  cmd.add_option("--out", c.out, "Write the report to FILE instead of stdout");
  cmd.add_option("--threads", c.threads, "Worker threads (results do not depend on it)")->check(CLI::Range(1, 1024));
}

unsigned require_ell(const Common& c) {
  if (!c.ell) throw UsageError("--ell is required");
  return *c.ell;
}

std::uint64_t parse_u64(const std::string& text, const char* what) {
  std::uint64_t v = 0;
  int base = 10;
  std::string_view s = text;
  if (s.starts_with("0x") || s.starts_with("0X")) {
    s.remove_prefix(2);
    base = 16;
  }
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
  if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) {
    throw UsageError(std::string("invalid ") + what + ": '" + text + "'");
  }
  return v;
}

PaddingSpec parse_padding(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--padding must be trunc:L or strict:L");
  const std::string mode = text.substr(0, colon);
  const auto bits = parse_u64(text.substr(colon + 1), "padding length");
  if (bits < 1 || bits > 128) throw UsageError("padding length must be in [1, 128]");
  if (mode == "trunc") return PaddingSpec::truncating(static_cast<unsigned>(bits));
  if (mode == "strict") return PaddingSpec::strict(static_cast<unsigned>(bits));
  throw UsageError("--padding must be trunc:L or strict:L");
}

std::vector<BigInt> parse_list(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(parse_decimal(item));
    } catch (const Error&) {
      throw UsageError("invalid --c entry: '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--c needs at least one value");
  return out;
}

/// Default b: 32 when the length field fits in one toy block with room for
/// the marker bit, 512 otherwise.
unsigned block_bits_for(const Common& c, const PaddingSpec& padding) {
  if (c.block_bits) return *c.block_bits;
  return padding.length_bits <= 31 ? 32 : 512;
}

Block make_block(const Common& c, unsigned block_bits) {
  if (c.block_hex.empty()) return Block::zero(block_bits);
  Block b = Block::from_hex(c.block_hex);
  if (c.block_bits && b.bit_size() != *c.block_bits) throw UsageError("--block-hex does not match --block-bits");
  return b;
}

std::vector<std::uint64_t> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open table file '" + path + "'");
  std::vector<std::uint64_t> table;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    table.push_back(parse_u64(line, "table entry"));
  }
  return table;
}

class Output {
 public:
  explicit Output(const Common& c) : format_(c.format) {
    if (!c.out.empty()) {
      file_.open(c.out);
      if (!file_) throw UsageError("cannot write '" + c.out + "'");
    }
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  template <class Report>
  void emit(const std::vector<Report>& reports, const char* header) {
    std::ostream& os = stream();
    if (format_ == Format::Csv) os << header << '\n';
    for (const Report& r : reports) {
      switch (format_) {
        case Format::Json:
          os << to_json(r).dump() << '\n';
          break;
        case Format::Csv:
          os << csv_row(r) << '\n';
          break;
        case Format::Text:
          os << to_text(r) << '\n';
          break;
      }
    }
  }

 private:
  Format format_;
  std::ofstream file_;
};

// --- rho / graph -----------------------------------------------------------

struct RhoArgs {
  Common common;
  std::string iv = "0";
  std::string table_file;
};

int run_rho(const RhoArgs& a) {
  const State iv{parse_u64(a.iv, "--iv")};
  RhoShape shape;
  if (!a.table_file.empty()) {
    const TableMap map(read_table(a.table_file));
    if (iv.low64() >= map.size()) throw UsageError("--iv is outside the table");
    shape = rho_shape(map, iv);
  } else {
    const unsigned ell = require_ell(a.common);
    const CompressionSpec spec = CompressionSpec::toy(a.common.seed, ell, a.common.block_bits.value_or(32));
    shape = rho_shape(spec, make_block(a.common, spec.block_bits()), iv);
  }
  Output(a.common).emit(std::vector{shape}, kRhoCsvHeader);
  return 0;
}

int run_graph(const RhoArgs& a) {
  GraphSummary g;
  if (!a.table_file.empty()) {
    g = graph_summary(TableMap(read_table(a.table_file)));
  } else {
    const unsigned ell = require_ell(a.common);
    const CompressionSpec spec = CompressionSpec::toy(a.common.seed, ell, a.common.block_bits.value_or(32));
    g = graph_summary(spec, make_block(a.common, spec.block_bits()), a.common.threads);
  }
  Output(a.common).emit(std::vector{g}, kGraphCsvHeader);
  return 0;
}

// --- collide / hash --------------------------------------------------------

struct CollideArgs {
  Common common;
  std::string mode = "formula";
  std::string c_list = "0,1";
  std::string padding = "trunc:16";
  std::string iv = "0";
  bool md5 = false;
};

/// Hash for collide/hash: MD5, or a toy compression whose state is l bits
/// (capped at 64; wider l keep their formula counts but run on a 64-bit
/// stand-in state).
HashSpec make_hash(const Common& c, const std::string& padding_text, const std::string& iv_text, bool md5) {
  if (md5) {
    if (c.ell && *c.ell != 128) throw UsageError("--md5 fixes l = 128");
    return HashSpec::md5();
  }
  const unsigned ell = require_ell(c);
  const PaddingSpec padding = parse_padding(padding_text);
  const unsigned b = c.block_hex.empty() ? block_bits_for(c, padding) : Block::from_hex(c.block_hex).bit_size();
  HashSpec hs = HashSpec::toy(c.seed, std::min(ell, 64U), b, padding, State{parse_u64(iv_text, "--iv")});
  hs.validate();
  return hs;
}

int run_collide(const CollideArgs& a) {
  const HashSpec hs = make_hash(a.common, a.padding, a.iv, a.md5);
  const unsigned ell = a.md5 ? 128 : require_ell(a.common);
  const Block block = make_block(a.common, hs.compression.block_bits());
  const std::vector<BigInt> cs = parse_list(a.c_list);

  std::vector<CompressedMessage> messages;
  if (a.mode == "minimal") {
    auto [m0, m1] = minimal_collision(hs.compression, block, hs.iv);
    messages = {m0, m1};
  } else if (a.mode == "formula") {
    messages = formula_messages(block, ell, cs);
  } else if (a.mode == "heuristic") {
    messages = heuristic_formula_messages(block, ell, cs);
  } else {
    throw UsageError("--mode must be minimal, formula or heuristic");
  }

  std::vector<CollisionReport> reports;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    for (std::size_t j = i + 1; j < messages.size(); ++j) {
      reports.push_back(verify_collision(hs, messages[i], messages[j]));
    }
  }
  Output(a.common).emit(reports, kReportCsvHeader);
  for (const CollisionReport& r : reports) {
    if (r.rejection) return kExitRejected;
  }
  return 0;
}

struct HashArgs {
  Common common;
  std::string padding = "trunc:16";
  std::string iv = "0";
  bool md5 = false;
  std::optional<std::string> message;
  std::optional<std::string> hex;
  std::optional<std::string> compressed;
};

int run_hash(const HashArgs& a) {
  const HashSpec hs = make_hash(a.common, a.padding, a.iv, a.md5);
  const int inputs = a.message.has_value() + a.hex.has_value() + a.compressed.has_value();
  if (inputs != 1) throw UsageError("give exactly one of --message, --hex, --compressed");

  std::uint64_t calls = 0;
  Digest d;
  if (a.compressed) {
    d = full_hash(hs, parse_compressed_message(*a.compressed), &calls);
  } else if (a.hex) {
    const auto bytes = from_hex(*a.hex);
    d = digest(hs, bytes, &calls);
  } else {
    const auto* p = reinterpret_cast<const std::uint8_t*>(a.message->data());
    d = digest(hs, std::span<const std::uint8_t>(p, a.message->size()), &calls);
  }

  Output out(a.common);
  std::ostream& os = out.stream();
  switch (a.common.format) {
    case Format::Json: {
      Json j;
      j["digest"] = d.hex();
      j["bits"] = d.bits;
      j["compression_calls"] = calls;
      os << j.dump() << '\n';
      break;
    }
    case Format::Csv:
      os << "digest,bits,compression_calls\n" << d.hex() << ',' << d.bits << ',' << calls << '\n';
      break;
    case Format::Text:
      os << d.hex() << '\n';
      break;
  }
  return 0;
}

// --- stats / game ----------------------------------------------------------

struct StatsArgs {
  Common common;
  std::string kind = "node";
  std::uint64_t samples = 1000;
  std::uint64_t trials = 100;
  MappingMode mapping = MappingMode::Toy;
};

int run_stats(const StatsArgs& a) {
  const unsigned ell = require_ell(a.common);
  Output out(a.common);
  if (a.kind == "node") {
    out.emit(std::vector{sample_node_stats(ell, a.samples, a.common.seed, a.mapping, a.common.threads)},
             kNodeStatsCsvHeader);
  } else if (a.kind == "heuristic") {
    out.emit(std::vector{heuristic_success_rate(ell, a.trials, a.common.seed, a.common.threads)},
             kHeuristicCsvHeader);
  } else {
    out.emit(std::vector{sample_graph_stats(ell, a.trials, a.common.seed, a.mapping, a.common.threads)},
             kGraphStatsCsvHeader);
  }
  return 0;
}

struct GameArgs {
  Common common;
  std::uint64_t trials = 100;
  std::string adversary = "formula";
  KeyVisibility visibility = KeyVisibility::KeyBlind;
  std::string padding = "trunc:16";
  std::string c1 = "0";
  std::string c2 = "1";
  std::uint64_t max_queries = 0;
  bool no_compressed_output = false;
  std::string per_trial_csv;
};

int run_game_cmd(const GameArgs& a) {
  GameConfig config;
  config.ell = require_ell(a.common);
  config.padding = parse_padding(a.padding);
  config.block_bits = block_bits_for(a.common, config.padding);
  config.key_visibility = a.visibility;
  config.trial_count = a.trials;
  config.master_seed = a.common.seed;
  config.allow_compressed_output = !a.no_compressed_output;
  config.threads = a.common.threads;

  Adversary adversary;
  if (a.adversary == "formula") {
    adversary = FormulaAdversary{parse_list(a.c1).at(0), parse_list(a.c2).at(0)};
  } else if (a.adversary == "birthday") {
    const std::uint64_t budget =
        a.max_queries ? a.max_queries : 8 * (std::uint64_t{1} << std::min(31U, (config.ell + 1) / 2));
    adversary = BirthdayAdversary{budget};
  } else {
    throw UsageError("--adversary must be formula or birthday");
  }

  const GameOutcome outcome = run_game(config, adversary);
  Output(a.common).emit(std::vector{outcome}, kGameCsvHeader);
  if (!a.per_trial_csv.empty()) {
    std::ofstream f(a.per_trial_csv);
    if (!f) throw UsageError("cannot write '" + a.per_trial_csv + "'");
    f << kTrialCsvHeader << '\n';
    for (std::uint64_t i = 0; i < outcome.records.size(); ++i) f << csv_row(i, outcome.records[i]) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Merkle-Damgard collision lab"};
  app.require_subcommand(1);

  RhoArgs rho;
  auto* rho_cmd = app.add_subcommand("rho", "Tail and cycle length of one start node");
  add_common(*rho_cmd, rho.common);
  rho_cmd->add_option("--iv", rho.iv, "Start state (decimal or 0x hex)");
  rho_cmd->add_option("--table-file", rho.table_file, "Explicit self-map, line i holds f(i)");

  RhoArgs graph;
  auto* graph_cmd = app.add_subcommand("graph", "Exhaustive functional-graph summary");
  add_common(*graph_cmd, graph.common);
  graph_cmd->add_option("--table-file", graph.table_file, "Explicit self-map, line i holds f(i)");

  CollideArgs collide;
  auto* collide_cmd = app.add_subcommand("collide", "Synthesize and verify colliding messages");
  add_common(*collide_cmd, collide.common);
  collide_cmd->add_option("--mode", collide.mode, "minimal | formula | heuristic")
      ->check(CLI::IsMember({"minimal", "formula", "heuristic"}));
  collide_cmd->add_option("--c", collide.c_list, "Comma-separated coefficients");
  collide_cmd->add_option("--padding", collide.padding, "trunc:L | strict:L");
  collide_cmd->add_option("--iv", collide.iv, "Initial chaining value");
  collide_cmd->add_flag("--md5", collide.md5, "Use the MD5 compression and IV");

  HashArgs hash;
  auto* hash_cmd = app.add_subcommand("hash", "Digest of a literal or compressed message");
  add_common(*hash_cmd, hash.common);
  hash_cmd->add_option("--padding", hash.padding, "trunc:L | strict:L");
  hash_cmd->add_option("--iv", hash.iv, "Initial chaining value");
  hash_cmd->add_flag("--md5", hash.md5, "Use MD5");
  hash_cmd->add_option("--message", hash.message, "Message text");
  hash_cmd->add_option("--hex", hash.hex, "Message bytes as hex");
  hash_cmd->add_option("--compressed", hash.compressed, "Compressed message JSON");

  StatsArgs stats;
  auto* stats_cmd = app.add_subcommand("stats", "Random-mapping Monte Carlo");
  add_common(*stats_cmd, stats.common);
  stats_cmd->add_option("kind", stats.kind, "node | graph | heuristic")
      ->check(CLI::IsMember({"node", "graph", "heuristic"}));
  stats_cmd->add_option("--samples", stats.samples, "Node samples")->check(CLI::PositiveNumber);
  stats_cmd->add_option("--trials", stats.trials, "Graph or heuristic-formula trials")->check(CLI::PositiveNumber);
  stats_cmd->add_option("--mapping", stats.mapping, "toy | table")
      ->transform(CLI::CheckedTransformer(
          std::map<std::string, MappingMode>{{"toy", MappingMode::Toy}, {"table", MappingMode::UniformTable}}));

  GameArgs game;
  auto* game_cmd = app.add_subcommand("game", "Keyed collision game");
  add_common(*game_cmd, game.common);
  game_cmd->add_option("--trials", game.trials, "Number of keys")->check(CLI::PositiveNumber);
  game_cmd->add_option("--adversary", game.adversary, "formula | birthday")
      ->check(CLI::IsMember({"formula", "birthday"}));
  game_cmd->add_option("--visibility", game.visibility, "given | blind")
      ->transform(CLI::CheckedTransformer(std::map<std::string, KeyVisibility>{
          {"given", KeyVisibility::KeyGiven}, {"blind", KeyVisibility::KeyBlind}}));
  game_cmd->add_option("--padding", game.padding, "trunc:L | strict:L");
  game_cmd->add_option("--c1", game.c1, "First formula coefficient");
  game_cmd->add_option("--c2", game.c2, "Second formula coefficient");
  game_cmd->add_option("--max-queries", game.max_queries, "Birthday query budget (default 8 * 2^ceil(l/2))");
  game_cmd->add_flag("--no-compressed-output", game.no_compressed_output,
                     "Headline win rate requires written-out messages");
  game_cmd->add_option("--per-trial-csv", game.per_trial_csv, "Write one CSV row per trial to FILE");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*rho_cmd) return run_rho(rho);
    if (*graph_cmd) return run_graph(graph);
    if (*collide_cmd) return run_collide(collide);
    if (*hash_cmd) return run_hash(hash);
    if (*stats_cmd) return run_stats(stats);
    if (*game_cmd) return run_game_cmd(game);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const InputTooLong& e) {
    std::cerr << "rejected: " << e.what() << '\n';
    return kExitRejected;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
