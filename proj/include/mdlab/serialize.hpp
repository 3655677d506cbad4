#pragma once

// JSON, CSV and one-line text renderings shared by the library and the CLI.
// CSV column orders are fixed; see the *_csv_header constants.

#include <string>

#include "json.hpp"

#include "mdlab/collide.hpp"
#include "mdlab/funcgraph.hpp"
#include "mdlab/game.hpp"
#include "mdlab/stats.hpp"

namespace mdlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kRhoCsvHeader = "lambda,mu,rho";
inline constexpr const char* kGraphCsvHeader = "N,cyclic,max_tail,max_cycle,max_rho,components";
inline constexpr const char* kReportCsvHeader = "iterated,full,rejection,compression_calls";
inline constexpr const char* kNodeStatsCsvHeader =
    "N,samples,mean_lambda,mean_mu,mean_rho,expected_lambda,expected_mu,expected_rho,"
    "rel_err_lambda,rel_err_mu,rel_err_rho";
inline constexpr const char* kGraphStatsCsvHeader =
    "N,trials,mean_cyclic,mean_max_tail,mean_max_cycle,mean_max_rho,expected_cyclic,expected_max_tail,"
    "expected_max_cycle,expected_max_rho,rel_err_cyclic,rel_err_max_tail,rel_err_max_cycle,rel_err_max_rho";
inline constexpr const char* kGameCsvHeader =
    "wins,trials,win_rate,wins_compressed,wins_written_out,adversary_compression_calls,verifier_compression_calls";
inline constexpr const char* kHeuristicCsvHeader = "trials,successes,rate";
inline constexpr const char* kTrialCsvHeader =
    "trial,key,distinct,collided,win,win_written_out,adversary_calls,verifier_calls";

/// {"block_hex": ..., "repeat": {"form", "base", "coeff", "arg"}}, all
/// integers as decimal strings.
Json to_json(const RepeatCount& k);
Json to_json(const CompressedMessage& m);
RepeatCount repeat_count_from_json(const Json& j);
CompressedMessage compressed_message_from_json(const Json& j);
/// Compact single-line JSON; its size is logarithmic in the repeat count.
std::string serialize(const CompressedMessage& m);
CompressedMessage parse_compressed_message(const std::string& text);

Json to_json(const RhoShape& s);
Json to_json(const GraphSummary& g);
Json to_json(const CollisionReport& r);
Json to_json(const NodeStatsReport& r);
Json to_json(const GraphStatsReport& r);
Json to_json(const GameOutcome& o);
Json to_json(const HeuristicRate& h);

std::string csv_row(const RhoShape& s);
std::string csv_row(const GraphSummary& g);
std::string csv_row(const CollisionReport& r);
std::string csv_row(const NodeStatsReport& r);
std::string csv_row(const GraphStatsReport& r);
std::string csv_row(const GameOutcome& o);
std::string csv_row(const HeuristicRate& h);
std::string csv_row(std::uint64_t trial, const TrialRecord& r);

std::string to_text(const RhoShape& s);
std::string to_text(const GraphSummary& g);
std::string to_text(const CollisionReport& r);
std::string to_text(const NodeStatsReport& r);
std::string to_text(const GraphStatsReport& r);
std::string to_text(const GameOutcome& o);
std::string to_text(const HeuristicRate& h);

/// Shortest round-trip decimal rendering of a double.
std::string format_double(double v);

}  // namespace mdlab
