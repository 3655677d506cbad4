#include "mdlab/serialize.hpp"

#include <array>
#include <charconv>

#include "mdlab/errors.hpp"

namespace mdlab {

namespace {

std::string b(bool v) { return v ? "true" : "false"; }

template <class... Ts>
std::string join(const Ts&... parts) {
  std::string out;
  bool first = true;
  ((out += (first ? "" : ","), out += parts, first = false), ...);
  return out;
}

std::string u(std::uint64_t v) { return std::to_string(v); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ContractViolation(std::string("missing field '") + key + "'");
  return j.at(key);
}

BigInt decimal_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw ContractViolation(std::string("field '") + key + "' must be a decimal string");
  return parse_decimal(v.get<std::string>());
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

Json to_json(const RepeatCount& k) {
  Json j;
  j["form"] = k.form() == RepeatCount::Form::Explicit ? "explicit" : "factorial";
  j["base"] = to_decimal(k.base());
  j["coeff"] = to_decimal(k.coeff());
  j["arg"] = to_decimal(k.arg());
  return j;
}

Json to_json(const CompressedMessage& m) {
  Json j;
  j["block_hex"] = m.block.hex();
  j["repeat"] = to_json(m.repeat);
  return j;
}

RepeatCount repeat_count_from_json(const Json& j) {
  const Json& form = field(j, "form");
  if (form == "explicit") {
    if (j.contains("coeff") && decimal_field(j, "coeff") != 0) {
      throw ContractViolation("explicit repeat count must have coeff 0");
    }
    return RepeatCount::explicit_count(decimal_field(j, "base"));
  }
  if (form == "factorial") {
    return RepeatCount::factorial(decimal_field(j, "base"), decimal_field(j, "coeff"), decimal_field(j, "arg"));
  }
  throw ContractViolation("repeat form must be \"explicit\" or \"factorial\"");
}

CompressedMessage compressed_message_from_json(const Json& j) {
  const Json& hex = field(j, "block_hex");
  if (!hex.is_string()) throw ContractViolation("block_hex must be a string");
  return {Block::from_hex(hex.get<std::string>()), repeat_count_from_json(field(j, "repeat"))};
}

std::string serialize(const CompressedMessage& m) { return to_json(m).dump(); }

CompressedMessage parse_compressed_message(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ContractViolation(std::string("malformed compressed message: ") + e.what());
  }
  return compressed_message_from_json(j);
}

Json to_json(const RhoShape& s) { return {{"lambda", s.lambda}, {"mu", s.mu}, {"rho", s.rho()}}; }

Json to_json(const GraphSummary& g) {
  return {{"N", g.node_count},         {"cyclic", g.cyclic_node_count}, {"max_tail", g.max_tail},
          {"max_cycle", g.max_cycle},  {"max_rho", g.max_rho},          {"components", g.component_count}};
}

Json to_json(const CollisionReport& r) {
  Json j;
  j["iterated"] = r.iterated_collision;
  j["full"] = r.full_collision;
  j["rejection"] = r.rejection ? Json(to_string(*r.rejection)) : Json(nullptr);
  j["compression_calls"] = r.compression_calls;
  return j;
}

Json to_json(const NodeStatsReport& r) {
  return {{"N", r.node_count},
          {"samples", r.sample_count},
          {"mean_lambda", r.mean_lambda},
          {"mean_mu", r.mean_mu},
          {"mean_rho", r.mean_rho},
          {"expected_lambda", r.expected.lambda},
          {"expected_mu", r.expected.mu},
          {"expected_rho", r.expected.rho},
          {"rel_err_lambda", r.rel_err_lambda},
          {"rel_err_mu", r.rel_err_mu},
          {"rel_err_rho", r.rel_err_rho}};
}

Json to_json(const GraphStatsReport& r) {
  return {{"N", r.node_count},
          {"trials", r.trial_count},
          {"mean_cyclic", r.mean_cyclic},
          {"mean_max_tail", r.mean_max_tail},
          {"mean_max_cycle", r.mean_max_cycle},
          {"mean_max_rho", r.mean_max_rho},
          {"expected_cyclic", r.expected.cyclic},
          {"expected_max_tail", r.expected.max_tail},
          {"expected_max_cycle", r.expected.max_cycle},
          {"expected_max_rho", r.expected.max_rho},
          {"rel_err_cyclic", r.rel_err_cyclic},
          {"rel_err_max_tail", r.rel_err_max_tail},
          {"rel_err_max_cycle", r.rel_err_max_cycle},
          {"rel_err_max_rho", r.rel_err_max_rho}};
}

Json to_json(const HeuristicRate& h) {
  return {{"trials", h.trials}, {"successes", h.successes}, {"rate", h.rate()}};
}

Json to_json(const GameOutcome& o) {
  return {{"wins", o.wins},
          {"trials", o.trials},
          {"win_rate", o.win_rate},
          {"wins_compressed", o.wins_compressed},
          {"wins_written_out", o.wins_written_out},
          {"adversary_compression_calls", o.adversary_compression_calls},
          {"verifier_compression_calls", o.verifier_compression_calls}};
}

std::string csv_row(const RhoShape& s) { return join(u(s.lambda), u(s.mu), u(s.rho())); }

std::string csv_row(const GraphSummary& g) {
  return join(u(g.node_count), u(g.cyclic_node_count), u(g.max_tail), u(g.max_cycle), u(g.max_rho),
              u(g.component_count));
}

std::string csv_row(const CollisionReport& r) {
  return join(b(r.iterated_collision), b(r.full_collision), r.rejection ? to_string(*r.rejection) : std::string(),
              u(r.compression_calls));
}

std::string csv_row(const NodeStatsReport& r) {
  return join(u(r.node_count), u(r.sample_count), format_double(r.mean_lambda), format_double(r.mean_mu),
              format_double(r.mean_rho), format_double(r.expected.lambda), format_double(r.expected.mu),
              format_double(r.expected.rho), format_double(r.rel_err_lambda), format_double(r.rel_err_mu),
              format_double(r.rel_err_rho));
}

std::string csv_row(const GraphStatsReport& r) {
  return join(u(r.node_count), u(r.trial_count), format_double(r.mean_cyclic), format_double(r.mean_max_tail),
              format_double(r.mean_max_cycle), format_double(r.mean_max_rho), format_double(r.expected.cyclic),
              format_double(r.expected.max_tail), format_double(r.expected.max_cycle),
              format_double(r.expected.max_rho), format_double(r.rel_err_cyclic), format_double(r.rel_err_max_tail),
              format_double(r.rel_err_max_cycle), format_double(r.rel_err_max_rho));
}

std::string csv_row(const HeuristicRate& h) { return join(u(h.trials), u(h.successes), format_double(h.rate())); }

std::string csv_row(const GameOutcome& o) {
  return join(u(o.wins), u(o.trials), format_double(o.win_rate), u(o.wins_compressed), u(o.wins_written_out),
              u(o.adversary_compression_calls), u(o.verifier_compression_calls));
}

std::string csv_row(std::uint64_t trial, const TrialRecord& r) {
  return join(u(trial), u(r.key), b(r.distinct), b(r.collided), b(r.win), b(r.win_written_out), u(r.adversary_calls),
              u(r.verifier_calls));
}

std::string to_text(const RhoShape& s) {
  return "lambda=" + u(s.lambda) + " mu=" + u(s.mu) + " rho=" + u(s.rho());
}

std::string to_text(const GraphSummary& g) {
  return "N=" + u(g.node_count) + " cyclic=" + u(g.cyclic_node_count) + " max_tail=" + u(g.max_tail) +
         " max_cycle=" + u(g.max_cycle) + " max_rho=" + u(g.max_rho) + " components=" + u(g.component_count);
}

std::string to_text(const CollisionReport& r) {
  return "iterated=" + b(r.iterated_collision) + " full=" + b(r.full_collision) +
         " rejection=" + (r.rejection ? to_string(*r.rejection) : std::string("none")) +
         " compression_calls=" + u(r.compression_calls);
}

std::string to_text(const NodeStatsReport& r) {
  return "N=" + u(r.node_count) + " samples=" + u(r.sample_count) + " mean_lambda=" + format_double(r.mean_lambda) +
         " (expected " + format_double(r.expected.lambda) + ") mean_mu=" + format_double(r.mean_mu) + " (expected " +
         format_double(r.expected.mu) + ") mean_rho=" + format_double(r.mean_rho) + " (expected " +
         format_double(r.expected.rho) + ")";
}

std::string to_text(const GraphStatsReport& r) {
  return "N=" + u(r.node_count) + " trials=" + u(r.trial_count) + " mean_cyclic=" + format_double(r.mean_cyclic) +
         " (expected " + format_double(r.expected.cyclic) + ") mean_max_tail=" + format_double(r.mean_max_tail) +
         " (expected " + format_double(r.expected.max_tail) + ") mean_max_cycle=" + format_double(r.mean_max_cycle) +
         " (expected " + format_double(r.expected.max_cycle) + ") mean_max_rho=" + format_double(r.mean_max_rho) +
         " (expected " + format_double(r.expected.max_rho) + ")";
}

std::string to_text(const HeuristicRate& h) {
  return "trials=" + u(h.trials) + " successes=" + u(h.successes) + " rate=" + format_double(h.rate());
}

std::string to_text(const GameOutcome& o) {
  return "wins=" + u(o.wins) + "/" + u(o.trials) + " win_rate=" + format_double(o.win_rate) +
         " written_out_wins=" + u(o.wins_written_out) + " adversary_calls=" + u(o.adversary_compression_calls) +
         " verifier_calls=" + u(o.verifier_compression_calls);
}

}  // namespace mdlab
