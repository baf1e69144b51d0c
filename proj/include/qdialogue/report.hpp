#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qdialogue/analysis.hpp"

namespace qdialogue {

inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

/// Machine-readable result of one CLI invocation. `config` echoes the
/// executed configuration and round-trips through config_from_json.
struct Report {
  std::string tool_version = kToolVersion;
  Json config = Json::object();
  std::optional<SessionStats> stats;
  std::vector<ExactResult> exact;
  std::optional<std::string> timestamp;
};

// String codecs used consistently across JSON, CSV and the CLI surface.
std::string to_string(RunMode mode);
std::string to_string(MeasBasis basis);
std::string to_string(Verdict verdict);
std::string to_string(ControlModeKind kind);
std::string to_string(AttackStrategy::Kind kind);
RunMode run_mode_from_string(const std::string& text);
MeasBasis basis_from_string(const std::string& text);
ControlModeKind control_mode_kind_from_string(const std::string& text);
AttackStrategy::Kind attack_kind_from_string(const std::string& text);

std::string to_string(BellIndex index);  // "kl", e.g. "01"
std::string to_string(BitPair bits);
BellIndex bell_index_from_string(const std::string& text);
BitPair bit_pair_from_string(const std::string& text);

/// Bitstring of even length over {0,1} -> consecutive bit pairs.
std::vector<BitPair> parse_bit_pairs(const std::string& text);
std::string format_bit_pairs(const std::vector<BitPair>& pairs);

std::string format_announcement(const Announcement& announcement);

Json config_to_json(const SessionConfig& config, const AttackStrategy& attack);
std::pair<SessionConfig, AttackStrategy> config_from_json(const Json& json);
Json stats_to_json(const SessionStats& stats);
Json exact_result_to_json(const ExactResult& result);
Json report_to_json(const Report& report);

std::string render_report_json(const Report& report);
std::string render_report_text(const Report& report);

/// One CSV row per run across all sessions, preceded by a header row.
std::string render_runs_csv(const std::vector<SessionResult>& sessions);

std::string iso8601_utc_now();

}  // namespace qdialogue
