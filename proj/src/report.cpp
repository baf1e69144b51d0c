#include "qdialogue/report.hpp"

#include <cstdio>
#include <ctime>
#include <sstream>
#include <stdexcept>

namespace qdialogue {

namespace {

std::string format_rate(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

[[noreturn]] void bad_value(const std::string& what, const std::string& text) {
  throw std::invalid_argument("invalid " + what + ": '" + text + "'");
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::MessageMode: return "mm";
    case RunMode::ControlModeOriginal: return "cm";
    case RunMode::ControlModeRevised: return "rcm";
  }
  return "";
}

std::string to_string(MeasBasis basis) { return basis == MeasBasis::Z ? "z" : "x"; }

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::NotChecked: return "not_checked";
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
  }
  return "";
}

std::string to_string(ControlModeKind kind) {
  return kind == ControlModeKind::Original ? "original" : "revised";
}

std::string to_string(AttackStrategy::Kind kind) {
  return kind == AttackStrategy::Kind::None ? "none" : "intercept-resend";
}

RunMode run_mode_from_string(const std::string& text) {
  if (text == "mm") return RunMode::MessageMode;
  if (text == "cm") return RunMode::ControlModeOriginal;
  if (text == "rcm") return RunMode::ControlModeRevised;
  bad_value("run mode", text);
}

MeasBasis basis_from_string(const std::string& text) {
  if (text == "z") return MeasBasis::Z;
  if (text == "x") return MeasBasis::X;
  bad_value("basis", text);
}

ControlModeKind control_mode_kind_from_string(const std::string& text) {
  if (text == "original") return ControlModeKind::Original;
  if (text == "revised") return ControlModeKind::Revised;
  bad_value("control mode", text);
}

AttackStrategy::Kind attack_kind_from_string(const std::string& text) {
  if (text == "none") return AttackStrategy::Kind::None;
  if (text == "intercept-resend") return AttackStrategy::Kind::InterceptResend;
  bad_value("attack", text);
}

std::string to_string(BellIndex index) {
  return std::to_string(index.k()) + std::to_string(index.l());
}

std::string to_string(BitPair bits) {
  return std::to_string(bits.first()) + std::to_string(bits.second());
}

namespace {
std::pair<int, int> two_bits(const std::string& text, const char* what) {
  if (text.size() != 2 || (text[0] != '0' && text[0] != '1') ||
      (text[1] != '0' && text[1] != '1')) {
    bad_value(what, text);
  }
  return {text[0] - '0', text[1] - '0'};
}
}  // namespace

BellIndex bell_index_from_string(const std::string& text) {
  auto [k, l] = two_bits(text, "Bell index");
  return {k, l};
}

BitPair bit_pair_from_string(const std::string& text) {
  auto [first, second] = two_bits(text, "bit pair");
  return {first, second};
}

std::vector<BitPair> parse_bit_pairs(const std::string& text) {
  if (text.empty() || text.size() % 2 != 0) {
    throw std::invalid_argument("bit string must have positive even length");
  }
  std::vector<BitPair> pairs;
  pairs.reserve(text.size() / 2);
  for (std::size_t i = 0; i < text.size(); i += 2) {
    pairs.push_back(bit_pair_from_string(text.substr(i, 2)));
  }
  return pairs;
}

std::string format_bit_pairs(const std::vector<BitPair>& pairs) {
  std::string out;
  out.reserve(pairs.size() * 2);
  for (const BitPair& pair : pairs) out += to_string(pair);
  return out;
}

std::string format_announcement(const Announcement& announcement) {
  const char* actor = announcement.actor == Announcement::Actor::Alice ? "alice" : "bob";
  const char* kind = "";
  switch (announcement.kind) {
    case Announcement::Kind::QubitSent: kind = "qubit_sent"; break;
    case Announcement::Kind::ReceiptConfirmed: kind = "receipt_confirmed"; break;
    case Announcement::Kind::ModeAnnounced: kind = "mode_announced"; break;
    case Announcement::Kind::BellMeasured: kind = "bell_measured"; break;
    case Announcement::Kind::BellOutcomeAnnounced: kind = "bell_outcome_announced"; break;
    case Announcement::Kind::BitsRevealed: kind = "bits_revealed"; break;
    case Announcement::Kind::TravelMeasured: kind = "travel_measured"; break;
    case Announcement::Kind::BasisAnnounced: kind = "basis_announced"; break;
    case Announcement::Kind::OutcomeAnnounced: kind = "outcome_announced"; break;
    case Announcement::Kind::HomeMeasured: kind = "home_measured"; break;
    case Announcement::Kind::VerdictAnnounced: kind = "verdict_announced"; break;
  }
  std::string out = std::string(actor) + ":" + kind;
  if (!announcement.detail.empty()) out += "(" + announcement.detail + ")";
  return out;
}

Json config_to_json(const SessionConfig& config, const AttackStrategy& attack) {
  Json j;
  j["bob_message"] = format_bit_pairs(config.bob_message);
  j["alice_message"] = format_bit_pairs(config.alice_message);
  j["control_probability"] = config.control_probability;
  j["control_mode_kind"] = to_string(config.control_mode_kind);
  j["seed"] = config.seed;
  j["abort_on_detect"] = config.abort_on_detect;
  j["max_runs"] = config.max_runs;
  Json attack_json;
  attack_json["attack"] = to_string(attack.kind);
  if (attack.intercepts()) attack_json["fake_state"] = to_string(attack.fake_state);
  j["attack"] = attack_json;
  return j;
}

std::pair<SessionConfig, AttackStrategy> config_from_json(const Json& json) {
  SessionConfig config;
  config.bob_message = parse_bit_pairs(json.at("bob_message").get<std::string>());
  config.alice_message = parse_bit_pairs(json.at("alice_message").get<std::string>());
  config.control_probability = json.at("control_probability").get<double>();
  config.control_mode_kind =
      control_mode_kind_from_string(json.at("control_mode_kind").get<std::string>());
  config.seed = json.at("seed").get<std::uint64_t>();
  config.abort_on_detect = json.at("abort_on_detect").get<bool>();
  config.max_runs = json.at("max_runs").get<std::uint64_t>();

  AttackStrategy attack;
  const Json& attack_json = json.at("attack");
  attack.kind = attack_kind_from_string(attack_json.at("attack").get<std::string>());
  if (attack.intercepts()) {
    attack.fake_state = bell_index_from_string(attack_json.at("fake_state").get<std::string>());
  }
  return {std::move(config), attack};
}

Json stats_to_json(const SessionStats& stats) {
  Json j;
  j["runs_total"] = stats.runs_total;
  j["runs_mm"] = stats.runs_mm;
  j["runs_cm"] = stats.runs_cm;
  j["runs_rcm"] = stats.runs_rcm;
  j["detections"] = stats.detections;
  j["detection_rate_per_control_run"] = stats.detection_rate_per_control_run;
  if (stats.eve_alice_accuracy) j["eve_alice_accuracy"] = *stats.eve_alice_accuracy;
  if (stats.eve_bob_accuracy) j["eve_bob_accuracy"] = *stats.eve_bob_accuracy;
  j["legit_decode_accuracy"] = stats.legit_decode_accuracy;
  j["parity_leak_bits"] = stats.parity_leak_bits;
  j["seed"] = stats.seed;
  return j;
}

Json exact_result_to_json(const ExactResult& result) {
  Json j;
  j["mode"] = to_string(result.mode);
  j["attack"] = to_string(result.attack.kind);
  if (result.attack.intercepts()) j["fake_state"] = to_string(result.attack.fake_state);
  j["bob_bits"] = to_string(result.bob_bits);
  if (result.alice_bits) j["alice_bits"] = to_string(*result.alice_bits);
  if (result.mode == RunMode::ControlModeRevised) {
    j["basis"] = result.basis ? to_string(*result.basis) : "averaged";
  }
  j["pass_probability"] = result.pass_probability;
  j["probability_sum"] = result.probability_sum;
  j["branch_count"] = result.branch_count;
  return j;
}

Json report_to_json(const Report& report) {
  Json j;
  j["version"] = report.tool_version;
  j["config"] = report.config;
  if (report.stats) j["stats"] = stats_to_json(*report.stats);
  if (!report.exact.empty()) {
    Json list = Json::array();
    for (const ExactResult& result : report.exact) list.push_back(exact_result_to_json(result));
    j["exact"] = list;
  }
  if (report.timestamp) j["timestamp"] = *report.timestamp;
  return j;
}

std::string render_report_json(const Report& report) { return report_to_json(report).dump(2) + "\n"; }

std::string render_report_text(const Report& report) {
  std::ostringstream out;
  out << "quantum dialogue simulator " << report.tool_version << "\n";
  if (!report.config.empty()) {
    // Abbreviate long message echoes; the JSON format keeps them verbatim.
    Json config = report.config;
    for (const char* key : {"bob_message", "alice_message"}) {
      if (config.contains(key) && config[key].is_string()) {
        const std::string text = config[key].get<std::string>();
        if (text.size() > 32) {
          config[key] = "<" + std::to_string(text.size() / 2) + " pairs>";
        }
      }
    }
    out << "config: " << config.dump() << "\n";
  }
  if (report.stats) {
    const SessionStats& s = *report.stats;
    out << "runs: total=" << s.runs_total << " mm=" << s.runs_mm << " cm=" << s.runs_cm
        << " rcm=" << s.runs_rcm << "\n";
    out << "detections: " << s.detections
        << " (rate per control run: " << format_rate(s.detection_rate_per_control_run) << ")\n";
    out << "legit decode accuracy: " << format_rate(s.legit_decode_accuracy) << "\n";
    if (s.eve_alice_accuracy && s.eve_bob_accuracy) {
      out << "eve accuracy: alice bits " << format_rate(*s.eve_alice_accuracy) << ", bob bits "
          << format_rate(*s.eve_bob_accuracy) << "\n";
    }
    out << "parity leak tally (rcm runs): " << s.parity_leak_bits << "\n";
    out << "seed: " << s.seed << "\n";
  }
  if (!report.exact.empty()) {
    out << "exact pass probabilities (" << report.exact.size() << " scenarios):\n";
    for (const ExactResult& r : report.exact) {
      out << "  mode=" << to_string(r.mode) << " attack=" << to_string(r.attack.kind);
      if (r.attack.intercepts()) out << " fake=" << to_string(r.attack.fake_state);
      out << " bob=" << to_string(r.bob_bits);
      if (r.alice_bits) out << " alice=" << to_string(*r.alice_bits);
      if (r.mode == RunMode::ControlModeRevised) {
        out << " basis=" << (r.basis ? to_string(*r.basis) : "averaged");
      }
      out << " pass_probability=" << format_rate(r.pass_probability)
          << " branches=" << r.branch_count << "\n";
    }
  }
  if (report.timestamp) out << "timestamp: " << *report.timestamp << "\n";
  return out.str();
}

std::string render_runs_csv(const std::vector<SessionResult>& sessions) {
  std::ostringstream out;
  out << "session,run_id,mode,bob_k,bob_l,alice_i,alice_j,bell_x,bell_y,alice_basis,"
         "alice_outcome,bob_outcome,verdict,announcements\n";
  for (std::size_t session = 0; session < sessions.size(); ++session) {
    for (const RunRecord& run : sessions[session].runs) {
      out << session << ',' << run.run_id << ',' << to_string(run.mode) << ',';
      out << run.bob_bits.first() << ',' << run.bob_bits.second() << ',';
      if (run.alice_bits) {
        out << run.alice_bits->first() << ',' << run.alice_bits->second() << ',';
      } else {
        out << ",,";
      }
      if (run.bell_outcome) {
        out << run.bell_outcome->k() << ',' << run.bell_outcome->l() << ',';
      } else {
        out << ",,";
      }
      out << (run.alice_basis ? to_string(*run.alice_basis) : "") << ',';
      if (run.alice_outcome) out << run.alice_outcome->result;
      out << ',';
      if (run.bob_outcome) out << run.bob_outcome->result;
      out << ',';
      out << to_string(run.verdict) << ',';
      for (std::size_t i = 0; i < run.announcements.size(); ++i) {
        if (i > 0) out << ';';
        out << format_announcement(run.announcements[i]);
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string iso8601_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

}  // namespace qdialogue
