#include "qdialogue/report.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace qdialogue;

TEST_CASE("string codecs round-trip") {
  for (const std::string mode : {"mm", "cm", "rcm"}) {
    CHECK(to_string(run_mode_from_string(mode)) == mode);
  }
  for (const std::string basis : {"z", "x"}) {
    CHECK(to_string(basis_from_string(basis)) == basis);
  }
  for (const std::string kind : {"original", "revised"}) {
    CHECK(to_string(control_mode_kind_from_string(kind)) == kind);
  }
  for (const std::string attack : {"none", "intercept-resend"}) {
    CHECK(to_string(attack_kind_from_string(attack)) == attack);
  }
  for (const std::string bits : {"00", "01", "10", "11"}) {
    CHECK(to_string(bell_index_from_string(bits)) == bits);
    CHECK(to_string(bit_pair_from_string(bits)) == bits);
  }
  CHECK_THROWS_AS(run_mode_from_string("qq"), std::invalid_argument);
  CHECK_THROWS_AS(bell_index_from_string("2"), std::invalid_argument);
}

TEST_CASE("bit pair strings") {
  const std::vector<BitPair> pairs = parse_bit_pairs("011011");
  REQUIRE(pairs.size() == 3);
  CHECK(pairs[0] == BitPair{0, 1});
  CHECK(pairs[1] == BitPair{1, 0});
  CHECK(pairs[2] == BitPair{1, 1});
  CHECK(format_bit_pairs(pairs) == "011011");
  CHECK_THROWS_AS(parse_bit_pairs(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_bit_pairs("010"), std::invalid_argument);
  CHECK_THROWS_AS(parse_bit_pairs("0a"), std::invalid_argument);
}

TEST_CASE("config echo round-trips to an equivalent configuration") {
  SessionConfig config;
  config.bob_message = parse_bit_pairs("01101100");
  config.alice_message = parse_bit_pairs("11100100");
  config.control_probability = 0.25;
  config.control_mode_kind = ControlModeKind::Original;
  config.seed = 987654321;
  config.abort_on_detect = true;
  config.max_runs = 64;
  const AttackStrategy attack = AttackStrategy::intercept_resend({1, 0});

  const Json echo = config_to_json(config, attack);
  const auto [parsed_config, parsed_attack] = config_from_json(echo);
  CHECK(parsed_config.bob_message == config.bob_message);
  CHECK(parsed_config.alice_message == config.alice_message);
  CHECK(parsed_config.control_probability == config.control_probability);
  CHECK(parsed_config.control_mode_kind == config.control_mode_kind);
  CHECK(parsed_config.seed == config.seed);
  CHECK(parsed_config.abort_on_detect == config.abort_on_detect);
  CHECK(parsed_config.max_runs == config.max_runs);
  CHECK(parsed_attack == attack);
  CHECK(config_to_json(parsed_config, parsed_attack) == echo);
}

TEST_CASE("stats JSON carries the documented fields") {
  SessionStats stats;
  stats.runs_total = 10;
  stats.runs_mm = 6;
  stats.runs_cm = 1;
  stats.runs_rcm = 3;
  stats.detections = 2;
  stats.mm_decode_correct = 6;
  stats.parity_leak_bits = 3;
  stats.seed = 5;
  stats.finalize(false);

  const Json j = stats_to_json(stats);
  for (const char* key : {"runs_total", "runs_mm", "runs_cm", "runs_rcm", "detections",
                          "detection_rate_per_control_run", "legit_decode_accuracy",
                          "parity_leak_bits", "seed"}) {
    CHECK(j.contains(key));
  }
  CHECK_FALSE(j.contains("eve_alice_accuracy"));

  stats.finalize(true);
  const Json attacked = stats_to_json(stats);
  CHECK(attacked.contains("eve_alice_accuracy"));
  CHECK(attacked.contains("eve_bob_accuracy"));
}

TEST_CASE("report JSON top-level schema") {
  Report report;
  report.config["command"] = "exact";
  report.exact.push_back(exact_pass_probability(RunMode::ControlModeRevised,
                                                AttackStrategy::intercept_resend(), {0, 1},
                                                ScenarioInput::rcm_averaged()));
  report.timestamp = "2024-01-01T00:00:00Z";
  const Json j = report_to_json(report);
  CHECK(j.at("version") == kToolVersion);
  CHECK(j.contains("config"));
  CHECK_FALSE(j.contains("stats"));
  REQUIRE(j.at("exact").size() == 1);
  const Json& row = j.at("exact").at(0);
  CHECK(row.at("mode") == "rcm");
  CHECK(row.at("fake_state") == "00");
  CHECK(row.at("basis") == "averaged");
  CHECK(row.at("pass_probability").get<double>() == doctest::Approx(0.5));
  CHECK(j.at("timestamp") == "2024-01-01T00:00:00Z");
}

TEST_CASE("CSV has one row per run with mode-dependent fields") {
  SessionConfig config;
  config.bob_message = parse_bit_pairs("0110");
  config.alice_message = parse_bit_pairs("1100");
  config.control_probability = 0.5;
  config.control_mode_kind = ControlModeKind::Revised;
  config.seed = 3;
  const MonteCarloDetail detail = monte_carlo_detailed(config, AttackStrategy::none(), 2);

  const std::string csv = render_runs_csv(detail.sessions);
  const std::size_t rows = std::count(csv.begin(), csv.end(), '\n');
  CHECK(rows == detail.stats.runs_total + 1);
  CHECK(csv.rfind("session,run_id,mode,", 0) == 0);

  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    const bool is_rcm = line.find(",rcm,") != std::string::npos;
    if (is_rcm) {
      CHECK(line.find("basis_announced") != std::string::npos);
    } else {
      CHECK(line.find("bell_outcome_announced") != std::string::npos);
    }
  }
}

TEST_CASE("announcement formatting distinguishes public and local entries") {
  CHECK(is_public_announcement(Announcement::Kind::ModeAnnounced));
  CHECK(is_public_announcement(Announcement::Kind::BasisAnnounced));
  CHECK_FALSE(is_public_announcement(Announcement::Kind::BellMeasured));
  CHECK_FALSE(is_public_announcement(Announcement::Kind::HomeMeasured));
  const Announcement a{Announcement::Actor::Alice, Announcement::Kind::BasisAnnounced, "basis=x"};
  CHECK(format_announcement(a) == "alice:basis_announced(basis=x)");
}
