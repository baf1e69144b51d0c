#include "qdialogue/protocol.hpp"

#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "support.hpp"

using namespace qdialogue;
using namespace qdialogue::test;

namespace {

SessionConfig basic_config(std::uint64_t seed = 1) {
  SessionConfig config;
  config.bob_message = {{0, 1}, {1, 0}, {1, 1}};
  config.alice_message = {{1, 1}, {0, 0}, {0, 1}};
  config.seed = seed;
  return config;
}

/// All 16 (k,l,i,j) combinations as a pair of 16-pair messages.
SessionConfig exhaustive_config(std::uint64_t seed = 1) {
  SessionConfig config;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          config.bob_message.emplace_back(k, l);
          config.alice_message.emplace_back(i, j);
        }
  config.seed = seed;
  return config;
}

bool has_kind(const RunRecord& run, Announcement::Kind kind) {
  return std::any_of(run.announcements.begin(), run.announcements.end(),
                     [kind](const Announcement& a) { return a.kind == kind; });
}

std::size_t kind_position(const RunRecord& run, Announcement::Kind kind) {
  for (std::size_t i = 0; i < run.announcements.size(); ++i) {
    if (run.announcements[i].kind == kind) return i;
  }
  return run.announcements.size();
}

}  // namespace

TEST_CASE("bob_prepare_and_encode produces the labelled Bell state") {
  CHECK(amplitudes_close(bob_prepare_and_encode({0, 0}), bell_state({0, 0})));
  CHECK(same_state(bob_prepare_and_encode({0, 1}), bell_state({0, 1})));
  CHECK(same_state(bob_prepare_and_encode({1, 1}), bell_state({1, 1})));
}

TEST_CASE("alice_encode composes with Bob's encoding by XOR") {
  const PureState start = bob_prepare_and_encode({0, 0});
  CHECK(amplitudes_close(alice_encode(start, 1, {0, 0}), start));
  CHECK(same_state(alice_encode(start, 1, {1, 0}), bell_state({1, 0})));
  CHECK(same_state(alice_encode(bob_prepare_and_encode({0, 1}), 1, {1, 0}), bell_state({1, 1})));
  CHECK_THROWS_AS(alice_encode(start, 2, {1, 0}), std::out_of_range);
}

TEST_CASE("decode_message_mode") {
  CHECK(decode_message_mode({1, 1}, {1, 0}) == BitPair{0, 1});
  CHECK(decode_message_mode({0, 0}, {0, 0}) == BitPair{0, 0});

  SUBCASE("round-trips for all 16 combinations") {
    for (int k = 0; k < 2; ++k)
      for (int l = 0; l < 2; ++l)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            const BellIndex bell(k ^ i, l ^ j);
            CHECK(decode_message_mode(bell, {i, j}) == BitPair{k, l});
            CHECK(decode_message_mode(bell, {k, l}) == BitPair{i, j});
          }
  }
}

TEST_CASE("check_control_original") {
  CHECK(check_control_original({1, 0}, {0, 1}, {1, 1}) == Verdict::Pass);
  CHECK(check_control_original({0, 0}, {0, 0}, {0, 0}) == Verdict::Pass);
  CHECK(check_control_original({1, 0}, {0, 0}, {0, 0}) == Verdict::Fail);
}

TEST_CASE("expected_correlation matches Born-rule enumeration of every Bell state") {
  // Spot checks: (0,1) must be opposite in Z, (1,0) equal in X.
  CHECK_FALSE(expected_correlation({0, 1}, MeasBasis::Z));
  CHECK(expected_correlation({1, 0}, MeasBasis::X));

  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      for (MeasBasis basis : {MeasBasis::Z, MeasBasis::X}) {
        const PureState state = bell_state({k, l});
        // Exhaustive two-step branch walk: Alice's travel-qubit measurement,
        // then Bob's home qubit must be deterministic on each branch.
        bool all_equal = true;
        bool all_opposite = true;
        for (const MeasurementBranch& alice : measurement_branches(state, 1, basis)) {
          const auto [p0, p1] = outcome_distribution(alice.post_state, 0, basis);
          const int bob_result = p1 > 0.5 ? 1 : 0;
          CHECK(close(bob_result == 1 ? p1 : p0, 1.0));
          if (bob_result == alice.outcome.result) {
            all_opposite = false;
          } else {
            all_equal = false;
          }
        }
        CHECK(all_equal != all_opposite);
        CHECK(expected_correlation({k, l}, basis) == all_equal);
      }
    }
  }
}

TEST_CASE("run_revised_control passes with certainty on an honest channel") {
  RandomStream rng(31);
  for (int k = 0; k < 2; ++k) {
    for (int l = 0; l < 2; ++l) {
      for (int trial = 0; trial < 100; ++trial) {
        const RevisedControlRun control =
            run_revised_control(bob_prepare_and_encode({k, l}), 1, 0, {k, l}, rng);
        CHECK(control.verdict == Verdict::Pass);
        CHECK(revised_control_verdict({k, l}, control.basis, control.alice_outcome.result,
                                      control.bob_outcome.result) == Verdict::Pass);
      }
    }
  }
}

TEST_CASE("revised control worked example: bits (0,1) give opposite outcomes in both bases") {
  RandomStream rng(37);
  const PureState state = bob_prepare_and_encode({0, 1});
  for (MeasBasis basis : {MeasBasis::Z, MeasBasis::X}) {
    for (int trial = 0; trial < 500; ++trial) {
      auto [alice, collapsed] = measure_qubit(state, 1, basis, rng.next_unit());
      auto [bob, ignored] = measure_qubit(collapsed, 0, basis, rng.next_unit());
      CHECK(alice.result != bob.result);
    }
  }
}

TEST_CASE("honest message-mode session delivers both messages exactly") {
  SessionConfig config = exhaustive_config();
  config.control_probability = 0.0;
  const SessionResult result = run_session(config, AttackStrategy::none());

  CHECK(result.stats.runs_total == 16);
  CHECK(result.stats.runs_mm == 16);
  CHECK(result.stats.legit_decode_accuracy == 1.0);
  CHECK_FALSE(result.stats.eve_alice_accuracy.has_value());

  for (std::size_t n = 0; n < result.runs.size(); ++n) {
    const RunRecord& run = result.runs[n];
    REQUIRE(run.bell_outcome.has_value());
    REQUIRE(run.alice_bits.has_value());
    // both directions decode to the configured ground truth
    CHECK(decode_message_mode(*run.bell_outcome, run.bob_bits) == config.alice_message[n]);
    CHECK(decode_message_mode(*run.bell_outcome, *run.alice_bits) == config.bob_message[n]);
  }
}

TEST_CASE("control runs re-queue their pair so delivery order is preserved") {
  SessionConfig config = basic_config(99);
  config.control_probability = 0.4;
  config.control_mode_kind = ControlModeKind::Revised;
  const SessionResult result = run_session(config, AttackStrategy::none());

  std::vector<BitPair> delivered_bob;
  std::vector<BitPair> delivered_alice;
  for (const RunRecord& run : result.runs) {
    if (run.mode == RunMode::MessageMode) {
      delivered_bob.push_back(run.bob_bits);
      delivered_alice.push_back(*run.alice_bits);
    }
  }
  CHECK(delivered_bob == config.bob_message);
  CHECK(delivered_alice == config.alice_message);
}

TEST_CASE("record field presence follows the run mode") {
  SessionConfig config = basic_config(7);
  config.control_probability = 0.5;

  SUBCASE("revised control") {
    config.control_mode_kind = ControlModeKind::Revised;
    const SessionResult result = run_session(config, AttackStrategy::none());
    for (const RunRecord& run : result.runs) {
      if (run.mode == RunMode::ControlModeRevised) {
        CHECK(run.alice_basis.has_value());
        CHECK(run.alice_outcome.has_value());
        CHECK(run.bob_outcome.has_value());
        CHECK_FALSE(run.alice_bits.has_value());
        CHECK_FALSE(run.bell_outcome.has_value());
        CHECK(run.verdict != Verdict::NotChecked);
      } else {
        CHECK(run.mode == RunMode::MessageMode);
        CHECK(run.bell_outcome.has_value());
        CHECK(run.alice_bits.has_value());
        CHECK_FALSE(run.alice_basis.has_value());
        CHECK(run.verdict == Verdict::NotChecked);
      }
    }
  }
  SUBCASE("original control") {
    config.control_mode_kind = ControlModeKind::Original;
    const SessionResult result = run_session(config, AttackStrategy::none());
    bool saw_cm = false;
    for (const RunRecord& run : result.runs) {
      if (run.mode == RunMode::ControlModeOriginal) {
        saw_cm = true;
        CHECK(run.bell_outcome.has_value());
        CHECK(run.alice_bits.has_value());
        CHECK_FALSE(run.alice_basis.has_value());
        CHECK(run.verdict == Verdict::Pass);
      }
    }
    CHECK(saw_cm);
  }
}

TEST_CASE("announcement ordering follows the choreography") {
  SessionConfig config = exhaustive_config(3);
  config.control_probability = 0.5;
  config.control_mode_kind = ControlModeKind::Revised;
  const SessionResult result = run_session(config, AttackStrategy::none());

  for (const RunRecord& run : result.runs) {
    if (run.mode == RunMode::MessageMode) {
      // Bob measures first, but announces the result only after Alice's mode
      // announcement.
      CHECK(kind_position(run, Announcement::Kind::BellMeasured) <
            kind_position(run, Announcement::Kind::ModeAnnounced));
      CHECK(kind_position(run, Announcement::Kind::ModeAnnounced) <
            kind_position(run, Announcement::Kind::BellOutcomeAnnounced));
    } else {
      // Alice reveals her basis before Bob touches his home qubit.
      CHECK(kind_position(run, Announcement::Kind::BasisAnnounced) <
            kind_position(run, Announcement::Kind::HomeMeasured));
      CHECK(has_kind(run, Announcement::Kind::VerdictAnnounced));
    }
  }
}

TEST_CASE("control-run frequency is binomial in the control probability") {
  SessionConfig config;
  config.bob_message.assign(10000, {0, 1});
  config.alice_message.assign(10000, {1, 0});
  config.control_probability = 0.5;
  config.max_runs = 10000;
  config.seed = 2024;
  const SessionResult result = run_session(config, AttackStrategy::none());
  CHECK(result.stats.runs_total == 10000);
  const double control_runs = static_cast<double>(result.stats.runs_cm + result.stats.runs_rcm);
  // 4 sigma around the binomial mean
  CHECK(control_runs > 5000 - 4 * 50);
  CHECK(control_runs < 5000 + 4 * 50);
}

TEST_CASE("abort_on_detect stops the session at the first failure") {
  SessionConfig config;
  config.bob_message.assign(200, {0, 1});
  config.alice_message.assign(200, {1, 0});
  config.control_probability = 0.5;
  config.control_mode_kind = ControlModeKind::Revised;
  config.abort_on_detect = true;
  config.seed = 11;
  const SessionResult result = run_session(config, AttackStrategy::intercept_resend());
  REQUIRE(result.stats.detections == 1);
  CHECK(result.runs.back().verdict == Verdict::Fail);
  for (std::size_t i = 0; i + 1 < result.runs.size(); ++i) {
    CHECK(result.runs[i].verdict != Verdict::Fail);
  }
}

TEST_CASE("session config validation") {
  SessionConfig config;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // empty messages

  config = basic_config();
  config.alice_message.pop_back();
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // length mismatch

  config = basic_config();
  config.control_probability = 1.5;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);

  config = basic_config();
  config.control_probability = 1.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // p=1 needs max_runs
  config.max_runs = 10;
  CHECK_NOTHROW(config.validate());
}

TEST_CASE("identical seeds reproduce a session bit for bit") {
  SessionConfig config = exhaustive_config(42);
  config.control_probability = 0.3;
  const SessionResult a = run_session(config, AttackStrategy::intercept_resend({1, 1}));
  const SessionResult b = run_session(config, AttackStrategy::intercept_resend({1, 1}));
  CHECK(a.stats == b.stats);
  REQUIRE(a.runs.size() == b.runs.size());
  for (std::size_t i = 0; i < a.runs.size(); ++i) {
    CHECK(a.runs[i].mode == b.runs[i].mode);
    CHECK(a.runs[i].bob_bits == b.runs[i].bob_bits);
    CHECK(a.runs[i].alice_bits == b.runs[i].alice_bits);
    CHECK(a.runs[i].bell_outcome == b.runs[i].bell_outcome);
    CHECK(a.runs[i].verdict == b.runs[i].verdict);
    CHECK(a.runs[i].announcements == b.runs[i].announcements);
  }
}
