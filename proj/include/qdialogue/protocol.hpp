#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdialogue/adversary.hpp"
#include "qdialogue/quantum.hpp"
#include "qdialogue/random.hpp"
#include "qdialogue/stats.hpp"

namespace qdialogue {

enum class RunMode { MessageMode, ControlModeOriginal, ControlModeRevised };
enum class ControlModeKind { Original, Revised };
enum class Verdict { NotChecked, Pass, Fail };

/// One entry of a run's recorded transcript. Classical announcements are
/// public (Eve reads them); measurement events are local and logged only so
/// the ordering of the choreography is checkable after the fact.
struct Announcement {
  enum class Actor { Alice, Bob };
  enum class Kind {
    QubitSent,              // Bob: travel qubit dispatched
    ReceiptConfirmed,       // Alice: qubit arrived
    ModeAnnounced,          // Alice: mm / cm / rcm
    BellMeasured,           // Bob, local: Bell measurement done
    BellOutcomeAnnounced,   // Bob: (x, y) made public (MM only)
    BitsRevealed,           // Alice: (i, j) made public (CM only)
    TravelMeasured,         // Alice, local: travel qubit measured (RCM)
    BasisAnnounced,         // Alice: chosen basis (RCM)
    OutcomeAnnounced,       // Alice: measurement outcome (RCM)
    HomeMeasured,           // Bob, local: home qubit measured (RCM)
    VerdictAnnounced        // Bob: pass / fail (CM and RCM)
  };

  Actor actor;
  Kind kind;
  std::string detail;

  friend bool operator==(const Announcement&, const Announcement&) = default;
};

/// True for entries any eavesdropper on the classical channel can read.
bool is_public_announcement(Announcement::Kind kind);

/// Complete record of one protocol run. Field presence depends on the mode:
/// MM and CM runs carry alice_bits and bell_outcome; RCM runs carry
/// alice_basis and both measurement outcomes instead.
struct RunRecord {
  std::uint64_t run_id = 0;
  RunMode mode = RunMode::MessageMode;
  BitPair bob_bits{};
  std::optional<BitPair> alice_bits;
  std::optional<BellIndex> bell_outcome;
  std::optional<MeasBasis> alice_basis;
  std::optional<Outcome> alice_outcome;
  std::optional<Outcome> bob_outcome;
  std::vector<Announcement> announcements;
  Verdict verdict = Verdict::NotChecked;
};

struct SessionConfig {
  std::vector<BitPair> bob_message;
  std::vector<BitPair> alice_message;
  double control_probability = 0.0;
  ControlModeKind control_mode_kind = ControlModeKind::Revised;
  std::uint64_t seed = 0;
  bool abort_on_detect = false;
  /// Safety cap on the number of runs; 0 means uncapped. Required nonzero
  /// when control_probability is 1 (such a session never delivers anything).
  std::uint64_t max_runs = 0;

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;
};

struct SessionResult {
  std::vector<RunRecord> runs;
  SessionStats stats;
};

/// Bob's side of the preparation step: a fresh (0,0) EPR pair with C_{k,l}
/// applied to the travel qubit. Qubit 0 is the home qubit, qubit 1 travels.
PureState bob_prepare_and_encode(BitPair bits);

/// Alice's dense-coding step on whichever qubit she currently holds.
PureState alice_encode(const PureState& joint_state, int travel_qubit, BitPair bits);

/// Recovers the counterpart's bits from the announced Bell outcome and one's
/// own encoding: (x XOR first, y XOR second).
BitPair decode_message_mode(BellIndex bell_outcome, BitPair own_bits);

/// Original control mode check: Pass iff i = x XOR k and j = y XOR l.
Verdict check_control_original(BitPair announced_alice_bits, BitPair bob_bits,
                               BellIndex bell_outcome);

/// Whether the two parties' outcomes must be equal for the Bell state Bob
/// prepared: under Z they are equal iff k = 1, under X iff l = 0.
bool expected_correlation(BitPair bob_bits, MeasBasis basis);

/// The revised-control predicate on its own, so a recorded run can be
/// re-checked.
Verdict revised_control_verdict(BitPair bob_bits, MeasBasis basis, int alice_result,
                                int bob_result);

/// Everything the revised control mode produces for one run.
struct RevisedControlRun {
  MeasBasis basis = MeasBasis::Z;
  Outcome alice_outcome{};
  Outcome bob_outcome{};
  Verdict verdict = Verdict::NotChecked;
  PureState post_state;
};

/// Runs the revised control mode on the joint state as received by Alice:
/// she measures the travel qubit in a uniformly chosen basis, Bob measures
/// the home qubit in the same basis, and the outcomes are checked against
/// the expected Bell correlation.
RevisedControlRun run_revised_control(const PureState& joint_state, int travel_qubit,
                                      int home_qubit, BitPair bob_bits, RandomStream& rng);

/// Executes a full session: Bob keeps sending encoded pairs until both
/// messages are delivered in message-mode runs (or max_runs is reached).
/// Message pairs consumed by control runs are re-sent later. With
/// abort_on_detect the session stops at the first Fail verdict.
SessionResult run_session(const SessionConfig& config, const AttackStrategy& attack);

}  // namespace qdialogue
