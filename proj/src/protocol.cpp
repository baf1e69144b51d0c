#include "qdialogue/protocol.hpp"

#include <stdexcept>
#include <utility>

namespace qdialogue {

namespace {

std::string bits_detail(const char* key, int first, int second) {
  return std::string(key) + "=" + std::to_string(first) + std::to_string(second);
}

std::string basis_detail(MeasBasis basis) {
  return basis == MeasBasis::Z ? "basis=z" : "basis=x";
}

std::string outcome_detail(const Outcome& outcome) {
  return "outcome=" + std::to_string(outcome.result);
}

std::string verdict_detail(Verdict verdict) {
  return verdict == Verdict::Pass ? "verdict=pass" : "verdict=fail";
}

}  // namespace

bool is_public_announcement(Announcement::Kind kind) {
  switch (kind) {
    case Announcement::Kind::BellMeasured:
    case Announcement::Kind::TravelMeasured:
    case Announcement::Kind::HomeMeasured:
      return false;
    default:
      return true;
  }
}

void SessionConfig::validate() const {
  if (bob_message.empty() || alice_message.empty()) {
    throw std::invalid_argument("both messages must be non-empty");
  }
  if (bob_message.size() != alice_message.size()) {
    throw std::invalid_argument("messages must have equal length");
  }
  if (!(control_probability >= 0.0 && control_probability <= 1.0)) {
    throw std::invalid_argument("control_probability must lie in [0, 1]");
  }
  if (control_probability == 1.0 && max_runs == 0) {
    throw std::invalid_argument(
        "control_probability 1 delivers no messages; set max_runs to bound the session");
  }
}

PureState bob_prepare_and_encode(BitPair bits) {
  return apply_single_qubit(bell_state(BellIndex(0, 0)), 1, encoding_op(bits));
}

PureState alice_encode(const PureState& joint_state, int travel_qubit, BitPair bits) {
  return apply_single_qubit(joint_state, travel_qubit, encoding_op(bits));
}

BitPair decode_message_mode(BellIndex bell_outcome, BitPair own_bits) {
  return BitPair(bell_outcome.k(), bell_outcome.l()) ^ own_bits;
}

Verdict check_control_original(BitPair announced_alice_bits, BitPair bob_bits,
                               BellIndex bell_outcome) {
  return decode_message_mode(bell_outcome, bob_bits) == announced_alice_bits ? Verdict::Pass
                                                                             : Verdict::Fail;
}

bool expected_correlation(BitPair bob_bits, MeasBasis basis) {
  return basis == MeasBasis::Z ? bob_bits.first() == 1 : bob_bits.second() == 0;
}

Verdict revised_control_verdict(BitPair bob_bits, MeasBasis basis, int alice_result,
                                int bob_result) {
  const bool equal = alice_result == bob_result;
  return equal == expected_correlation(bob_bits, basis) ? Verdict::Pass : Verdict::Fail;
}

RevisedControlRun run_revised_control(const PureState& joint_state, int travel_qubit,
                                      int home_qubit, BitPair bob_bits, RandomStream& rng) {
  const MeasBasis basis = rng.next_bit() == 0 ? MeasBasis::Z : MeasBasis::X;
  auto [alice_outcome, after_alice] =
      measure_qubit(joint_state, travel_qubit, basis, rng.next_unit());
  auto [bob_outcome, after_bob] = measure_qubit(after_alice, home_qubit, basis, rng.next_unit());
  const Verdict verdict =
      revised_control_verdict(bob_bits, basis, alice_outcome.result, bob_outcome.result);
  return RevisedControlRun{basis, alice_outcome, bob_outcome, verdict, std::move(after_bob)};
}

SessionResult run_session(const SessionConfig& config, const AttackStrategy& attack) {
  config.validate();
  RandomStream rng(config.seed);
  SessionResult result;
  SessionStats& stats = result.stats;
  stats.seed = config.seed;

  const std::size_t total_pairs = config.bob_message.size();
  std::size_t next_pair = 0;
  std::uint64_t run_id = 0;
  bool aborted = false;

  while (next_pair < total_pairs && !aborted) {
    if (config.max_runs != 0 && run_id >= config.max_runs) break;

    RunRecord rec;
    rec.run_id = run_id;
    const BitPair bob_bits = config.bob_message[next_pair];
    rec.bob_bits = bob_bits;

    PureState state = bob_prepare_and_encode(bob_bits);
    const int home_qubit = 0;
    const int travel_qubit = 1;
    int alice_qubit = travel_qubit;
    std::optional<EveState> eve;

    rec.announcements.push_back({Announcement::Actor::Bob, Announcement::Kind::QubitSent, ""});
    if (attack.intercepts()) {
      auto [intercepted, eve_state] = eve_intercept_forward(state, travel_qubit, attack);
      state = std::move(intercepted);
      eve = eve_state;
      alice_qubit = eve_state.forwarded_qubit;
    }
    rec.announcements.push_back(
        {Announcement::Actor::Alice, Announcement::Kind::ReceiptConfirmed, ""});

    const bool control_run = rng.next_unit() < config.control_probability;

    if (control_run && config.control_mode_kind == ControlModeKind::Revised) {
      rec.mode = RunMode::ControlModeRevised;
      rec.announcements.push_back(
          {Announcement::Actor::Alice, Announcement::Kind::ModeAnnounced, "mode=rcm"});
      RevisedControlRun control =
          run_revised_control(state, alice_qubit, home_qubit, bob_bits, rng);
      state = control.post_state;
      rec.alice_basis = control.basis;
      rec.alice_outcome = control.alice_outcome;
      rec.bob_outcome = control.bob_outcome;
      rec.verdict = control.verdict;
      rec.announcements.push_back({Announcement::Actor::Alice,
                                   Announcement::Kind::TravelMeasured,
                                   outcome_detail(control.alice_outcome)});
      rec.announcements.push_back({Announcement::Actor::Alice, Announcement::Kind::BasisAnnounced,
                                   basis_detail(control.basis)});
      rec.announcements.push_back({Announcement::Actor::Alice,
                                   Announcement::Kind::OutcomeAnnounced,
                                   outcome_detail(control.alice_outcome)});
      rec.announcements.push_back({Announcement::Actor::Bob, Announcement::Kind::HomeMeasured,
                                   outcome_detail(control.bob_outcome)});
      rec.announcements.push_back({Announcement::Actor::Bob, Announcement::Kind::VerdictAnnounced,
                                   verdict_detail(control.verdict)});
      stats.runs_rcm += 1;
      stats.parity_leak_bits += 1;
      // pair re-queued: next_pair stays
    } else {
      const BitPair alice_bits = config.alice_message[next_pair];
      state = alice_encode(state, alice_qubit, alice_bits);

      std::optional<BitPair> eve_deduced;
      if (eve) {
        auto [after_eve, deduced] = eve_intercept_return(state, *eve, rng.next_unit());
        state = std::move(after_eve);
        eve_deduced = deduced;
      }

      auto [bell_outcome, after_bell] =
          bell_measure(state, home_qubit, travel_qubit, rng.next_unit());
      state = std::move(after_bell);
      rec.bell_outcome = bell_outcome;
      rec.alice_bits = alice_bits;
      rec.announcements.push_back(
          {Announcement::Actor::Bob, Announcement::Kind::BellMeasured,
           bits_detail("result", bell_outcome.k(), bell_outcome.l())});

      if (control_run) {
        rec.mode = RunMode::ControlModeOriginal;
        rec.announcements.push_back(
            {Announcement::Actor::Alice, Announcement::Kind::ModeAnnounced, "mode=cm"});
        rec.announcements.push_back(
            {Announcement::Actor::Alice, Announcement::Kind::BitsRevealed,
             bits_detail("bits", alice_bits.first(), alice_bits.second())});
        rec.verdict = check_control_original(alice_bits, bob_bits, bell_outcome);
        rec.announcements.push_back({Announcement::Actor::Bob,
                                     Announcement::Kind::VerdictAnnounced,
                                     verdict_detail(rec.verdict)});
        stats.runs_cm += 1;
        // pair re-queued: next_pair stays
      } else {
        rec.mode = RunMode::MessageMode;
        rec.announcements.push_back(
            {Announcement::Actor::Alice, Announcement::Kind::ModeAnnounced, "mode=mm"});
        rec.announcements.push_back(
            {Announcement::Actor::Bob, Announcement::Kind::BellOutcomeAnnounced,
             bits_detail("result", bell_outcome.k(), bell_outcome.l())});

        const BitPair bob_decoded = decode_message_mode(bell_outcome, bob_bits);
        const BitPair alice_decoded = decode_message_mode(bell_outcome, alice_bits);
        stats.runs_mm += 1;
        if (bob_decoded == alice_bits && alice_decoded == bob_bits) {
          stats.mm_decode_correct += 1;
        }
        if (eve && eve_deduced) {
          eve->deduced_bob_bits = eve_decode_bob(bell_outcome, *eve_deduced);
          if (*eve_deduced == alice_bits) stats.mm_eve_alice_correct += 1;
          if (*eve->deduced_bob_bits == bob_bits) stats.mm_eve_bob_correct += 1;
        }
        rec.verdict = Verdict::NotChecked;
        next_pair += 1;
      }
    }

    if (rec.verdict == Verdict::Fail) {
      stats.detections += 1;
      if (config.abort_on_detect) aborted = true;
    }
    stats.runs_total += 1;
    result.runs.push_back(std::move(rec));
    run_id += 1;
  }

  stats.finalize(attack.intercepts());
  return result;
}

}  // namespace qdialogue
