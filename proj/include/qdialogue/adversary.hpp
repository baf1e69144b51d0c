#pragma once

#include <optional>
#include <utility>

#include "qdialogue/quantum.hpp"

namespace qdialogue {

/// Adversary configuration for a session: honest channel, or the
/// intercept-and-resend attack with a chosen fake Bell state.
struct AttackStrategy {
  enum class Kind { None, InterceptResend };

  Kind kind = Kind::None;
  BellIndex fake_state{};  // meaningful only for InterceptResend

  static AttackStrategy none() { return {}; }
  static AttackStrategy intercept_resend(BellIndex fake_state = BellIndex(0, 0)) {
    return {Kind::InterceptResend, fake_state};
  }

  bool intercepts() const { return kind == Kind::InterceptResend; }

  friend bool operator==(const AttackStrategy&, const AttackStrategy&) = default;
};

/// Eve's bookkeeping for one intercepted run. Qubit positions refer to the
/// 4-qubit global state produced by eve_intercept_forward:
/// 0 = Bob's home qubit, 1 = the captured original travel qubit,
/// 2 = the fake half forwarded to Alice, 3 = Eve's retained half.
struct EveState {
  BellIndex fake_state{};
  int captured_travel_qubit = 1;
  int forwarded_qubit = 2;
  int retained_qubit = 3;
  std::optional<BitPair> deduced_alice_bits;
  std::optional<BitPair> deduced_bob_bits;
};

/// Forward-leg interception: Eve keeps the encoded travel qubit and forwards
/// one half of her own EPR pair instead. The returned state is the 4-qubit
/// tensor product of Bob's pair and the fake pair.
std::pair<PureState, EveState> eve_intercept_forward(const PureState& global_state,
                                                     int travel_qubit,
                                                     const AttackStrategy& strategy);

/// Return-leg interception: Bell-measures the returning fake qubit against
/// the retained half, deduces Alice's bits from the shift relative to the
/// prepared fake state, and replays Alice's encoding on the captured original
/// travel qubit before forwarding it to Bob.
std::pair<PureState, BitPair> eve_intercept_return(const PureState& global_state, EveState& eve,
                                                   double randomness);

/// Bob's bits from his public Bell-measurement announcement and Eve's deduced
/// Alice bits: (x XOR i, y XOR j).
BitPair eve_decode_bob(BellIndex public_bell_outcome, BitPair deduced_alice_bits);

}  // namespace qdialogue
