#include "qdialogue/adversary.hpp"

#include <stdexcept>
#include <utility>

namespace qdialogue {

std::pair<PureState, EveState> eve_intercept_forward(const PureState& global_state,
                                                     int travel_qubit,
                                                     const AttackStrategy& strategy) {
  if (!strategy.intercepts()) {
    throw std::invalid_argument("eve_intercept_forward requires an intercept-resend strategy");
  }
  if (global_state.num_qubits() != 2) {
    throw std::invalid_argument("forward interception expects Bob's bare 2-qubit pair");
  }
  if (travel_qubit < 0 || travel_qubit >= 2) {
    throw std::out_of_range("travel qubit index out of range");
  }
  // Fake pair appended as qubits 2 (forwarded to Alice) and 3 (retained).
  PureState combined = tensor(global_state, bell_state(strategy.fake_state));
  EveState eve;
  eve.fake_state = strategy.fake_state;
  eve.captured_travel_qubit = travel_qubit;
  eve.forwarded_qubit = 2;
  eve.retained_qubit = 3;
  return {std::move(combined), eve};
}

std::pair<PureState, BitPair> eve_intercept_return(const PureState& global_state, EveState& eve,
                                                   double randomness) {
  if (global_state.num_qubits() != 4) {
    throw std::invalid_argument("return interception requires a prior forward interception");
  }
  auto [outcome, collapsed] =
      bell_measure(global_state, eve.forwarded_qubit, eve.retained_qubit, randomness);
  // The fake pair was prepared in (a, b); Alice's C_{i,j} shifted it to
  // (a XOR i, b XOR j), so the measured shift is exactly her bit pair.
  const BitPair deduced(outcome.k() ^ eve.fake_state.k(), outcome.l() ^ eve.fake_state.l());
  eve.deduced_alice_bits = deduced;
  PureState replayed =
      apply_single_qubit(collapsed, eve.captured_travel_qubit, encoding_op(deduced));
  return {std::move(replayed), deduced};
}

BitPair eve_decode_bob(BellIndex public_bell_outcome, BitPair deduced_alice_bits) {
  return BitPair(public_bell_outcome.k(), public_bell_outcome.l()) ^ deduced_alice_bits;
}

}  // namespace qdialogue
