#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

namespace qdialogue {

using Amplitude = std::complex<double>;

/// Tolerance for amplitude-level comparisons (normalization, orthogonality,
/// fidelity). Everything here is a handful of multiplications by 1/sqrt(2),
/// so near machine precision is attainable.
inline constexpr double kTolerance = 1e-12;

/// Bit pair (k, l) labelling one of the four Bell states. The same label
/// names the dense-coding operation C_{k,l} and the outcome of a Bell-basis
/// measurement.
class BellIndex {
 public:
  BellIndex() = default;
  BellIndex(int k, int l);

  int k() const { return k_; }
  int l() const { return l_; }

  /// Position in the fixed enumeration order (0,0), (0,1), (1,0), (1,1).
  int ordinal() const { return k_ * 2 + l_; }
  static BellIndex from_ordinal(int ordinal);

  BellIndex operator^(BellIndex other) const { return {k_ ^ other.k_, l_ ^ other.l_}; }
  friend bool operator==(const BellIndex&, const BellIndex&) = default;

 private:
  int k_ = 0;
  int l_ = 0;
};

/// Two classical bits. Carried by one dense-coded qubit per leg of the
/// dialogue; also the unit of both parties' messages.
class BitPair {
 public:
  BitPair() = default;
  BitPair(int first, int second);

  int first() const { return first_; }
  int second() const { return second_; }

  BitPair operator^(BitPair other) const { return {first_ ^ other.first_, second_ ^ other.second_}; }
  friend bool operator==(const BitPair&, const BitPair&) = default;

 private:
  int first_ = 0;
  int second_ = 0;
};

enum class MeasBasis { Z, X };

/// Eigenvector `outcome` (0 or 1) of the basis: |0>,|1> for Z and |+>,|-> for X.
std::array<Amplitude, 2> basis_eigenvector(MeasBasis basis, int outcome);

/// Result of a single-qubit projective measurement: 0 selects the first
/// eigenvector of the basis, 1 the second.
struct Outcome {
  int result = 0;
  MeasBasis basis = MeasBasis::Z;
  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Normalized pure state of 1..4 qubits. Qubit 0 is the most significant bit
/// of the basis index, i.e. amplitudes are ordered |q0 q1 ... q_{n-1}>.
class PureState {
 public:
  /// Throws std::invalid_argument unless `amplitudes` has length
  /// 2^num_qubits, every component is finite and the norm is 1 within
  /// kTolerance.
  PureState(int num_qubits, std::vector<Amplitude> amplitudes);

  static PureState basis_state(int num_qubits, std::size_t basis_index);

  int num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<Amplitude>& amplitudes() const { return amps_; }
  Amplitude amplitude(std::size_t basis_index) const;

 private:
  int num_qubits_;
  std::vector<Amplitude> amps_;
};

/// Single-qubit unitary C_{k,l} together with its Bell-index label. Acting on
/// the travel half of the (0,0) Bell state it produces the (k,l) Bell state
/// up to a global phase.
struct EncodingOp {
  BellIndex index;
  std::array<Amplitude, 4> matrix;  // row-major 2x2
};

/// The Bell state of the given index, in its Z-basis form.
PureState bell_state(BellIndex index);

/// C_{0,0} = identity, C_{0,1} = phase flip, C_{1,0} = bit flip,
/// C_{1,1} = bit flip after phase flip.
EncodingOp encoding_op(BellIndex index);
EncodingOp encoding_op(BitPair bits);

PureState apply_single_qubit(const PureState& state, int qubit, const EncodingOp& op);

/// Born-rule probabilities (P(outcome 0), P(outcome 1)) without consuming the
/// state.
std::pair<double, double> outcome_distribution(const PureState& state, int qubit, MeasBasis basis);

/// Projective measurement of one qubit. `randomness` must lie in [0, 1);
/// outcome 0 is selected iff it falls below P(outcome 0). Returns the outcome
/// and the renormalized post-measurement state.
std::pair<Outcome, PureState> measure_qubit(const PureState& state, int qubit, MeasBasis basis,
                                            double randomness);

/// Bell-basis measurement of a qubit pair. Outcomes are accumulated in the
/// order (0,0), (0,1), (1,0), (1,1).
std::pair<BellIndex, PureState> bell_measure(const PureState& state, int qubit_a, int qubit_b,
                                             double randomness);

/// One possible result of a projective measurement, with its Born-rule
/// probability and renormalized post-measurement state. Branches with
/// probability below 1e-15 are omitted.
struct MeasurementBranch {
  Outcome outcome;
  double probability;
  PureState post_state;
};
std::vector<MeasurementBranch> measurement_branches(const PureState& state, int qubit,
                                                    MeasBasis basis);

struct BellBranch {
  BellIndex outcome;
  double probability;
  PureState post_state;
};
std::vector<BellBranch> bell_branches(const PureState& state, int qubit_a, int qubit_b);

Amplitude inner_product(const PureState& a, const PureState& b);  // <a|b>
double fidelity(const PureState& a, const PureState& b);          // |<a|b>|^2
PureState tensor(const PureState& a, const PureState& b);

}  // namespace qdialogue
