#include "qdialogue/quantum.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qdialogue {

namespace {

constexpr int kMaxQubits = 4;
constexpr double kBranchCutoff = 1e-15;

int checked_bit(int bit, const char* what) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument(std::string(what) + " must be 0 or 1, got " + std::to_string(bit));
  }
  return bit;
}

double inv_sqrt2() {
  static const double value = std::sqrt(0.5);
  return value;
}

// Qubit 0 is the most significant bit of the basis index.
std::size_t qubit_mask(int num_qubits, int qubit) {
  return std::size_t{1} << (num_qubits - 1 - qubit);
}

void check_qubit_index(const PureState& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) + " out of range for " +
                            std::to_string(state.num_qubits()) + "-qubit state");
  }
}

void check_randomness(double randomness) {
  if (!(randomness >= 0.0 && randomness < 1.0)) {
    throw std::invalid_argument("randomness must lie in [0, 1)");
  }
}

std::array<Amplitude, 4> bell_amplitudes(BellIndex index) {
  const double s = inv_sqrt2();
  switch (index.ordinal()) {
    case 0:  return {Amplitude{0}, Amplitude{s}, Amplitude{s}, Amplitude{0}};    // (|01>+|10>)/sqrt2
    case 1:  return {Amplitude{0}, Amplitude{s}, Amplitude{-s}, Amplitude{0}};   // (|01>-|10>)/sqrt2
    case 2:  return {Amplitude{s}, Amplitude{0}, Amplitude{0}, Amplitude{s}};    // (|00>+|11>)/sqrt2
    default: return {Amplitude{s}, Amplitude{0}, Amplitude{0}, Amplitude{-s}};   // (|00>-|11>)/sqrt2
  }
}

struct Projection {
  double probability = 0.0;
  std::vector<Amplitude> amplitudes;  // unnormalized
};

// Projects onto |e><e| acting on `qubit`, identity elsewhere.
Projection project_qubit(const std::vector<Amplitude>& amps, int num_qubits, int qubit,
                         const std::array<Amplitude, 2>& e) {
  const std::size_t mask = qubit_mask(num_qubits, qubit);
  Projection proj;
  proj.amplitudes.assign(amps.size(), Amplitude{0});
  for (std::size_t idx = 0; idx < amps.size(); ++idx) {
    if (idx & mask) continue;
    const Amplitude overlap = std::conj(e[0]) * amps[idx] + std::conj(e[1]) * amps[idx | mask];
    proj.amplitudes[idx] = overlap * e[0];
    proj.amplitudes[idx | mask] = overlap * e[1];
    proj.probability += std::norm(overlap);
  }
  return proj;
}

// Projects the (qubit_a, qubit_b) pair onto the given Bell state.
Projection project_bell(const std::vector<Amplitude>& amps, int num_qubits, int qubit_a,
                        int qubit_b, BellIndex index) {
  const std::array<Amplitude, 4> bell = bell_amplitudes(index);
  const std::size_t mask_a = qubit_mask(num_qubits, qubit_a);
  const std::size_t mask_b = qubit_mask(num_qubits, qubit_b);
  Projection proj;
  proj.amplitudes.assign(amps.size(), Amplitude{0});
  for (std::size_t rest = 0; rest < amps.size(); ++rest) {
    if ((rest & mask_a) || (rest & mask_b)) continue;
    Amplitude overlap{0};
    for (int bit_a = 0; bit_a < 2; ++bit_a) {
      for (int bit_b = 0; bit_b < 2; ++bit_b) {
        const std::size_t idx = rest | (bit_a ? mask_a : 0) | (bit_b ? mask_b : 0);
        overlap += std::conj(bell[bit_a * 2 + bit_b]) * amps[idx];
      }
    }
    for (int bit_a = 0; bit_a < 2; ++bit_a) {
      for (int bit_b = 0; bit_b < 2; ++bit_b) {
        const std::size_t idx = rest | (bit_a ? mask_a : 0) | (bit_b ? mask_b : 0);
        proj.amplitudes[idx] = overlap * bell[bit_a * 2 + bit_b];
      }
    }
    proj.probability += std::norm(overlap);
  }
  return proj;
}

PureState normalized_state(int num_qubits, Projection proj) {
  const double scale = 1.0 / std::sqrt(proj.probability);
  for (Amplitude& a : proj.amplitudes) a *= scale;
  return PureState(num_qubits, std::move(proj.amplitudes));
}

}  // namespace

BellIndex::BellIndex(int k, int l)
    : k_(checked_bit(k, "BellIndex.k")), l_(checked_bit(l, "BellIndex.l")) {}

BellIndex BellIndex::from_ordinal(int ordinal) {
  if (ordinal < 0 || ordinal > 3) {
    throw std::invalid_argument("Bell index ordinal must lie in [0, 3]");
  }
  return {ordinal / 2, ordinal % 2};
}

BitPair::BitPair(int first, int second)
    : first_(checked_bit(first, "BitPair.first")), second_(checked_bit(second, "BitPair.second")) {}

std::array<Amplitude, 2> basis_eigenvector(MeasBasis basis, int outcome) {
  checked_bit(outcome, "outcome");
  if (basis == MeasBasis::Z) {
    return outcome == 0 ? std::array<Amplitude, 2>{Amplitude{1}, Amplitude{0}}
                        : std::array<Amplitude, 2>{Amplitude{0}, Amplitude{1}};
  }
  const double s = inv_sqrt2();
  return outcome == 0 ? std::array<Amplitude, 2>{Amplitude{s}, Amplitude{s}}
                      : std::array<Amplitude, 2>{Amplitude{s}, Amplitude{-s}};
}

PureState::PureState(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amps_(std::move(amplitudes)) {
  if (num_qubits_ < 1 || num_qubits_ > kMaxQubits) {
    throw std::invalid_argument("num_qubits must lie in [1, 4]");
  }
  if (amps_.size() != (std::size_t{1} << num_qubits_)) {
    throw std::invalid_argument("amplitude count must equal 2^num_qubits");
  }
  double norm_sq = 0.0;
  for (const Amplitude& a : amps_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("amplitudes must be finite");
    }
    norm_sq += std::norm(a);
  }
  if (std::abs(norm_sq - 1.0) > kTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
}

PureState PureState::basis_state(int num_qubits, std::size_t basis_index) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("num_qubits must lie in [1, 4]");
  }
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (basis_index >= dim) {
    throw std::invalid_argument("basis index out of range");
  }
  std::vector<Amplitude> amps(dim, Amplitude{0});
  amps[basis_index] = Amplitude{1};
  return PureState(num_qubits, std::move(amps));
}

Amplitude PureState::amplitude(std::size_t basis_index) const {
  if (basis_index >= amps_.size()) {
    throw std::out_of_range("basis index out of range");
  }
  return amps_[basis_index];
}

PureState bell_state(BellIndex index) {
  const std::array<Amplitude, 4> amps = bell_amplitudes(index);
  return PureState(2, {amps.begin(), amps.end()});
}

EncodingOp encoding_op(BellIndex index) {
  const Amplitude one{1}, zero{0};
  switch (index.ordinal()) {
    case 0:  return {index, {one, zero, zero, one}};
    case 1:  return {index, {one, zero, zero, -one}};
    case 2:  return {index, {zero, one, one, zero}};
    default: return {index, {zero, -one, one, zero}};
  }
}

EncodingOp encoding_op(BitPair bits) { return encoding_op(BellIndex(bits.first(), bits.second())); }

PureState apply_single_qubit(const PureState& state, int qubit, const EncodingOp& op) {
  check_qubit_index(state, qubit);
  const std::vector<Amplitude>& in = state.amplitudes();
  const std::size_t mask = qubit_mask(state.num_qubits(), qubit);
  std::vector<Amplitude> out(in.size());
  for (std::size_t idx = 0; idx < in.size(); ++idx) {
    if (idx & mask) continue;
    const Amplitude a0 = in[idx];
    const Amplitude a1 = in[idx | mask];
    out[idx] = op.matrix[0] * a0 + op.matrix[1] * a1;
    out[idx | mask] = op.matrix[2] * a0 + op.matrix[3] * a1;
  }
  return PureState(state.num_qubits(), std::move(out));
}

std::pair<double, double> outcome_distribution(const PureState& state, int qubit, MeasBasis basis) {
  check_qubit_index(state, qubit);
  const double p0 =
      project_qubit(state.amplitudes(), state.num_qubits(), qubit, basis_eigenvector(basis, 0))
          .probability;
  const double p1 =
      project_qubit(state.amplitudes(), state.num_qubits(), qubit, basis_eigenvector(basis, 1))
          .probability;
  return {p0, p1};
}

std::pair<Outcome, PureState> measure_qubit(const PureState& state, int qubit, MeasBasis basis,
                                            double randomness) {
  check_qubit_index(state, qubit);
  check_randomness(randomness);
  Projection p0 =
      project_qubit(state.amplitudes(), state.num_qubits(), qubit, basis_eigenvector(basis, 0));
  if (randomness < p0.probability) {
    return {Outcome{0, basis}, normalized_state(state.num_qubits(), std::move(p0))};
  }
  Projection p1 =
      project_qubit(state.amplitudes(), state.num_qubits(), qubit, basis_eigenvector(basis, 1));
  return {Outcome{1, basis}, normalized_state(state.num_qubits(), std::move(p1))};
}

std::pair<BellIndex, PureState> bell_measure(const PureState& state, int qubit_a, int qubit_b,
                                             double randomness) {
  check_qubit_index(state, qubit_a);
  check_qubit_index(state, qubit_b);
  if (qubit_a == qubit_b) {
    throw std::invalid_argument("bell_measure requires two distinct qubits");
  }
  check_randomness(randomness);
  std::array<Projection, 4> projections;
  double cumulative = 0.0;
  int selected = -1;
  for (int ordinal = 0; ordinal < 4; ++ordinal) {
    projections[ordinal] = project_bell(state.amplitudes(), state.num_qubits(), qubit_a, qubit_b,
                                        BellIndex::from_ordinal(ordinal));
    cumulative += projections[ordinal].probability;
    if (selected < 0 && randomness < cumulative) selected = ordinal;
  }
  if (selected < 0) {
    // Floating-point slack at randomness ~ 1: fall back to the last outcome
    // with nonzero probability.
    for (int ordinal = 3; ordinal >= 0; --ordinal) {
      if (projections[ordinal].probability > kBranchCutoff) {
        selected = ordinal;
        break;
      }
    }
  }
  return {BellIndex::from_ordinal(selected),
          normalized_state(state.num_qubits(), std::move(projections[selected]))};
}

std::vector<MeasurementBranch> measurement_branches(const PureState& state, int qubit,
                                                    MeasBasis basis) {
  check_qubit_index(state, qubit);
  std::vector<MeasurementBranch> branches;
  for (int outcome = 0; outcome < 2; ++outcome) {
    Projection proj = project_qubit(state.amplitudes(), state.num_qubits(), qubit,
                                    basis_eigenvector(basis, outcome));
    if (proj.probability < kBranchCutoff) continue;
    const double probability = proj.probability;
    branches.push_back(MeasurementBranch{Outcome{outcome, basis}, probability,
                                         normalized_state(state.num_qubits(), std::move(proj))});
  }
  return branches;
}

std::vector<BellBranch> bell_branches(const PureState& state, int qubit_a, int qubit_b) {
  check_qubit_index(state, qubit_a);
  check_qubit_index(state, qubit_b);
  if (qubit_a == qubit_b) {
    throw std::invalid_argument("bell_branches requires two distinct qubits");
  }
  std::vector<BellBranch> branches;
  for (int ordinal = 0; ordinal < 4; ++ordinal) {
    const BellIndex index = BellIndex::from_ordinal(ordinal);
    Projection proj =
        project_bell(state.amplitudes(), state.num_qubits(), qubit_a, qubit_b, index);
    if (proj.probability < kBranchCutoff) continue;
    const double probability = proj.probability;
    branches.push_back(
        BellBranch{index, probability, normalized_state(state.num_qubits(), std::move(proj))});
  }
  return branches;
}

Amplitude inner_product(const PureState& a, const PureState& b) {
  if (a.num_qubits() != b.num_qubits()) {
    throw std::invalid_argument("inner product requires equal qubit counts");
  }
  Amplitude sum{0};
  for (std::size_t idx = 0; idx < a.dim(); ++idx) {
    sum += std::conj(a.amplitudes()[idx]) * b.amplitudes()[idx];
  }
  return sum;
}

double fidelity(const PureState& a, const PureState& b) { return std::norm(inner_product(a, b)); }

PureState tensor(const PureState& a, const PureState& b) {
  const int total = a.num_qubits() + b.num_qubits();
  if (total > kMaxQubits) {
    throw std::invalid_argument("tensor product exceeds the 4-qubit limit");
  }
  std::vector<Amplitude> out(a.dim() * b.dim());
  for (std::size_t ia = 0; ia < a.dim(); ++ia) {
    for (std::size_t ib = 0; ib < b.dim(); ++ib) {
      out[ia * b.dim() + ib] = a.amplitudes()[ia] * b.amplitudes()[ib];
    }
  }
  return PureState(total, std::move(out));
}

}  // namespace qdialogue
