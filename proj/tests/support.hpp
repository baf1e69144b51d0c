#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "qdialogue/quantum.hpp"
#include "qdialogue/random.hpp"

namespace qdialogue::test {

inline bool close(double a, double b, double tol = kTolerance) { return std::abs(a - b) <= tol; }

inline bool close(const Amplitude& a, const Amplitude& b, double tol = kTolerance) {
  return std::abs(a - b) <= tol;
}

/// Componentwise state equality (no phase freedom).
inline bool amplitudes_close(const PureState& a, const PureState& b, double tol = kTolerance) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (!close(a.amplitudes()[i], b.amplitudes()[i], tol)) return false;
  }
  return true;
}

/// Physical state equality: fidelity 1 within tolerance.
inline bool same_state(const PureState& a, const PureState& b, double tol = kTolerance) {
  return std::abs(fidelity(a, b) - 1.0) <= tol;
}

// --- independent matrix oracle -------------------------------------------
//
// Dense matrices applied to raw amplitude vectors, written without any of the
// library's gate plumbing so composed-encoding expectations can be computed
// along a second route.

using Mat2 = std::array<Amplitude, 4>;   // row-major 2x2
using Mat4 = std::array<Amplitude, 16>;  // row-major 4x4

inline Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
  Mat2 out{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 2; ++k) out[r * 2 + c] += a[r * 2 + k] * b[k * 2 + c];
  return out;
}

/// kron(identity, m): the operator acting on the second (travel) qubit of a
/// 2-qubit register.
inline Mat4 kron_id_mat2(const Mat2& m) {
  Mat4 out{};
  for (int block = 0; block < 2; ++block)
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) out[(block * 2 + r) * 4 + (block * 2 + c)] = m[r * 2 + c];
  return out;
}

inline std::vector<Amplitude> mat4_apply(const Mat4& m, const std::vector<Amplitude>& v) {
  std::vector<Amplitude> out(4, Amplitude{0});
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r] += m[r * 4 + c] * v[c];
  return out;
}

/// Uniformly random normalized state, for property tests.
inline PureState random_state(RandomStream& rng, int num_qubits) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<Amplitude> amps(dim);
  double norm_sq = 0.0;
  do {
    norm_sq = 0.0;
    for (Amplitude& a : amps) {
      a = Amplitude{rng.next_unit() * 2.0 - 1.0, rng.next_unit() * 2.0 - 1.0};
      norm_sq += std::norm(a);
    }
  } while (norm_sq < 1e-6);
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (Amplitude& a : amps) a *= scale;
  return PureState(num_qubits, std::move(amps));
}

}  // namespace qdialogue::test
