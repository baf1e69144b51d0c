#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace qdialogue {

/// Aggregated counters and rates for one session or a batch of sessions.
///
/// The raw tallies behind the rates are kept alongside them so that batches
/// aggregate exactly (rates are always recomputed from summed counts, never
/// averaged). Eve's accuracies are absent when no attack was configured.
struct SessionStats {
  std::uint64_t runs_total = 0;
  std::uint64_t runs_mm = 0;
  std::uint64_t runs_cm = 0;
  std::uint64_t runs_rcm = 0;
  std::uint64_t detections = 0;
  double detection_rate_per_control_run = 0.0;
  std::optional<double> eve_alice_accuracy;
  std::optional<double> eve_bob_accuracy;
  double legit_decode_accuracy = 1.0;
  std::uint64_t parity_leak_bits = 0;
  std::uint64_t seed = 0;

  // tallies behind the rates
  std::uint64_t mm_decode_correct = 0;
  std::uint64_t mm_eve_alice_correct = 0;
  std::uint64_t mm_eve_bob_correct = 0;

  /// Recomputes every rate from the tallies. Rates over an empty denominator
  /// are reported as their vacuous value (0 detections, perfect accuracy).
  void finalize(bool attacked);

  friend bool operator==(const SessionStats&, const SessionStats&) = default;
};

/// Sums per-session tallies and finalizes the combined rates.
SessionStats aggregate_stats(const std::vector<SessionStats>& parts, std::uint64_t base_seed,
                             bool attacked);

}  // namespace qdialogue
