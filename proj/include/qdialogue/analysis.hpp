#pragma once

#include <optional>
#include <vector>

#include "qdialogue/protocol.hpp"

namespace qdialogue {

/// Alice's side of an exact-analysis scenario: her bit pair for MM/CM runs,
/// or her basis choice for RCM runs (empty basis = averaged uniformly over
/// both choices, mirroring the protocol's sampling).
struct ScenarioInput {
  std::optional<BitPair> alice_bits;
  std::optional<MeasBasis> basis;

  static ScenarioInput bits(BitPair alice_bits) { return {alice_bits, std::nullopt}; }
  static ScenarioInput rcm_basis(MeasBasis basis) { return {std::nullopt, basis}; }
  static ScenarioInput rcm_averaged() { return {std::nullopt, std::nullopt}; }
};

/// Exact pass probability of one run scenario, computed by enumerating every
/// measurement branch of the full choreography (no sampling).
struct ExactResult {
  RunMode mode = RunMode::MessageMode;
  AttackStrategy attack{};
  BitPair bob_bits{};
  std::optional<BitPair> alice_bits;
  std::optional<MeasBasis> basis;
  double pass_probability = 0.0;
  double probability_sum = 0.0;  // of all enumerated branches; 1 within 1e-12
  int branch_count = 0;
};

/// For MM the "pass" event is both legitimate parties decoding each other's
/// bits correctly; for CM it is the original check holding; for RCM it is the
/// revised correlation check holding.
ExactResult exact_pass_probability(RunMode mode, const AttackStrategy& attack, BitPair bob_bits,
                                   const ScenarioInput& input);

/// 1 - (1 - p)^c: probability that at least one of `control_runs` independent
/// control runs fails.
double session_detection_probability(double per_run_detection, int control_runs);

struct MonteCarloDetail {
  SessionStats stats;
  std::vector<SessionResult> sessions;
};

/// Runs independent sessions whose seeds are derived from (config.seed,
/// session index) and aggregates their statistics. Results are identical for
/// any `jobs` value.
SessionStats monte_carlo(const SessionConfig& config, const AttackStrategy& attack, int sessions,
                         int jobs = 1);
MonteCarloDetail monte_carlo_detailed(const SessionConfig& config, const AttackStrategy& attack,
                                      int sessions, int jobs = 1);

}  // namespace qdialogue
