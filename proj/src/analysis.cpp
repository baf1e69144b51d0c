#include "qdialogue/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <utility>

namespace qdialogue {

namespace {

struct Leaf {
  double probability;
  bool pass;
};

void check_scenario(RunMode mode, const ScenarioInput& input) {
  const bool is_rcm = mode == RunMode::ControlModeRevised;
  if (is_rcm && input.alice_bits) {
    throw std::invalid_argument("RCM scenarios take a basis, not Alice bits");
  }
  if (!is_rcm && !input.alice_bits) {
    throw std::invalid_argument("MM and CM scenarios require Alice's bits");
  }
  if (!is_rcm && input.basis) {
    throw std::invalid_argument("a measuring basis only applies to RCM scenarios");
  }
}

// Initial state as received by Alice, with her qubit position.
struct Setup {
  PureState state;
  int alice_qubit;
  std::optional<EveState> eve;
};

Setup prepare(BitPair bob_bits, const AttackStrategy& attack) {
  PureState state = bob_prepare_and_encode(bob_bits);
  if (!attack.intercepts()) return {std::move(state), 1, std::nullopt};
  auto [intercepted, eve] = eve_intercept_forward(state, 1, attack);
  return {std::move(intercepted), eve.forwarded_qubit, eve};
}

std::vector<Leaf> enumerate_rcm(BitPair bob_bits, const AttackStrategy& attack,
                                const std::optional<MeasBasis>& fixed_basis) {
  Setup setup = prepare(bob_bits, attack);
  std::vector<std::pair<double, MeasBasis>> basis_choices;
  if (fixed_basis) {
    basis_choices.emplace_back(1.0, *fixed_basis);
  } else {
    basis_choices.emplace_back(0.5, MeasBasis::Z);
    basis_choices.emplace_back(0.5, MeasBasis::X);
  }
  std::vector<Leaf> leaves;
  for (const auto& [basis_weight, basis] : basis_choices) {
    for (const MeasurementBranch& alice : measurement_branches(setup.state, setup.alice_qubit, basis)) {
      for (const MeasurementBranch& bob : measurement_branches(alice.post_state, 0, basis)) {
        const double probability = basis_weight * alice.probability * bob.probability;
        const bool pass = revised_control_verdict(bob_bits, basis, alice.outcome.result,
                                                  bob.outcome.result) == Verdict::Pass;
        leaves.push_back({probability, pass});
      }
    }
  }
  return leaves;
}

std::vector<Leaf> enumerate_mm_cm(RunMode mode, BitPair bob_bits, const AttackStrategy& attack,
                                  BitPair alice_bits) {
  Setup setup = prepare(bob_bits, attack);
  PureState encoded = alice_encode(setup.state, setup.alice_qubit, alice_bits);

  // (weight, state forwarded to Bob, Eve's deduction on this branch)
  std::vector<std::tuple<double, PureState, std::optional<BitPair>>> returns;
  if (setup.eve) {
    const EveState& eve = *setup.eve;
    for (const BellBranch& branch :
         bell_branches(encoded, eve.forwarded_qubit, eve.retained_qubit)) {
      const BitPair deduced(branch.outcome.k() ^ eve.fake_state.k(),
                            branch.outcome.l() ^ eve.fake_state.l());
      PureState replayed =
          apply_single_qubit(branch.post_state, eve.captured_travel_qubit, encoding_op(deduced));
      returns.emplace_back(branch.probability, std::move(replayed), deduced);
    }
  } else {
    returns.emplace_back(1.0, std::move(encoded), std::nullopt);
  }

  std::vector<Leaf> leaves;
  for (const auto& [weight, state, deduced] : returns) {
    for (const BellBranch& bob : bell_branches(state, 0, 1)) {
      const double probability = weight * bob.probability;
      bool pass = false;
      if (mode == RunMode::ControlModeOriginal) {
        pass = check_control_original(alice_bits, bob_bits, bob.outcome) == Verdict::Pass;
      } else {
        pass = decode_message_mode(bob.outcome, bob_bits) == alice_bits &&
               decode_message_mode(bob.outcome, alice_bits) == bob_bits;
      }
      leaves.push_back({probability, pass});
    }
  }
  return leaves;
}

}  // namespace

void SessionStats::finalize(bool attacked) {
  const std::uint64_t control_runs = runs_cm + runs_rcm;
  detection_rate_per_control_run =
      control_runs == 0 ? 0.0 : static_cast<double>(detections) / static_cast<double>(control_runs);
  legit_decode_accuracy =
      runs_mm == 0 ? 1.0 : static_cast<double>(mm_decode_correct) / static_cast<double>(runs_mm);
  if (attacked) {
    eve_alice_accuracy = runs_mm == 0 ? 1.0
                                      : static_cast<double>(mm_eve_alice_correct) /
                                            static_cast<double>(runs_mm);
    eve_bob_accuracy = runs_mm == 0
                           ? 1.0
                           : static_cast<double>(mm_eve_bob_correct) / static_cast<double>(runs_mm);
  } else {
    eve_alice_accuracy.reset();
    eve_bob_accuracy.reset();
  }
}

SessionStats aggregate_stats(const std::vector<SessionStats>& parts, std::uint64_t base_seed,
                             bool attacked) {
  SessionStats total;
  total.seed = base_seed;
  for (const SessionStats& part : parts) {
    total.runs_total += part.runs_total;
    total.runs_mm += part.runs_mm;
    total.runs_cm += part.runs_cm;
    total.runs_rcm += part.runs_rcm;
    total.detections += part.detections;
    total.parity_leak_bits += part.parity_leak_bits;
    total.mm_decode_correct += part.mm_decode_correct;
    total.mm_eve_alice_correct += part.mm_eve_alice_correct;
    total.mm_eve_bob_correct += part.mm_eve_bob_correct;
  }
  total.finalize(attacked);
  return total;
}

ExactResult exact_pass_probability(RunMode mode, const AttackStrategy& attack, BitPair bob_bits,
                                   const ScenarioInput& input) {
  check_scenario(mode, input);
  const std::vector<Leaf> leaves =
      mode == RunMode::ControlModeRevised
          ? enumerate_rcm(bob_bits, attack, input.basis)
          : enumerate_mm_cm(mode, bob_bits, attack, *input.alice_bits);

  ExactResult result;
  result.mode = mode;
  result.attack = attack;
  result.bob_bits = bob_bits;
  result.alice_bits = input.alice_bits;
  result.basis = input.basis;
  result.branch_count = static_cast<int>(leaves.size());
  for (const Leaf& leaf : leaves) {
    result.probability_sum += leaf.probability;
    if (leaf.pass) result.pass_probability += leaf.probability;
  }
  if (std::abs(result.probability_sum - 1.0) > kTolerance) {
    throw std::logic_error("enumerated branch probabilities do not sum to 1");
  }
  return result;
}

double session_detection_probability(double per_run_detection, int control_runs) {
  if (!(per_run_detection >= 0.0 && per_run_detection <= 1.0)) {
    throw std::invalid_argument("per-run detection probability must lie in [0, 1]");
  }
  if (control_runs < 0) {
    throw std::invalid_argument("control run count must be non-negative");
  }
  return 1.0 - std::pow(1.0 - per_run_detection, control_runs);
}

MonteCarloDetail monte_carlo_detailed(const SessionConfig& config, const AttackStrategy& attack,
                                      int sessions, int jobs) {
  if (sessions < 1) throw std::invalid_argument("session count must be at least 1");
  if (jobs < 1) throw std::invalid_argument("job count must be at least 1");
  config.validate();

  MonteCarloDetail detail;
  detail.sessions.resize(sessions);

  auto run_one = [&](int index) {
    SessionConfig session_config = config;
    session_config.seed = RandomStream::derive_seed(config.seed, static_cast<std::uint64_t>(index));
    detail.sessions[index] = run_session(session_config, attack);
  };

  const int workers = std::min(jobs, sessions);
  if (workers <= 1) {
    for (int index = 0; index < sessions; ++index) run_one(index);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int index = next.fetch_add(1); index < sessions; index = next.fetch_add(1)) {
          run_one(index);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  std::vector<SessionStats> parts;
  parts.reserve(sessions);
  for (const SessionResult& session : detail.sessions) parts.push_back(session.stats);
  detail.stats = aggregate_stats(parts, config.seed, attack.intercepts());
  return detail;
}

SessionStats monte_carlo(const SessionConfig& config, const AttackStrategy& attack, int sessions,
                         int jobs) {
  return monte_carlo_detailed(config, attack, sessions, jobs).stats;
}

}  // namespace qdialogue
