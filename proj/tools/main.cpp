#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdialogue/analysis.hpp"
#include "qdialogue/protocol.hpp"
#include "qdialogue/random.hpp"
#include "qdialogue/report.hpp"

namespace {

using namespace qdialogue;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulateOptions {
  std::string attack = "none";
  std::string fake_state = "00";
  bool fake_state_given = false;
  std::string control_mode = "revised";
  double control_fraction = 0.5;
  std::uint64_t runs = 100;
  int sessions = 1;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string output;
  int jobs = 1;
  bool no_timestamp = false;
  bool abort_on_detect = false;
  std::string bob_message;
  std::string alice_message;
};

struct ExactOptions {
  std::string mode;
  std::string attack = "none";
  std::string fake_state;
  std::string bob_bits;
  std::string alice_bits;
  std::string basis = "averaged";
  std::string format = "text";
  std::string output;
  bool no_timestamp = false;
};

struct DemoOptions {
  std::string mode = "mm";
  std::string attack = "none";
  std::string fake_state = "00";
  bool fake_state_given = false;
  std::string bob_bits = "01";
  std::string alice_bits = "10";
  std::uint64_t seed = 1;
};

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(output_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + output_path);
  file << text;
}

AttackStrategy make_attack(const std::string& attack, const std::string& fake_state,
                           bool fake_state_given) {
  if (attack_kind_from_string(attack) == AttackStrategy::Kind::None) {
    if (fake_state_given) {
      throw UsageError("--fake-state requires --attack intercept-resend");
    }
    return AttackStrategy::none();
  }
  return AttackStrategy::intercept_resend(bell_index_from_string(fake_state));
}

std::vector<BitPair> random_message(RandomStream& rng, std::size_t pairs) {
  std::vector<BitPair> message;
  message.reserve(pairs);
  for (std::size_t i = 0; i < pairs; ++i) {
    message.emplace_back(rng.next_bit(), rng.next_bit());
  }
  return message;
}

int run_simulate(const SimulateOptions& options) {
  const AttackStrategy attack =
      make_attack(options.attack, options.fake_state, options.fake_state_given);

  SessionConfig config;
  config.control_probability = options.control_fraction;
  config.control_mode_kind = control_mode_kind_from_string(options.control_mode);
  config.seed = options.seed;
  config.abort_on_detect = options.abort_on_detect;

  if (options.bob_message.empty() != options.alice_message.empty()) {
    throw UsageError("--bob-message and --alice-message must be given together");
  }
  if (!options.bob_message.empty()) {
    config.bob_message = parse_bit_pairs(options.bob_message);
    config.alice_message = parse_bit_pairs(options.alice_message);
  } else {
    // Seeded random messages; with control fraction 1 nothing is ever
    // delivered, so a single placeholder pair suffices and --runs caps the
    // session instead of sizing the message.
    RandomStream message_rng(RandomStream::derive_seed(options.seed, 0x6d73));
    const std::size_t pairs = options.control_fraction == 1.0 ? 1 : options.runs;
    config.bob_message = random_message(message_rng, pairs);
    config.alice_message = random_message(message_rng, pairs);
  }
  if (config.control_probability == 1.0) config.max_runs = options.runs;
  config.validate();

  const MonteCarloDetail detail =
      monte_carlo_detailed(config, attack, options.sessions, options.jobs);

  Report report;
  report.config = config_to_json(config, attack);
  report.config["sessions"] = options.sessions;
  report.stats = detail.stats;
  if (!options.no_timestamp) report.timestamp = iso8601_utc_now();

  if (options.format == "json") {
    emit(render_report_json(report), options.output);
  } else if (options.format == "csv") {
    emit(render_runs_csv(detail.sessions), options.output);
  } else {
    emit(render_report_text(report), options.output);
  }
  return 0;
}

int run_exact(const ExactOptions& options) {
  const RunMode mode = run_mode_from_string(options.mode);
  const AttackStrategy::Kind attack_kind = attack_kind_from_string(options.attack);
  const bool is_rcm = mode == RunMode::ControlModeRevised;

  if (attack_kind == AttackStrategy::Kind::None && !options.fake_state.empty()) {
    throw UsageError("--fake-state requires --attack intercept-resend");
  }
  if (!is_rcm && options.basis != "averaged") {
    throw UsageError("--basis only applies to --mode rcm");
  }
  if (is_rcm && !options.alice_bits.empty()) {
    throw UsageError("--alice-bits does not apply to --mode rcm (Alice measures instead)");
  }

  std::vector<AttackStrategy> attacks;
  if (attack_kind == AttackStrategy::Kind::None) {
    attacks.push_back(AttackStrategy::none());
  } else if (!options.fake_state.empty()) {
    attacks.push_back(
        AttackStrategy::intercept_resend(bell_index_from_string(options.fake_state)));
  } else {
    for (int ordinal = 0; ordinal < 4; ++ordinal) {
      attacks.push_back(AttackStrategy::intercept_resend(BellIndex::from_ordinal(ordinal)));
    }
  }

  std::vector<BitPair> bob_choices;
  if (!options.bob_bits.empty()) {
    bob_choices.push_back(bit_pair_from_string(options.bob_bits));
  } else {
    bob_choices = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  }

  std::vector<ScenarioInput> inputs;
  if (is_rcm) {
    if (options.basis == "averaged") {
      inputs.push_back(ScenarioInput::rcm_averaged());
    } else {
      inputs.push_back(ScenarioInput::rcm_basis(basis_from_string(options.basis)));
    }
  } else if (!options.alice_bits.empty()) {
    inputs.push_back(ScenarioInput::bits(bit_pair_from_string(options.alice_bits)));
  } else {
    for (BitPair alice : {BitPair{0, 0}, BitPair{0, 1}, BitPair{1, 0}, BitPair{1, 1}}) {
      inputs.push_back(ScenarioInput::bits(alice));
    }
  }

  Report report;
  report.config["command"] = "exact";
  report.config["mode"] = options.mode;
  report.config["attack"] = options.attack;
  if (!options.fake_state.empty()) report.config["fake_state"] = options.fake_state;
  if (is_rcm) report.config["basis"] = options.basis;
  for (const AttackStrategy& attack : attacks) {
    for (BitPair bob : bob_choices) {
      for (const ScenarioInput& input : inputs) {
        report.exact.push_back(exact_pass_probability(mode, attack, bob, input));
      }
    }
  }
  if (!options.no_timestamp) report.timestamp = iso8601_utc_now();

  if (options.format == "json") {
    emit(render_report_json(report), options.output);
  } else {
    emit(render_report_text(report), options.output);
  }
  return 0;
}

const char* announcement_note(const Announcement& a) {
  switch (a.kind) {
    case Announcement::Kind::QubitSent:
      return "Bob keeps the home qubit and sends the travel qubit";
    case Announcement::Kind::ReceiptConfirmed:
      return "Alice confirms a qubit arrived (she cannot tell a fake from the original)";
    case Announcement::Kind::ModeAnnounced:
      return "Alice announces how this run will be used";
    case Announcement::Kind::BellMeasured:
      return "Bob Bell-measures his pair (local, result still private)";
    case Announcement::Kind::BellOutcomeAnnounced:
      return "Bob publishes the Bell outcome so Alice can decode";
    case Announcement::Kind::BitsRevealed:
      return "Alice reveals her encoding for the original check";
    case Announcement::Kind::TravelMeasured:
      return "Alice measures the travel qubit instead of encoding (local)";
    case Announcement::Kind::BasisAnnounced:
      return "Alice tells Bob which basis she used";
    case Announcement::Kind::OutcomeAnnounced:
      return "Alice tells Bob her outcome";
    case Announcement::Kind::HomeMeasured:
      return "Bob measures the home qubit in the same basis (local)";
    case Announcement::Kind::VerdictAnnounced:
      return "Bob compares against the expected Bell correlation";
  }
  return "";
}

int run_demo(const DemoOptions& options) {
  const AttackStrategy attack =
      make_attack(options.attack, options.fake_state, options.fake_state_given);
  const RunMode mode = run_mode_from_string(options.mode);

  SessionConfig config;
  config.bob_message = {bit_pair_from_string(options.bob_bits)};
  config.alice_message = {bit_pair_from_string(options.alice_bits)};
  config.seed = options.seed;
  if (mode == RunMode::MessageMode) {
    config.control_probability = 0.0;
  } else {
    config.control_probability = 1.0;
    config.max_runs = 1;
    config.control_mode_kind = mode == RunMode::ControlModeOriginal ? ControlModeKind::Original
                                                                    : ControlModeKind::Revised;
  }

  const SessionResult result = run_session(config, attack);
  const RunRecord& run = result.runs.at(0);

  std::ostringstream out;
  out << "one " << to_string(mode) << " run, attack: " << to_string(attack.kind);
  if (attack.intercepts()) out << " (fake state " << to_string(attack.fake_state) << ")";
  out << "\n";
  out << "bob's bits: " << to_string(run.bob_bits);
  if (run.alice_bits) out << "   alice's bits: " << to_string(*run.alice_bits);
  out << "\n\n";
  if (attack.intercepts()) {
    out << "eve intercepts the travel qubit and forwards half of her own EPR pair\n\n";
  }
  for (const Announcement& a : run.announcements) {
    out << "  " << format_announcement(a) << "\n";
    out << "      " << announcement_note(a) << "\n";
  }
  out << "\n";

  switch (run.mode) {
    case RunMode::MessageMode: {
      const BitPair bob_decoded = decode_message_mode(*run.bell_outcome, run.bob_bits);
      const BitPair alice_decoded = decode_message_mode(*run.bell_outcome, *run.alice_bits);
      out << "bob decodes alice's bits as " << to_string(bob_decoded)
          << ", alice decodes bob's as " << to_string(alice_decoded) << "\n";
      if (attack.intercepts()) {
        // Eve's return-leg Bell measurement pins Alice's bits with certainty.
        const BitPair eve_alice = *run.alice_bits;
        const BitPair eve_bob = eve_decode_bob(*run.bell_outcome, eve_alice);
        out << "eve deduced alice's bits " << to_string(eve_alice)
            << " on the return leg and reads bob's bits " << to_string(eve_bob)
            << " from the public outcome\n";
      }
      break;
    }
    case RunMode::ControlModeOriginal:
      out << "check: alice's revealed bits " << to_string(*run.alice_bits) << " against outcome "
          << to_string(*run.bell_outcome) << " XOR bob's bits " << to_string(run.bob_bits)
          << " -> " << to_string(run.verdict) << "\n";
      break;
    case RunMode::ControlModeRevised:
      out << "expected outcomes for bits " << to_string(run.bob_bits) << " in basis "
          << to_string(*run.alice_basis) << ": "
          << (expected_correlation(run.bob_bits, *run.alice_basis) ? "equal" : "opposite")
          << "; got " << run.alice_outcome->result << " and " << run.bob_outcome->result << " -> "
          << to_string(run.verdict) << "\n";
      break;
  }
  std::cout << out.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact simulator of the EPR-pair quantum dialogue protocol, its "
               "intercept-and-resend attack, and the revised control mode"};
  app.require_subcommand(1);

  SimulateOptions simulate;
  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Run seeded Monte Carlo sessions and report statistics");
  simulate_cmd->add_option("--attack", simulate.attack)
      ->check(CLI::IsMember({"none", "intercept-resend"}));
  CLI::Option* simulate_fake = simulate_cmd->add_option("--fake-state", simulate.fake_state)
                                   ->check(CLI::IsMember({"00", "01", "10", "11"}));
  simulate_cmd->add_option("--control-mode", simulate.control_mode)
      ->check(CLI::IsMember({"original", "revised"}));
  simulate_cmd->add_option("--control-fraction", simulate.control_fraction)
      ->check(CLI::Range(0.0, 1.0));
  simulate_cmd->add_option("--runs", simulate.runs,
                           "Message pairs to exchange (run cap when --control-fraction is 1)");
  simulate_cmd->add_option("--sessions", simulate.sessions)->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", simulate.seed);
  simulate_cmd->add_option("--format", simulate.format)
      ->check(CLI::IsMember({"text", "json", "csv"}));
  simulate_cmd->add_option("--output", simulate.output);
  simulate_cmd->add_option("--jobs", simulate.jobs)->check(CLI::PositiveNumber);
  simulate_cmd->add_flag("--no-timestamp", simulate.no_timestamp);
  simulate_cmd->add_flag("--abort-on-detect", simulate.abort_on_detect);
  simulate_cmd->add_option("--bob-message", simulate.bob_message,
                           "Explicit bit string, e.g. 0110 for (0,1),(1,0)");
  simulate_cmd->add_option("--alice-message", simulate.alice_message);

  ExactOptions exact;
  CLI::App* exact_cmd = app.add_subcommand(
      "exact", "Enumerate every measurement branch and report exact pass probabilities");
  exact_cmd->add_option("--mode", exact.mode)
      ->required()
      ->check(CLI::IsMember({"mm", "cm", "rcm"}));
  exact_cmd->add_option("--attack", exact.attack)
      ->check(CLI::IsMember({"none", "intercept-resend"}));
  exact_cmd->add_option("--fake-state", exact.fake_state)
      ->check(CLI::IsMember({"00", "01", "10", "11"}));
  exact_cmd->add_option("--bob-bits", exact.bob_bits)
      ->check(CLI::IsMember({"00", "01", "10", "11"}));
  exact_cmd->add_option("--alice-bits", exact.alice_bits)
      ->check(CLI::IsMember({"00", "01", "10", "11"}));
  exact_cmd->add_option("--basis", exact.basis)->check(CLI::IsMember({"z", "x", "averaged"}));
  exact_cmd->add_option("--format", exact.format)->check(CLI::IsMember({"text", "json"}));
  exact_cmd->add_option("--output", exact.output);
  exact_cmd->add_flag("--no-timestamp", exact.no_timestamp);

  DemoOptions demo;
  CLI::App* demo_cmd = app.add_subcommand("demo", "Print one annotated protocol run step by step");
  demo_cmd->add_option("--mode", demo.mode)->check(CLI::IsMember({"mm", "cm", "rcm"}));
  demo_cmd->add_option("--attack", demo.attack)
      ->check(CLI::IsMember({"none", "intercept-resend"}));
  CLI::Option* demo_fake = demo_cmd->add_option("--fake-state", demo.fake_state)
                               ->check(CLI::IsMember({"00", "01", "10", "11"}));
  demo_cmd->add_option("--bob-bits", demo.bob_bits)->check(CLI::IsMember({"00", "01", "10", "11"}));
  demo_cmd->add_option("--alice-bits", demo.alice_bits)
      ->check(CLI::IsMember({"00", "01", "10", "11"}));
  demo_cmd->add_option("--seed", demo.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  simulate.fake_state_given = simulate_fake->count() > 0;
  demo.fake_state_given = demo_fake->count() > 0;

  try {
    if (simulate_cmd->parsed()) return run_simulate(simulate);
    if (exact_cmd->parsed()) return run_exact(exact);
    return run_demo(demo);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
