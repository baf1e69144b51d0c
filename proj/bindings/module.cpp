#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qdialogue/analysis.hpp"
#include "qdialogue/protocol.hpp"
#include "qdialogue/random.hpp"
#include "qdialogue/report.hpp"

namespace py = pybind11;
using namespace qdialogue;

namespace {

std::string repr_bits(const char* name, int a, int b) {
  std::ostringstream out;
  out << name << "(" << a << ", " << b << ")";
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact simulator of the EPR-pair quantum dialogue protocol, its "
            "intercept-and-resend attack, and the revised control mode";
  m.attr("__version__") = kToolVersion;

  py::enum_<MeasBasis>(m, "MeasBasis").value("Z", MeasBasis::Z).value("X", MeasBasis::X);

  py::enum_<RunMode>(m, "RunMode")
      .value("MessageMode", RunMode::MessageMode)
      .value("ControlModeOriginal", RunMode::ControlModeOriginal)
      .value("ControlModeRevised", RunMode::ControlModeRevised);

  py::enum_<ControlModeKind>(m, "ControlModeKind")
      .value("Original", ControlModeKind::Original)
      .value("Revised", ControlModeKind::Revised);

  py::enum_<Verdict>(m, "Verdict")
      .value("NotChecked", Verdict::NotChecked)
      .value("Pass", Verdict::Pass)
      .value("Fail", Verdict::Fail);

  py::class_<BellIndex>(m, "BellIndex")
      .def(py::init<int, int>(), py::arg("k"), py::arg("l"))
      .def_property_readonly("k", &BellIndex::k)
      .def_property_readonly("l", &BellIndex::l)
      .def("__xor__", &BellIndex::operator^)
      .def("__eq__", [](BellIndex a, BellIndex b) { return a == b; })
      .def("__repr__", [](BellIndex v) { return repr_bits("BellIndex", v.k(), v.l()); });

  py::class_<BitPair>(m, "BitPair")
      .def(py::init<int, int>(), py::arg("first"), py::arg("second"))
      .def_property_readonly("first", &BitPair::first)
      .def_property_readonly("second", &BitPair::second)
      .def("__xor__", &BitPair::operator^)
      .def("__eq__", [](BitPair a, BitPair b) { return a == b; })
      .def("__repr__", [](BitPair v) { return repr_bits("BitPair", v.first(), v.second()); });

  py::class_<Outcome>(m, "Outcome")
      .def_readonly("result", &Outcome::result)
      .def_readonly("basis", &Outcome::basis)
      .def("__repr__", [](const Outcome& o) {
        return "Outcome(result=" + std::to_string(o.result) + ", basis=" + to_string(o.basis) + ")";
      });

  py::class_<PureState>(m, "PureState")
      .def(py::init<int, std::vector<Amplitude>>(), py::arg("num_qubits"), py::arg("amplitudes"))
      .def_static("basis_state", &PureState::basis_state, py::arg("num_qubits"),
                  py::arg("basis_index"))
      .def_property_readonly("num_qubits", &PureState::num_qubits)
      .def_property_readonly("amplitudes",
                             [](const PureState& s) { return s.amplitudes(); })
      .def("amplitude", &PureState::amplitude, py::arg("basis_index"));

  py::class_<EncodingOp>(m, "EncodingOp")
      .def_readonly("index", &EncodingOp::index)
      .def_readonly("matrix", &EncodingOp::matrix);

  py::class_<RandomStream>(m, "RandomStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("next_unit", &RandomStream::next_unit)
      .def("next_bit", &RandomStream::next_bit)
      .def("derive", &RandomStream::derive, py::arg("index"));

  // quantum core
  m.def("bell_state", &bell_state, py::arg("index"));
  m.def("encoding_op", py::overload_cast<BellIndex>(&encoding_op), py::arg("index"));
  m.def("encoding_op_for_bits", py::overload_cast<BitPair>(&encoding_op), py::arg("bits"));
  m.def("apply_single_qubit", &apply_single_qubit, py::arg("state"), py::arg("qubit"),
        py::arg("op"));
  m.def("outcome_distribution", &outcome_distribution, py::arg("state"), py::arg("qubit"),
        py::arg("basis"));
  m.def("measure_qubit", &measure_qubit, py::arg("state"), py::arg("qubit"), py::arg("basis"),
        py::arg("randomness"));
  m.def("bell_measure", &bell_measure, py::arg("state"), py::arg("qubit_a"), py::arg("qubit_b"),
        py::arg("randomness"));
  m.def("inner_product", &inner_product, py::arg("a"), py::arg("b"));
  m.def("fidelity", &fidelity, py::arg("a"), py::arg("b"));
  m.def("tensor", &tensor, py::arg("a"), py::arg("b"));

  // protocol
  py::class_<Announcement>(m, "Announcement")
      .def_property_readonly("is_public",
                             [](const Announcement& a) { return is_public_announcement(a.kind); })
      .def("__repr__", [](const Announcement& a) { return format_announcement(a); });

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("run_id", &RunRecord::run_id)
      .def_readonly("mode", &RunRecord::mode)
      .def_readonly("bob_bits", &RunRecord::bob_bits)
      .def_readonly("alice_bits", &RunRecord::alice_bits)
      .def_readonly("bell_outcome", &RunRecord::bell_outcome)
      .def_readonly("alice_basis", &RunRecord::alice_basis)
      .def_readonly("alice_outcome", &RunRecord::alice_outcome)
      .def_readonly("bob_outcome", &RunRecord::bob_outcome)
      .def_readonly("verdict", &RunRecord::verdict)
      .def_property_readonly("announcements", [](const RunRecord& r) {
        std::vector<std::string> out;
        out.reserve(r.announcements.size());
        for (const Announcement& a : r.announcements) out.push_back(format_announcement(a));
        return out;
      });

  py::class_<SessionConfig>(m, "SessionConfig")
      .def(py::init<>())
      .def_readwrite("bob_message", &SessionConfig::bob_message)
      .def_readwrite("alice_message", &SessionConfig::alice_message)
      .def_readwrite("control_probability", &SessionConfig::control_probability)
      .def_readwrite("control_mode_kind", &SessionConfig::control_mode_kind)
      .def_readwrite("seed", &SessionConfig::seed)
      .def_readwrite("abort_on_detect", &SessionConfig::abort_on_detect)
      .def_readwrite("max_runs", &SessionConfig::max_runs)
      .def("validate", &SessionConfig::validate);

  py::class_<SessionStats>(m, "SessionStats")
      .def_readonly("runs_total", &SessionStats::runs_total)
      .def_readonly("runs_mm", &SessionStats::runs_mm)
      .def_readonly("runs_cm", &SessionStats::runs_cm)
      .def_readonly("runs_rcm", &SessionStats::runs_rcm)
      .def_readonly("detections", &SessionStats::detections)
      .def_readonly("detection_rate_per_control_run",
                    &SessionStats::detection_rate_per_control_run)
      .def_readonly("eve_alice_accuracy", &SessionStats::eve_alice_accuracy)
      .def_readonly("eve_bob_accuracy", &SessionStats::eve_bob_accuracy)
      .def_readonly("legit_decode_accuracy", &SessionStats::legit_decode_accuracy)
      .def_readonly("parity_leak_bits", &SessionStats::parity_leak_bits)
      .def_readonly("seed", &SessionStats::seed)
      .def("__eq__", [](const SessionStats& a, const SessionStats& b) { return a == b; });

  py::class_<SessionResult>(m, "SessionResult")
      .def_readonly("runs", &SessionResult::runs)
      .def_readonly("stats", &SessionResult::stats);

  m.def("bob_prepare_and_encode", &bob_prepare_and_encode, py::arg("bits"));
  m.def("alice_encode", &alice_encode, py::arg("joint_state"), py::arg("travel_qubit"),
        py::arg("bits"));
  m.def("decode_message_mode", &decode_message_mode, py::arg("bell_outcome"), py::arg("own_bits"));
  m.def("check_control_original", &check_control_original, py::arg("announced_alice_bits"),
        py::arg("bob_bits"), py::arg("bell_outcome"));
  m.def("expected_correlation", &expected_correlation, py::arg("bob_bits"), py::arg("basis"));
  m.def("run_session", &run_session, py::arg("config"), py::arg("attack"));

  // adversary
  py::class_<AttackStrategy>(m, "AttackStrategy")
      .def_static("none", &AttackStrategy::none)
      .def_static("intercept_resend", &AttackStrategy::intercept_resend,
                  py::arg("fake_state") = BellIndex(0, 0))
      .def_readonly("fake_state", &AttackStrategy::fake_state)
      .def_property_readonly("intercepts", &AttackStrategy::intercepts);

  py::class_<EveState>(m, "EveState")
      .def_readonly("fake_state", &EveState::fake_state)
      .def_readonly("captured_travel_qubit", &EveState::captured_travel_qubit)
      .def_readonly("forwarded_qubit", &EveState::forwarded_qubit)
      .def_readonly("retained_qubit", &EveState::retained_qubit)
      .def_readonly("deduced_alice_bits", &EveState::deduced_alice_bits)
      .def_readonly("deduced_bob_bits", &EveState::deduced_bob_bits);

  m.def("eve_intercept_forward", &eve_intercept_forward, py::arg("global_state"),
        py::arg("travel_qubit"), py::arg("strategy"));
  m.def("eve_intercept_return", &eve_intercept_return, py::arg("global_state"), py::arg("eve"),
        py::arg("randomness"));
  m.def("eve_decode_bob", &eve_decode_bob, py::arg("public_bell_outcome"),
        py::arg("deduced_alice_bits"));

  // analysis
  py::class_<ExactResult>(m, "ExactResult")
      .def_readonly("mode", &ExactResult::mode)
      .def_readonly("bob_bits", &ExactResult::bob_bits)
      .def_readonly("alice_bits", &ExactResult::alice_bits)
      .def_readonly("basis", &ExactResult::basis)
      .def_readonly("pass_probability", &ExactResult::pass_probability)
      .def_readonly("probability_sum", &ExactResult::probability_sum)
      .def_readonly("branch_count", &ExactResult::branch_count);

  m.def(
      "exact_pass_probability",
      [](RunMode mode, const AttackStrategy& attack, BitPair bob_bits,
         std::optional<BitPair> alice_bits, std::optional<MeasBasis> basis) {
        return exact_pass_probability(mode, attack, bob_bits, ScenarioInput{alice_bits, basis});
      },
      py::arg("mode"), py::arg("attack"), py::arg("bob_bits"), py::arg("alice_bits") = py::none(),
      py::arg("basis") = py::none());
  m.def("session_detection_probability", &session_detection_probability,
        py::arg("per_run_detection"), py::arg("control_runs"));
  m.def("monte_carlo", &monte_carlo, py::arg("config"), py::arg("attack"), py::arg("sessions"),
        py::arg("jobs") = 1);
}
