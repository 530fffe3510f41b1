// Python bindings for the core operations. Sequence-style wrappers take plain
// lists of phase values (sample index = round index); the experiment-level
// entry points speak the same JSON formats as the CLI.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "phaserank/errors.hpp"
#include "phaserank/experiment.hpp"
#include "phaserank/io.hpp"
#include "phaserank/locate.hpp"
#include "phaserank/metrics.hpp"
#include "phaserank/phase_model.hpp"
#include "phaserank/pipeline.hpp"
#include "phaserank/trough.hpp"

namespace py = pybind11;
using namespace phaserank;

namespace {

TagTrace trace_from_values(const std::vector<double>& values) {
    TagTrace t;
    t.tag_id = "py";
    t.samples.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        t.samples.push_back({static_cast<std::int64_t>(i), static_cast<double>(i), values[i]});
    }
    return t;
}

std::vector<double> values_of(const TagTrace& t) {
    std::vector<double> out;
    out.reserve(t.size());
    for (const PhaseSample& s : t.samples) out.push_back(s.phase);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "RFID backscatter phase simulation and trough-based relative localization";

    m.def("ideal_phase", &ideal_phase, py::arg("distance"), py::arg("wavelength"),
          py::arg("offset") = 0.0,
          "Backscatter phase for a reader-tag distance, wrapped into [0, 2*pi).");
    m.def("analytic_phase_rate", &analytic_phase_rate, py::arg("x0"), py::arg("y0"),
          py::arg("v"), py::arg("t"), py::arg("wavelength"),
          "Closed-form d(theta)/dt for a tag moving along +x past the reader.");
    m.def("wrap_two_pi", &wrap_two_pi, py::arg("angle"));

    m.def(
        "splice",
        [](const std::vector<double>& values) {
            return values_of(splice(trace_from_values(values)));
        },
        py::arg("phases"),
        "Reconnect 2*pi wrap discontinuities; returns the wrap-free profile.");

    m.def(
        "savitzky_golay",
        [](const std::vector<double>& values, int window, int polyorder) {
            return values_of(
                savitzky_golay(trace_from_values(values), FilterConfig{window, polyorder}));
        },
        py::arg("values"), py::arg("window") = 21, py::arg("polyorder") = 3,
        "Least-squares local polynomial smoothing over sample indices.");

    m.def(
        "find_trough_lowest",
        [](const std::vector<double>& values, int guard) {
            const TroughPoint tp = find_trough_lowest(trace_from_values(values), guard);
            return py::make_tuple(tp.index, tp.value, tp.boundary, tp.tied);
        },
        py::arg("values"), py::arg("guard") = 5,
        "Earliest global minimum of a spliced profile: (index, value, boundary, tied).");

    m.def(
        "brute_force_min",
        [](const std::vector<double>& values) {
            return brute_force_min(trace_from_values(values));
        },
        py::arg("values"), "Full-scan argmin oracle, ties to the smallest index.");

    m.def(
        "detect_rotation_events",
        [](const std::vector<double>& values, double threshold, int sustain) {
            std::vector<std::pair<std::size_t, std::size_t>> out;
            for (const IndexRange& r :
                 detect_rotation_events(trace_from_values(values), threshold, sustain)) {
                out.emplace_back(r.begin, r.end);
            }
            return out;
        },
        py::arg("values"), py::arg("step_threshold") = 1.0, py::arg("sustain") = 9,
        "Flag [begin, end) index ranges whose level shift exceeds the threshold.");

    m.def(
        "simulate_sweeps",
        [](const std::string& config_json) {
            const ExperimentConfig cfg = experiment_config_from_json(config_json);
            const SweepSet sweeps =
                simulate_sweep_set(cfg, expand_grid(cfg)[0], trial_seed(cfg.seed, 0, 0));
            py::dict out;
            out["x"] = recording_to_jsonl(sweeps.x);
            out["y"] = recording_to_jsonl(sweeps.y);
            out["z"] = recording_to_jsonl(sweeps.z);
            return out;
        },
        py::arg("config_json"),
        "Simulate the three axis sweeps of a config; returns JSONL recordings per axis.");

    m.def(
        "locate",
        [](const std::string& rec_x, const std::string& rec_y, const std::string& rec_z) {
            const LocateResult result =
                locate_swarm(recording_from_jsonl(rec_x), recording_from_jsonl(rec_y),
                             recording_from_jsonl(rec_z), PipelineConfig{});
            return locate_report_to_json(result);
        },
        py::arg("rec_x"), py::arg("rec_y"), py::arg("rec_z"),
        "Rank drones from three JSONL sweep recordings; returns the report JSON.");

    m.def(
        "run_experiment",
        [](const std::string& config_json) {
            return aggregate_report_to_json(
                run_monte_carlo(experiment_config_from_json(config_json)));
        },
        py::arg("config_json"),
        "Run the seeded Monte-Carlo experiment of a config; returns the aggregate JSON.");

    py::register_exception<InvalidParameterError>(m, "InvalidParameterError", PyExc_ValueError);
    py::register_exception<InsufficientDataError>(m, "InsufficientDataError", PyExc_ValueError);
    py::register_exception<EmptyTraceError>(m, "EmptyTraceError", PyExc_ValueError);
    py::register_exception<SingularityError>(m, "SingularityError", PyExc_ValueError);
    py::register_exception<FormationError>(m, "FormationError", PyExc_ValueError);
    py::register_exception<InconsistentRecordingsError>(m, "InconsistentRecordingsError",
                                                        PyExc_ValueError);
    py::register_exception<UndefinedMetricError>(m, "UndefinedMetricError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_IOError);
}
