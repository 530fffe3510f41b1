#pragma once

// File formats.
//
// SweepRecording: line-delimited JSON, one header object followed by one
// object per sample (round, t, tag, phase). Floats are written with 17
// significant digits so a load returns the exact doubles that were saved.
//
// Geometry and aggregate reports: single JSON documents; the aggregate also
// ships as a flat CSV (one row per grid point and metric) for plotting.

#include <string>

#include "phaserank/experiment.hpp"
#include "phaserank/locate.hpp"
#include "phaserank/simulator.hpp"

namespace phaserank {

// 17-significant-digit decimal form of a double; parsing returns the exact
// value. Used by the recording format.
std::string format_double(double value);

// Shortest decimal form that still parses back to the exact value. Used by
// the CSV report.
std::string format_double_shortest(double value);

std::string recording_to_jsonl(const SweepRecording& recording);
SweepRecording recording_from_jsonl(const std::string& text);

void save_recording(const SweepRecording& recording, const std::string& path);
SweepRecording load_recording(const std::string& path);

std::string locate_report_to_json(const LocateResult& result);

std::string aggregate_report_to_json(const AggregateReport& report);
std::string aggregate_report_to_csv(const AggregateReport& report);

ExperimentConfig experiment_config_from_json(const std::string& text);
ExperimentConfig load_experiment_config(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace phaserank
