#pragma once

// Synthesizes the phase traces a UHF RFID reader would record while a tagged
// swarm sweeps past it: one potential read per tag per inventory round,
// independent drop coin-flips, Gaussian phase noise and additive rotation
// steps, all phases reduced into [0, 2*pi).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "phaserank/geometry.hpp"
#include "phaserank/phase_model.hpp"
#include "phaserank/trace.hpp"
#include "phaserank/trajectory.hpp"

namespace phaserank {

struct ReaderConfig {
    Vec3 position{0.0, 0.0, 0.0};
    double frequency = 915e6;         // Hz; mid-band of the 902-928 MHz UHF band
    double rounds_per_second = 40.0;  // inventory-round rate
    bool allow_out_of_band = false;

    // Derived, never stored: c / frequency.
    double wavelength() const { return kSpeedOfLight / frequency; }
    void validate() const;

    friend bool operator==(const ReaderConfig&, const ReaderConfig&) = default;
};

// A step discontinuity added to every sample of `tag_id` at or after `time`.
// Models a body rotation/flip; hovering tags keep a flat phase.
struct RotationEvent {
    std::string tag_id;
    double time = 0.0;
    double phase_step = 0.0;  // radians
    friend bool operator==(const RotationEvent&, const RotationEvent&) = default;
};

struct NoiseModel {
    double phase_sigma = 0.0;     // radians, Gaussian std per sample
    double read_drop_prob = 0.0;  // [0, 1)
    std::vector<RotationEvent> rotation_events;
    std::uint64_t seed = 0;

    void validate() const;
};

struct DroneInfo {
    std::string drone_id;
    std::string tag_id;
    Vec3 start;
    friend bool operator==(const DroneInfo&, const DroneInfo&) = default;
};

// Everything captured during one axis-aligned sweep: per-tag traces plus the
// metadata needed to score against ground truth.
struct SweepRecording {
    Axis axis = Axis::X;
    ReaderConfig reader;
    double speed = 0.0;     // signed speed along `axis`
    double duration = 0.0;  // seconds
    std::map<std::string, TagTrace> traces;  // keyed by tag_id
    std::vector<DroneInfo> drones;           // ground truth, sorted by drone_id

    const DroneInfo* find_drone(const std::string& drone_id) const;
    void validate() const;

    friend bool operator==(const SweepRecording&, const SweepRecording&) = default;
};

// Runs the sweep. All trajectories must share one axis, speed and duration.
// Each tag draws from its own RNG stream derived from (noise.seed, tag_id), so
// the output is byte-identical for identical inputs regardless of evaluation
// order.
SweepRecording simulate_recording(const std::vector<DroneTrajectory>& trajectories,
                                  const ReaderConfig& reader, const NoiseModel& noise);

}  // namespace phaserank
