#include "phaserank/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "phaserank/errors.hpp"
#include "phaserank/rng.hpp"

namespace phaserank {

void ReaderConfig::validate() const {
    if (!(frequency > 0.0) || !std::isfinite(frequency)) {
        throw InvalidParameterError("reader: frequency must be > 0");
    }
    if (!allow_out_of_band && (frequency < 902e6 || frequency > 928e6)) {
        throw InvalidParameterError("reader: frequency " + std::to_string(frequency) +
                                    " Hz outside the 902-928 MHz UHF band "
                                    "(set allow_out_of_band to override)");
    }
    if (!(rounds_per_second > 0.0) || !std::isfinite(rounds_per_second)) {
        throw InvalidParameterError("reader: rounds_per_second must be > 0");
    }
}

void NoiseModel::validate() const {
    if (!(phase_sigma >= 0.0) || !std::isfinite(phase_sigma)) {
        throw InvalidParameterError("noise: phase_sigma must be >= 0");
    }
    if (!(read_drop_prob >= 0.0 && read_drop_prob < 1.0)) {
        throw InvalidParameterError("noise: read_drop_prob must be in [0, 1)");
    }
    for (const RotationEvent& e : rotation_events) {
        if (!std::isfinite(e.time) || !std::isfinite(e.phase_step)) {
            throw InvalidParameterError("noise: rotation event with non-finite fields");
        }
    }
}

const DroneInfo* SweepRecording::find_drone(const std::string& drone_id) const {
    for (const DroneInfo& d : drones) {
        if (d.drone_id == drone_id) return &d;
    }
    return nullptr;
}

void SweepRecording::validate() const {
    reader.validate();
    if (drones.empty()) {
        throw InvalidParameterError("recording: no drones");
    }
    if (traces.size() != drones.size()) {
        throw InvalidParameterError("recording: trace/drone count mismatch");
    }
    for (const DroneInfo& d : drones) {
        if (traces.find(d.tag_id) == traces.end()) {
            throw InvalidParameterError("recording: missing trace for tag " + d.tag_id);
        }
    }
    for (const auto& [tag, trace] : traces) {
        trace.validate_raw();
    }
}

SweepRecording simulate_recording(const std::vector<DroneTrajectory>& trajectories,
                                  const ReaderConfig& reader, const NoiseModel& noise) {
    if (trajectories.empty()) {
        throw InvalidParameterError("simulate_recording: no trajectories");
    }
    reader.validate();
    noise.validate();

    const Axis axis = trajectories.front().sweep_axis();
    const double duration = trajectories.front().duration;
    const double speed = component(trajectories.front().velocity, axis);
    for (const DroneTrajectory& tr : trajectories) {
        tr.validate();
        if (tr.sweep_axis() != axis || tr.duration != duration ||
            component(tr.velocity, axis) != speed) {
            throw InvalidParameterError("simulate_recording: trajectories disagree on "
                                        "axis, speed or duration");
        }
    }

    SweepRecording rec;
    rec.axis = axis;
    rec.reader = reader;
    rec.speed = speed;
    rec.duration = duration;

    const double wavelength = reader.wavelength();
    const double rps = reader.rounds_per_second;
    const auto n_rounds = static_cast<std::int64_t>(std::floor(duration * rps)) + 1;

    for (const DroneTrajectory& tr : trajectories) {
        rec.drones.push_back({tr.drone_id, tr.tag_id, tr.start});

        // Rotation steps for this tag, in time order.
        std::vector<RotationEvent> events;
        for (const RotationEvent& e : noise.rotation_events) {
            if (e.tag_id == tr.tag_id) events.push_back(e);
        }
        std::sort(events.begin(), events.end(),
                  [](const RotationEvent& a, const RotationEvent& b) { return a.time < b.time; });

        // Per-tag stream: output does not depend on tag iteration order.
        Rng rng(mix_seed(noise.seed, fnv1a64(tr.tag_id)));

        TagTrace trace;
        trace.tag_id = tr.tag_id;
        std::size_t next_event = 0;
        double step_sum = 0.0;
        for (std::int64_t r = 0; r < n_rounds; ++r) {
            const double t = static_cast<double>(r) / rps;
            const bool kept = rng.uniform() >= noise.read_drop_prob;
            if (!kept) continue;
            while (next_event < events.size() && events[next_event].time <= t) {
                step_sum += events[next_event].phase_step;
                ++next_event;
            }
            const double dist = (tr.position_at(t) - reader.position).norm();
            double phase = ideal_phase(dist, wavelength, tr.phase_offset);
            if (noise.phase_sigma > 0.0) phase += noise.phase_sigma * rng.gaussian();
            phase += step_sum;
            trace.samples.push_back({r, t, wrap_two_pi(phase)});
        }
        rec.traces.emplace(tr.tag_id, std::move(trace));
    }

    std::sort(rec.drones.begin(), rec.drones.end(),
              [](const DroneInfo& a, const DroneInfo& b) { return a.drone_id < b.drone_id; });
    for (std::size_t i = 1; i < rec.drones.size(); ++i) {
        if (rec.drones[i].drone_id == rec.drones[i - 1].drone_id) {
            throw InvalidParameterError("simulate_recording: duplicate drone id " +
                                        rec.drones[i].drone_id);
        }
    }
    if (rec.traces.size() != rec.drones.size()) {
        throw InvalidParameterError("simulate_recording: duplicate tag id in trajectories");
    }
    return rec;
}

}  // namespace phaserank
