#pragma once

// Swarm formations and axis-aligned sweep trajectories.

#include <string>
#include <vector>

#include "phaserank/geometry.hpp"

namespace phaserank {

// One drone in a formation: identity plus 3D position (meters) and the
// constant phase shift of its tag.
struct DroneSpec {
    std::string drone_id;
    std::string tag_id;
    Vec3 position;
    double phase_offset = 0.0;  // radians in [0, 2*pi)
};

// Linear path of one tagged drone during a sweep.
struct DroneTrajectory {
    std::string drone_id;
    std::string tag_id;
    Vec3 start;
    Vec3 velocity;        // m/s; exactly one non-zero component for axis sweeps
    double duration = 0;  // seconds
    double phase_offset = 0.0;

    Vec3 position_at(double t) const { return start + t * velocity; }
    Axis sweep_axis() const;  // the single moving axis
    void validate() const;
};

// Builds one trajectory per drone, all flying along `axis` at `speed` from
// their current positions (relative formation preserved). Enforces the
// minimum pairwise spacing of wavelength/2 and names the first offending pair.
std::vector<DroneTrajectory> make_axis_sweep(const std::vector<DroneSpec>& drones, Axis axis,
                                             double speed, double duration, double wavelength);

// A formation positioned for a sweep, plus the pass duration.
struct SweepPlan {
    std::vector<DroneSpec> drones;
    double duration = 0.0;
};

// Shifts every drone by the same amount along `axis` so the whole formation
// crosses the reader plane (coordinate 0) mid-pass: the leading drone crosses
// after margin/speed seconds and the trailing one margin/speed before the
// end. Keeps every trough well inside the recording.
SweepPlan plan_axis_sweep(const std::vector<DroneSpec>& formation, Axis axis, double speed,
                          double margin);

}  // namespace phaserank
