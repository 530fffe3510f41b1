#include "phaserank/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "phaserank/errors.hpp"
#include "phaserank/phase_model.hpp"

namespace phaserank {

Axis DroneTrajectory::sweep_axis() const {
    int moving = -1;
    int count = 0;
    const double comps[3] = {velocity.x, velocity.y, velocity.z};
    for (int i = 0; i < 3; ++i) {
        if (comps[i] != 0.0) {
            moving = i;
            ++count;
        }
    }
    if (count != 1) {
        throw InvalidParameterError("trajectory " + drone_id +
                                    ": expected exactly one non-zero velocity component");
    }
    return static_cast<Axis>(moving);
}

void DroneTrajectory::validate() const {
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw InvalidParameterError("trajectory " + drone_id + ": duration must be > 0");
    }
    if (!(phase_offset >= 0.0 && phase_offset < kTwoPi)) {
        throw InvalidParameterError("trajectory " + drone_id + ": phase offset outside [0, 2pi)");
    }
    sweep_axis();  // throws unless exactly one component moves
}

std::vector<DroneTrajectory> make_axis_sweep(const std::vector<DroneSpec>& drones, Axis axis,
                                             double speed, double duration, double wavelength) {
    if (!(speed > 0.0) || !std::isfinite(speed)) {
        throw InvalidParameterError("make_axis_sweep: speed must be > 0");
    }
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw InvalidParameterError("make_axis_sweep: duration must be > 0");
    }
    if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
        throw InvalidParameterError("make_axis_sweep: wavelength must be > 0");
    }

    // Half-wavelength keep-out between tags.
    const double min_spacing = wavelength / 2.0;
    for (std::size_t i = 0; i < drones.size(); ++i) {
        for (std::size_t j = i + 1; j < drones.size(); ++j) {
            const double d = (drones[i].position - drones[j].position).norm();
            if (d < min_spacing) {
                throw FormationError("formation spacing violation: drones '" +
                                     drones[i].drone_id + "' and '" + drones[j].drone_id +
                                     "' are " + std::to_string(d) + " m apart, minimum is " +
                                     std::to_string(min_spacing) + " m (wavelength/2)");
            }
        }
    }

    std::vector<DroneTrajectory> trajectories;
    trajectories.reserve(drones.size());
    for (const DroneSpec& spec : drones) {
        DroneTrajectory tr;
        tr.drone_id = spec.drone_id;
        tr.tag_id = spec.tag_id;
        tr.start = spec.position;
        tr.velocity = speed * axis_unit(axis);
        tr.duration = duration;
        tr.phase_offset = spec.phase_offset;
        tr.validate();
        trajectories.push_back(std::move(tr));
    }
    return trajectories;
}

SweepPlan plan_axis_sweep(const std::vector<DroneSpec>& formation, Axis axis, double speed,
                          double margin) {
    if (formation.empty()) {
        throw InvalidParameterError("plan_axis_sweep: empty formation");
    }
    if (!(speed > 0.0) || !(margin > 0.0)) {
        throw InvalidParameterError("plan_axis_sweep: speed and margin must be > 0");
    }

    double cmax = -std::numeric_limits<double>::infinity();
    double cmin = std::numeric_limits<double>::infinity();
    for (const DroneSpec& d : formation) {
        cmax = std::max(cmax, component(d.position, axis));
        cmin = std::min(cmin, component(d.position, axis));
    }
    const double spread = cmax - cmin;

    SweepPlan plan;
    plan.duration = (spread + 2.0 * margin) / speed;
    plan.drones = formation;
    // Shift so the leading drone starts `margin` short of the reader plane:
    // it crosses at margin/speed, the trailing one margin/speed before the end.
    const double shift = cmax + margin;
    for (DroneSpec& d : plan.drones) {
        switch (axis) {
            case Axis::X: d.position.x -= shift; break;
            case Axis::Y: d.position.y -= shift; break;
            case Axis::Z: d.position.z -= shift; break;
        }
    }
    return plan;
}

}  // namespace phaserank
