#pragma once

// Relative positioning: per-axis orderings from trough structure and assembly
// of the swarm geometry from three axis sweeps.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "phaserank/pipeline.hpp"
#include "phaserank/simulator.hpp"
#include "phaserank/trough.hpp"

namespace phaserank {

struct PipelineConfig {
    FilterConfig filter;
    int guard = 5;
    double rotation_threshold = 1.0;  // radians
    int rotation_sustain = 9;         // samples
    bool rotation_screening = true;   // run the step detector on each trace
    // Tags whose detected trough sits inside (or within one filter window of)
    // a flagged rotation range are unusable: the step, not the geometry,
    // decides where the minimum lands. They are reported as failures instead
    // of being ranked.
    bool exclude_rotation_overlap = true;

    void validate() const;
};

struct DroneFlags {
    bool boundary_trough = false;
    bool trough_tie = false;
    bool rotation_flagged = false;  // trace carries flagged ranges somewhere
    bool rotation_overlap = false;  // a flagged range covers the trough
};

struct TagFailure {
    std::string drone_id;
    std::string tag_id;
    std::string reason;
};

// Result of ordering one sweep. rank 0 = earliest trough lowest point, i.e.
// the drone whose closest approach came first.
struct AxisOrder {
    Axis axis = Axis::X;
    std::vector<std::string> ranking;  // drone ids
    std::map<std::string, TroughPoint> trough_points;
    std::map<std::string, DroneFlags> flags;
    std::vector<TagFailure> failures;  // drones left out of the ranking
    bool depth_based = false;
    bool depth_confound_warning = false;
};

// Per tag: splice -> filter -> lowest point; rank by ascending trough time,
// ties (identical rounds) by ascending trough value then drone id. Tags
// without a usable trough land in `failures`; the rest are still ranked.
AxisOrder order_axis(const SweepRecording& recording, const PipelineConfig& cfg);

// Orders by trough depth instead of timing: the deeper dip belongs to the
// laterally closer tag (larger phase changing rate). Depth is the trough
// minimum measured against the trace's own spliced maximum, which cancels the
// arbitrary per-tag phase anchor. Only meaningful when the drones share the
// sweep-axis coordinate, and it conflates lateral offset with height - the
// reason locate_swarm uses three per-axis sweeps instead.
AxisOrder order_by_trough_depth(const SweepRecording& recording, const PipelineConfig& cfg);

// Per-drone (rank_x, rank_y, rank_z); each axis column is a permutation of
// 0..n-1 over the drones present.
struct SwarmGeometry {
    std::map<std::string, std::array<int, 3>> ranks;
};

struct LocateResult {
    SwarmGeometry geometry;           // drones ranked on every axis
    std::array<AxisOrder, 3> orders;  // x, y, z diagnostics
    std::vector<TagFailure> failures; // union of per-axis failures

    bool partial() const { return !failures.empty(); }
};

// Runs order_axis over the three per-axis recordings and assembles rank
// triples for every drone ranked on all three. The recordings must cover the
// same drone set and carry matching axes.
LocateResult locate_swarm(const SweepRecording& rec_x, const SweepRecording& rec_y,
                          const SweepRecording& rec_z, const PipelineConfig& cfg);

}  // namespace phaserank
