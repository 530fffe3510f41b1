#include "phaserank/locate.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "phaserank/errors.hpp"

namespace phaserank {

void PipelineConfig::validate() const {
    filter.validate();
    if (guard < 1) {
        throw InvalidParameterError("pipeline: guard must be >= 1");
    }
    if (rotation_sustain < 1) {
        throw InvalidParameterError("pipeline: rotation_sustain must be >= 1");
    }
    if (!(rotation_threshold > 0.0)) {
        throw InvalidParameterError("pipeline: rotation_threshold must be > 0");
    }
}

namespace {

struct TagAnalysis {
    TroughPoint trough;
    DroneFlags flags;
    double depth = 0.0;  // trough value minus the trace's spliced maximum
};

// splice -> rotation screen -> filter -> lowest point for one tag. Throws the
// per-tag errors (EmptyTraceError, InsufficientDataError) for the caller to
// collect.
TagAnalysis analyze_tag(const TagTrace& raw, const PipelineConfig& cfg) {
    const TagTrace spliced = splice(raw);

    std::vector<IndexRange> rotation_ranges;
    if (cfg.rotation_screening) {
        rotation_ranges =
            detect_rotation_events(spliced, cfg.rotation_threshold, cfg.rotation_sustain);
    }

    const TagTrace smooth = savitzky_golay(spliced, cfg.filter);

    TagAnalysis out;
    out.trough = find_trough_lowest(smooth, cfg.guard);
    out.flags.boundary_trough = out.trough.boundary;
    out.flags.trough_tie = out.trough.tied;
    out.flags.rotation_flagged = !rotation_ranges.empty();

    // The filter smears a step over one window, so the overlap test uses a
    // window-sized margin around each flagged range.
    const std::size_t margin = static_cast<std::size_t>(cfg.filter.window);
    for (const IndexRange& r : rotation_ranges) {
        const std::size_t lo = r.begin > margin ? r.begin - margin : 0;
        const std::size_t hi = r.end + margin;
        if (out.trough.index >= lo && out.trough.index < hi) {
            out.flags.rotation_overlap = true;
            break;
        }
    }

    double max_value = smooth.samples[0].phase;
    for (const PhaseSample& s : smooth.samples) max_value = std::max(max_value, s.phase);
    out.depth = out.trough.value - max_value;
    return out;
}

struct RankedDrone {
    std::string drone_id;
    TagAnalysis analysis;
};

// Shared per-tag stage of both ordering operations; fills everything except
// the ranking itself.
std::vector<RankedDrone> analyze_recording(const SweepRecording& recording,
                                           const PipelineConfig& cfg, AxisOrder& out) {
    cfg.validate();
    recording.validate();
    out.axis = recording.axis;

    std::vector<RankedDrone> ranked;
    for (const DroneInfo& drone : recording.drones) {
        const TagTrace& raw = recording.traces.at(drone.tag_id);
        try {
            TagAnalysis analysis = analyze_tag(raw, cfg);
            if (analysis.flags.rotation_overlap && cfg.exclude_rotation_overlap) {
                out.flags[drone.drone_id] = analysis.flags;
                out.failures.push_back({drone.drone_id, drone.tag_id,
                                        "rotation step overlaps the trough"});
                continue;
            }
            out.trough_points[drone.drone_id] = analysis.trough;
            out.flags[drone.drone_id] = analysis.flags;
            ranked.push_back({drone.drone_id, std::move(analysis)});
        } catch (const EmptyTraceError& e) {
            out.failures.push_back({drone.drone_id, drone.tag_id, e.what()});
        } catch (const InsufficientDataError& e) {
            out.failures.push_back({drone.drone_id, drone.tag_id, e.what()});
        }
    }
    return ranked;
}

}  // namespace

AxisOrder order_axis(const SweepRecording& recording, const PipelineConfig& cfg) {
    AxisOrder out;
    std::vector<RankedDrone> ranked = analyze_recording(recording, cfg, out);
    std::sort(ranked.begin(), ranked.end(), [](const RankedDrone& a, const RankedDrone& b) {
        const TroughPoint& ta = a.analysis.trough;
        const TroughPoint& tb = b.analysis.trough;
        if (ta.t != tb.t) return ta.t < tb.t;
        if (ta.value != tb.value) return ta.value < tb.value;
        return a.drone_id < b.drone_id;
    });
    for (const RankedDrone& r : ranked) out.ranking.push_back(r.drone_id);
    return out;
}

AxisOrder order_by_trough_depth(const SweepRecording& recording, const PipelineConfig& cfg) {
    AxisOrder out;
    out.depth_based = true;
    out.depth_confound_warning = true;  // depth conflates lateral offset with height
    std::vector<RankedDrone> ranked = analyze_recording(recording, cfg, out);
    std::sort(ranked.begin(), ranked.end(), [](const RankedDrone& a, const RankedDrone& b) {
        if (a.analysis.depth != b.analysis.depth) return a.analysis.depth < b.analysis.depth;
        return a.drone_id < b.drone_id;
    });
    for (const RankedDrone& r : ranked) out.ranking.push_back(r.drone_id);
    return out;
}

LocateResult locate_swarm(const SweepRecording& rec_x, const SweepRecording& rec_y,
                          const SweepRecording& rec_z, const PipelineConfig& cfg) {
    const SweepRecording* recs[3] = {&rec_x, &rec_y, &rec_z};
    for (int a = 0; a < 3; ++a) {
        if (recs[a]->axis != static_cast<Axis>(a)) {
            throw InconsistentRecordingsError("locate_swarm: recording " + std::to_string(a) +
                                              " covers axis " + to_string(recs[a]->axis) +
                                              ", expected " +
                                              to_string(static_cast<Axis>(a)));
        }
    }

    std::set<std::string> ids;
    for (const DroneInfo& d : rec_x.drones) ids.insert(d.drone_id);
    for (const SweepRecording* rec : {&rec_y, &rec_z}) {
        std::set<std::string> other;
        for (const DroneInfo& d : rec->drones) other.insert(d.drone_id);
        if (other != ids) {
            throw InconsistentRecordingsError(
                "locate_swarm: recordings cover different drone sets");
        }
    }

    LocateResult result;
    for (int a = 0; a < 3; ++a) {
        result.orders[a] = order_axis(*recs[a], cfg);
        for (const TagFailure& f : result.orders[a].failures) {
            TagFailure annotated = f;
            annotated.reason = to_string(static_cast<Axis>(a)) + "-sweep: " + f.reason;
            result.failures.push_back(std::move(annotated));
        }
    }

    // A drone enters the geometry only if every axis ranked it; ranks are
    // positions within the ranking restricted to those drones, so one failed
    // drone does not shift anyone else's rank.
    std::set<std::string> complete = ids;
    for (const AxisOrder& order : result.orders) {
        std::set<std::string> present(order.ranking.begin(), order.ranking.end());
        std::set<std::string> kept;
        std::set_intersection(complete.begin(), complete.end(), present.begin(), present.end(),
                              std::inserter(kept, kept.begin()));
        complete = std::move(kept);
    }
    for (const std::string& id : complete) result.geometry.ranks[id] = {0, 0, 0};
    for (int a = 0; a < 3; ++a) {
        int rank = 0;
        for (const std::string& id : result.orders[a].ranking) {
            if (complete.count(id)) {
                result.geometry.ranks[id][a] = rank++;
            }
        }
    }
    return result;
}

}  // namespace phaserank
