#pragma once

// Monte-Carlo experiment harness: seeded trials over a noise/speed grid,
// deterministic under the master seed for any worker count.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "phaserank/locate.hpp"
#include "phaserank/metrics.hpp"
#include "phaserank/simulator.hpp"
#include "phaserank/trajectory.hpp"

namespace phaserank {

struct NoisePoint {
    double phase_sigma = 0.0;
    double read_drop_prob = 0.0;
    double rotation_prob = 0.0;  // per tag per sweep
    double rotation_step = 3.141592653589793;  // magnitude; sign drawn per event

    friend bool operator==(const NoisePoint&, const NoisePoint&) = default;
};

struct ExperimentConfig {
    std::vector<DroneSpec> formation;  // formation offsets; ids must be unique
    ReaderConfig reader;
    double speed = 0.15;   // m/s
    double margin = 0.5;   // meters of travel beyond the first/last crossing
    std::vector<Axis> axes{Axis::X, Axis::Y, Axis::Z};
    PipelineConfig pipeline;
    NoisePoint noise;

    // Optional sweep lists; empty means "just the base value".
    std::vector<double> sigma_grid;
    std::vector<double> drop_grid;
    std::vector<double> speed_grid;

    int trials = 1;
    std::uint64_t seed = 0;
    bool seed_set = false;  // seed is mandatory; there is no wall-clock default
    bool draw_phase_offsets = true;  // per-trial uniform tag offsets
    int jobs = 0;  // 0 = hardware concurrency

    void validate() const;
};

// One grid cell of the experiment.
struct GridPoint {
    NoisePoint noise;
    double speed = 0.0;
};

struct TrialResult {
    std::uint64_t seed = 0;
    std::array<double, 3> per_axis_accuracy{0.0, 0.0, 0.0};
    double geometry_accuracy = 0.0;
    std::size_t failed_tag_sweeps = 0;
    std::vector<TagFailure> failures;
};

struct MetricStats {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation
};

struct GridPointReport {
    GridPoint point;
    int trials = 0;
    std::array<MetricStats, 3> per_axis;  // x, y, z pairwise accuracy
    MetricStats pairwise_mean;            // per-trial mean over axes
    MetricStats geometry;
    double failure_rate = 0.0;  // failed tag-sweeps / (tags * sweeps)
    std::vector<TrialResult> trial_results;
};

struct AggregateReport {
    std::uint64_t seed = 0;
    std::vector<GridPointReport> points;
};

// The three per-axis recordings of one simulated trial.
struct SweepSet {
    SweepRecording x, y, z;
};

// Simulates one trial's sweeps with everything (phase offsets, drop pattern,
// rotation events) drawn from streams derived from `trial_seed`.
SweepSet simulate_sweep_set(const ExperimentConfig& cfg, const GridPoint& point,
                            std::uint64_t trial_seed);

// Runs simulate -> locate -> score for one seeded trial.
TrialResult run_trial(const ExperimentConfig& cfg, const GridPoint& point,
                      std::uint64_t trial_seed);

// Expands the grid (cartesian product of the sweep lists, or just the base
// noise point) and runs `cfg.trials` seeded trials per cell, in parallel up
// to `cfg.jobs` workers. Aggregation order is fixed, so the report is
// identical for any worker count.
AggregateReport run_monte_carlo(const ExperimentConfig& cfg);

std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg);

// Seed for (grid point g, trial k) under master seed s.
std::uint64_t trial_seed(std::uint64_t master, std::size_t grid_index, std::size_t trial_index);

}  // namespace phaserank
