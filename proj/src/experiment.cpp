#include "phaserank/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "phaserank/errors.hpp"
#include "phaserank/rng.hpp"

namespace phaserank {

void ExperimentConfig::validate() const {
    if (formation.empty()) {
        throw ConfigError("experiment: formation must contain at least one drone");
    }
    std::set<std::string> drone_ids, tag_ids;
    for (const DroneSpec& d : formation) {
        if (d.drone_id.empty() || d.tag_id.empty()) {
            throw ConfigError("experiment: drone and tag ids must be non-empty");
        }
        if (!drone_ids.insert(d.drone_id).second) {
            throw ConfigError("experiment: duplicate drone id " + d.drone_id);
        }
        if (!tag_ids.insert(d.tag_id).second) {
            throw ConfigError("experiment: duplicate tag id " + d.tag_id);
        }
    }
    reader.validate();
    pipeline.validate();
    if (!(speed > 0.0)) throw ConfigError("experiment: speed must be > 0");
    if (!(margin > 0.0)) throw ConfigError("experiment: margin must be > 0");
    if (axes.empty()) throw ConfigError("experiment: at least one sweep axis required");
    if (trials < 1) throw ConfigError("experiment: trials must be >= 1");
    if (!seed_set) throw ConfigError("experiment: seed is mandatory");
    if (!(noise.phase_sigma >= 0.0)) throw ConfigError("experiment: phase_sigma must be >= 0");
    if (!(noise.read_drop_prob >= 0.0 && noise.read_drop_prob < 1.0)) {
        throw ConfigError("experiment: read_drop_prob must be in [0, 1)");
    }
    if (!(noise.rotation_prob >= 0.0 && noise.rotation_prob <= 1.0)) {
        throw ConfigError("experiment: rotation_prob must be in [0, 1]");
    }
    for (double s : sigma_grid) {
        if (!(s >= 0.0)) throw ConfigError("experiment: sigma_grid entries must be >= 0");
    }
    for (double p : drop_grid) {
        if (!(p >= 0.0 && p < 1.0)) throw ConfigError("experiment: drop_grid entries in [0, 1)");
    }
    for (double v : speed_grid) {
        if (!(v > 0.0)) throw ConfigError("experiment: speed_grid entries must be > 0");
    }
}

std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg) {
    const std::vector<double> sigmas =
        cfg.sigma_grid.empty() ? std::vector<double>{cfg.noise.phase_sigma} : cfg.sigma_grid;
    const std::vector<double> drops =
        cfg.drop_grid.empty() ? std::vector<double>{cfg.noise.read_drop_prob} : cfg.drop_grid;
    const std::vector<double> speeds =
        cfg.speed_grid.empty() ? std::vector<double>{cfg.speed} : cfg.speed_grid;

    std::vector<GridPoint> grid;
    for (double v : speeds) {
        for (double s : sigmas) {
            for (double p : drops) {
                GridPoint point;
                point.noise = cfg.noise;
                point.noise.phase_sigma = s;
                point.noise.read_drop_prob = p;
                point.speed = v;
                grid.push_back(point);
            }
        }
    }
    return grid;
}

std::uint64_t trial_seed(std::uint64_t master, std::size_t grid_index, std::size_t trial_index) {
    return mix_seed(mix_seed(master, 0x67726964ULL + grid_index), trial_index);
}

SweepSet simulate_sweep_set(const ExperimentConfig& cfg, const GridPoint& point,
                            std::uint64_t seed) {
    Rng rng(mix_seed(seed, fnv1a64("trial-draws")));

    // Per-trial tag phase offsets; formation order is the draw order, so the
    // stream is fixed by the config.
    std::vector<DroneSpec> formation = cfg.formation;
    if (cfg.draw_phase_offsets) {
        for (DroneSpec& d : formation) d.phase_offset = rng.uniform() * kTwoPi;
    }

    const double wavelength = cfg.reader.wavelength();
    SweepRecording recs[3];
    for (int a = 0; a < 3; ++a) {
        const Axis axis = static_cast<Axis>(a);
        const SweepPlan plan = plan_axis_sweep(formation, axis, point.speed, cfg.margin);

        NoiseModel noise;
        noise.phase_sigma = point.noise.phase_sigma;
        noise.read_drop_prob = point.noise.read_drop_prob;
        noise.seed = mix_seed(seed, 0x73776565ULL + static_cast<std::uint64_t>(a));
        for (const DroneSpec& d : plan.drones) {
            if (rng.uniform() < point.noise.rotation_prob) {
                const double time = rng.uniform() * plan.duration;
                const double sign = rng.uniform() < 0.5 ? 1.0 : -1.0;
                noise.rotation_events.push_back({d.tag_id, time, sign * point.noise.rotation_step});
            }
        }

        const auto trajectories =
            make_axis_sweep(plan.drones, axis, point.speed, plan.duration, wavelength);
        recs[a] = simulate_recording(trajectories, cfg.reader, noise);
    }
    return SweepSet{std::move(recs[0]), std::move(recs[1]), std::move(recs[2])};
}

TrialResult run_trial(const ExperimentConfig& cfg, const GridPoint& point, std::uint64_t seed) {
    const SweepSet sweeps = simulate_sweep_set(cfg, point, seed);

    PipelineConfig pipeline = cfg.pipeline;
    // No injected rotation means nothing to screen out; the step detector is
    // tuned for low-speed passes and would misread fast ramps as steps.
    if (point.noise.rotation_prob == 0.0) pipeline.rotation_screening = false;

    const LocateResult located = locate_swarm(sweeps.x, sweeps.y, sweeps.z, pipeline);

    TrialResult result;
    result.seed = seed;
    const SweepRecording* recs[3] = {&sweeps.x, &sweeps.y, &sweeps.z};
    for (int a = 0; a < 3; ++a) {
        result.per_axis_accuracy[a] =
            pairwise_accuracy(located.orders[a], recs[a]->drones, static_cast<Axis>(a));
    }
    result.geometry_accuracy =
        geometry_accuracy(located.geometry, sweeps.x.drones, sweeps.y.drones, sweeps.z.drones);
    result.failures = located.failures;
    result.failed_tag_sweeps = located.failures.size();
    return result;
}

namespace {

MetricStats summarize(const std::vector<double>& values) {
    MetricStats stats;
    if (values.empty()) return stats;
    double sum = 0.0;
    for (double v : values) sum += v;
    stats.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
        stats.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return stats;
}

}  // namespace

AggregateReport run_monte_carlo(const ExperimentConfig& cfg) {
    cfg.validate();

    const std::vector<GridPoint> grid = expand_grid(cfg);
    const std::size_t trials = static_cast<std::size_t>(cfg.trials);
    unsigned jobs = cfg.jobs > 0 ? static_cast<unsigned>(cfg.jobs)
                                 : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(trials));

    AggregateReport report;
    report.seed = cfg.seed;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        std::vector<TrialResult> results(trials);
        std::atomic<std::size_t> next{0};
        std::mutex error_mutex;
        std::exception_ptr first_error;

        auto worker = [&]() {
            while (true) {
                const std::size_t k = next.fetch_add(1);
                if (k >= trials) break;
                try {
                    results[k] = run_trial(cfg, grid[g], trial_seed(cfg.seed, g, k));
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    break;
                }
            }
        };

        if (jobs <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(jobs);
            for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker);
            for (std::thread& th : pool) th.join();
        }
        if (first_error) std::rethrow_exception(first_error);

        GridPointReport point_report;
        point_report.point = grid[g];
        point_report.trials = static_cast<int>(trials);
        std::vector<double> axis_vals[3], mean_vals, geo_vals;
        std::size_t failed = 0;
        for (const TrialResult& r : results) {
            double axis_sum = 0.0;
            for (int a = 0; a < 3; ++a) {
                axis_vals[a].push_back(r.per_axis_accuracy[a]);
                axis_sum += r.per_axis_accuracy[a];
            }
            mean_vals.push_back(axis_sum / 3.0);
            geo_vals.push_back(r.geometry_accuracy);
            failed += r.failed_tag_sweeps;
        }
        for (int a = 0; a < 3; ++a) point_report.per_axis[a] = summarize(axis_vals[a]);
        point_report.pairwise_mean = summarize(mean_vals);
        point_report.geometry = summarize(geo_vals);
        point_report.failure_rate =
            static_cast<double>(failed) /
            static_cast<double>(trials * cfg.formation.size() * 3);
        point_report.trial_results = std::move(results);
        report.points.push_back(std::move(point_report));
    }
    return report;
}

}  // namespace phaserank
