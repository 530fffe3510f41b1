// Batch front-end: simulate sweep recordings, locate a swarm from recorded
// sweeps, and run Monte-Carlo evaluations. Exit codes: 0 success, 1 partial
// result, 2 config error, 3 I/O error.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "phaserank/errors.hpp"
#include "phaserank/experiment.hpp"
#include "phaserank/io.hpp"
#include "phaserank/locate.hpp"

namespace fs = std::filesystem;
using namespace phaserank;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct SeedOverride {
    std::uint64_t value = 0;
    bool set = false;
};

void apply_overrides(ExperimentConfig& cfg, const SeedOverride& seed, int jobs) {
    if (seed.set) {
        cfg.seed = seed.value;
        cfg.seed_set = true;
    }
    if (jobs > 0) cfg.jobs = jobs;
    cfg.validate();
}

int cmd_simulate(const std::string& config_path, const std::string& out_dir,
                 const SeedOverride& seed, int jobs) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    apply_overrides(cfg, seed, jobs);

    // The recordings match trial 0 of an evaluate run over the same config.
    const GridPoint point = expand_grid(cfg)[0];
    const SweepSet sweeps = simulate_sweep_set(cfg, point, trial_seed(cfg.seed, 0, 0));

    const SweepRecording* recs[3] = {&sweeps.x, &sweeps.y, &sweeps.z};
    for (Axis axis : cfg.axes) {
        const fs::path path = fs::path(out_dir) / ("sweep_" + to_string(axis) + ".jsonl");
        save_recording(*recs[static_cast<int>(axis)], path.string());
        std::cout << "wrote " << path.string() << "\n";
    }
    return kExitOk;
}

int cmd_locate(const std::string& rec_x_path, const std::string& rec_y_path,
               const std::string& rec_z_path, const std::string& out_path,
               const PipelineConfig& pipeline) {
    const SweepRecording rec_x = load_recording(rec_x_path);
    const SweepRecording rec_y = load_recording(rec_y_path);
    const SweepRecording rec_z = load_recording(rec_z_path);

    const LocateResult result = locate_swarm(rec_x, rec_y, rec_z, pipeline);
    write_text_file(out_path, locate_report_to_json(result));
    std::cout << "wrote " << out_path << "\n";
    if (result.partial()) {
        for (const TagFailure& f : result.failures) {
            std::cerr << "partial: drone " << f.drone_id << " (tag " << f.tag_id
                      << "): " << f.reason << "\n";
        }
        return kExitPartial;
    }
    return kExitOk;
}

int cmd_evaluate(const std::string& config_path, const std::string& out_dir,
                 const SeedOverride& seed, int jobs) {
    ExperimentConfig cfg = load_experiment_config(config_path);
    apply_overrides(cfg, seed, jobs);

    const AggregateReport report = run_monte_carlo(cfg);
    const fs::path dir(out_dir);
    write_text_file((dir / "aggregate.json").string(), aggregate_report_to_json(report));
    write_text_file((dir / "aggregate.csv").string(), aggregate_report_to_csv(report));
    std::cout << "wrote " << (dir / "aggregate.json").string() << "\n";
    std::cout << "wrote " << (dir / "aggregate.csv").string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RFID phase-trough relative localization toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    SeedOverride seed;
    int jobs = 0;

    auto add_seed_and_jobs = [&](CLI::App* cmd) {
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&seed](std::uint64_t v) { seed = {v, true}; },
            "override the config master seed");
        cmd->add_option("--jobs", jobs, "worker threads (default: all cores)");
    };

    CLI::App* simulate = app.add_subcommand("simulate", "write per-axis sweep recordings");
    simulate->add_option("--config", config_path, "experiment config (JSON)")->required();
    simulate->add_option("--out", out_path, "output directory")->required();
    add_seed_and_jobs(simulate);

    std::string rec_x, rec_y, rec_z;
    PipelineConfig pipeline;
    bool keep_rotation_overlap = false;
    bool no_rotation_screening = false;
    CLI::App* locate = app.add_subcommand("locate", "rank drones from three sweep recordings");
    locate->add_option("rec_x", rec_x, "x-sweep recording")->required();
    locate->add_option("rec_y", rec_y, "y-sweep recording")->required();
    locate->add_option("rec_z", rec_z, "z-sweep recording")->required();
    locate->add_option("--out", out_path, "geometry report path (JSON)")->required();
    locate->add_option("--filter-window", pipeline.filter.window, "Savitzky-Golay window");
    locate->add_option("--filter-polyorder", pipeline.filter.polyorder,
                       "Savitzky-Golay polynomial order");
    locate->add_option("--guard", pipeline.guard, "trough guard window (samples)");
    locate->add_option("--rotation-threshold", pipeline.rotation_threshold,
                       "rotation step threshold (radians)");
    locate->add_option("--rotation-sustain", pipeline.rotation_sustain,
                       "rotation median window (samples)");
    locate->add_flag("--no-rotation-screening", no_rotation_screening,
                     "skip the rotation step detector");
    locate->add_flag("--keep-rotation-overlap", keep_rotation_overlap,
                     "rank troughs overlapped by rotation steps instead of failing them");

    CLI::App* evaluate = app.add_subcommand("evaluate", "run a seeded Monte-Carlo experiment");
    evaluate->add_option("--config", config_path, "experiment config (JSON)")->required();
    evaluate->add_option("--out", out_path, "output directory")->required();
    add_seed_and_jobs(evaluate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(config_path, out_path, seed, jobs);
        if (locate->parsed()) {
            pipeline.rotation_screening = !no_rotation_screening;
            pipeline.exclude_rotation_overlap = !keep_rotation_overlap;
            pipeline.validate();
            return cmd_locate(rec_x, rec_y, rec_z, out_path, pipeline);
        }
        if (evaluate->parsed()) return cmd_evaluate(config_path, out_path, seed, jobs);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const FormationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitConfig;
}
