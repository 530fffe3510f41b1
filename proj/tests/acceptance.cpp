// Acceptance suite: runs every release gate end to end and prints one
// pass/fail line per criterion. Usage:
//
//   acceptance <path-to-cli-binary> <path-to-configs-dir>
//
// Exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "phaserank/errors.hpp"
#include "phaserank/experiment.hpp"
#include "phaserank/io.hpp"
#include "phaserank/locate.hpp"
#include "phaserank/metrics.hpp"
#include "phaserank/phase_model.hpp"
#include "phaserank/pipeline.hpp"
#include "phaserank/rng.hpp"
#include "phaserank/simulator.hpp"
#include "phaserank/trough.hpp"

namespace fs = std::filesystem;
using namespace phaserank;

namespace {

constexpr double kPi = kTwoPi / 2.0;

std::string g_cli;
std::string g_configs;

struct Criterion {
    int id;
    std::string name;
    std::function<void(std::ostringstream&)> body;  // throws on failure
};

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& message) {
    if (!ok) throw Failure(message);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int run_cli(const std::string& args) {
    const std::string command = g_cli + " " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(command.c_str()));
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("phaserank_accept_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    std::string str(const std::string& name = "") const { return (path / name).string(); }
};

std::vector<DroneSpec> default_formation() {
    return {
        {"d0", "t0", {0.00, 1.9, 1.4}, 0.0},
        {"d1", "t1", {0.25, 1.5, 1.8}, 0.0},
        {"d2", "t2", {0.50, 2.3, 1.0}, 0.0},
        {"d3", "t3", {0.75, 1.7, 1.6}, 0.0},
        {"d4", "t4", {1.00, 2.1, 1.2}, 0.0},
    };
}

TagTrace simulate_single_pass(std::uint64_t seed, double sigma, double drop,
                              std::vector<RotationEvent> events = {},
                              double duration = 6.0) {
    DroneTrajectory tr;
    tr.drone_id = "d0";
    tr.tag_id = "t0";
    tr.start = {-0.45, 1.5, 1.0};
    tr.velocity = {0.15, 0.0, 0.0};
    tr.duration = duration;
    NoiseModel noise;
    noise.phase_sigma = sigma;
    noise.read_drop_prob = drop;
    noise.seed = seed;
    noise.rotation_events = std::move(events);
    return simulate_recording({tr}, ReaderConfig{}, noise).traces.at("t0");
}

// ---- criterion bodies ------------------------------------------------------

void phase_model_oracle(std::ostringstream& detail) {
    const long double pi_l = 3.14159265358979323846264338327950288L;
    Rng rng(0xACCE01);
    double worst_rel = 0.0;
    double worst_circle = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double d = 0.05 + rng.uniform() * 4.0;
        const double lambda = 0.28 + rng.uniform() * 0.12;
        const double mu = rng.uniform() * kTwoPi;
        long double want = std::fmod(
            2.0L * pi_l * 2.0L * static_cast<long double>(d) / lambda + mu, 2.0L * pi_l);
        if (want < 0.0L) want += 2.0L * pi_l;
        const double got = ideal_phase(d, lambda, mu);
        const double want_d = static_cast<double>(want);
        // Distance on the circle bounds every sample; the strict relative
        // check applies away from the wrap point, where a phase smaller than
        // its own rounding error makes "relative" meaningless.
        const double circle = std::abs(std::remainder(got - want_d, kTwoPi));
        worst_circle = std::max(worst_circle, circle);
        require(circle <= 1e-12 * kTwoPi, "circle error above 1e-12 turns");
        if (want_d > 1e-2 && want_d < kTwoPi - 1e-2) {
            const double rel =
                std::abs(static_cast<double>(static_cast<long double>(got) - want)) / want_d;
            worst_rel = std::max(worst_rel, rel);
        }
    }
    require(worst_rel <= 1e-12,
            "worst relative error " + std::to_string(worst_rel) + " > 1e-12");

    // Exactly representable half-wavelength multiples must return exactly 0.
    const double dyadic = 0.328125;
    for (int k = 1; k <= 64; ++k) {
        require(ideal_phase(k * (dyadic / 2.0), dyadic, 0.0) == 0.0,
                "wrap case k=" + std::to_string(k) + " not exactly 0");
    }
    const double lambda = kSpeedOfLight / 915e6;
    for (int e = 0; e <= 10; ++e) {
        require(ideal_phase(std::ldexp(lambda / 2.0, e), lambda, 0.0) == 0.0,
                "power-of-two wrap case not exactly 0");
    }
    detail << "worst rel err " << worst_rel;
}

void gradient_check(std::ostringstream& detail) {
    ReaderConfig reader;
    reader.rounds_per_second = 1000.0;
    DroneTrajectory tr;
    tr.drone_id = "d0";
    tr.tag_id = "t0";
    tr.start = {-1.0, 1.5, 0.0};
    tr.velocity = {0.15, 0.0, 0.0};
    tr.duration = 13.4;
    NoiseModel noise;
    noise.seed = 1;

    const TagTrace spliced = splice(simulate_recording({tr}, reader, noise).traces.at("t0"));
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < spliced.size(); ++i) {
        const double t = spliced.samples[i].t;
        if (t < 0.1 || t > tr.duration - 0.1) continue;
        const double fd = (spliced.samples[i + 1].phase - spliced.samples[i - 1].phase) /
                          (spliced.samples[i + 1].t - spliced.samples[i - 1].t);
        const double analytic = analytic_phase_rate(-1.0, 1.5, 0.15, t, reader.wavelength());
        worst = std::max(worst, std::abs(fd - analytic));
    }
    require(worst <= 1e-3, "max |finite difference - analytic| = " + std::to_string(worst));

    // Exact zero at closest approach for exactly-representable inputs.
    require(analytic_phase_rate(-(0.25 * 4.0), 0.7, 0.25, 4.0, 0.3275) == 0.0,
            "rate not exactly 0 at closest approach");
    require(analytic_phase_rate(-(0.15 * 4.0), 1.5, 0.15, 4.0, 0.3275) == 0.0,
            "rate not exactly 0 at closest approach");
    detail << "max FD gap " << worst << " rad/s";
}

void splicing_suite(std::ostringstream& detail) {
    const double sigmas[] = {0.0, 0.1, 0.2, 0.3, 0.5};
    const double drops[] = {0.0, 0.1, 0.3};
    Rng seeds(0xACCE03);
    double worst_diff = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const double sigma = sigmas[trial % 5];
        const double drop = drops[(trial / 5) % 3];
        const TagTrace raw = simulate_single_pass(seeds.next_u64(), sigma, drop);
        const TagTrace spliced = splice(raw);
        require(spliced.size() == raw.size(), "splice changed the trace length");
        require(spliced.samples[0].phase == raw.samples[0].phase,
                "splice changed the first sample");
        for (std::size_t i = 1; i < spliced.size(); ++i) {
            const double diff =
                std::abs(spliced.samples[i].phase - spliced.samples[i - 1].phase);
            worst_diff = std::max(worst_diff, diff);
            require(diff <= kPi + 1e-12, "adjacent difference " + std::to_string(diff) +
                                             " above pi after splicing");
        }
        for (std::size_t i = 0; i < spliced.size(); ++i) {
            const double residual = std::abs(
                std::remainder(spliced.samples[i].phase - raw.samples[i].phase, kTwoPi));
            require(residual <= 1e-9, "mod-2pi consistency violated");
        }
        const TagTrace twice = splice(spliced);
        require(twice.samples == spliced.samples, "splice is not idempotent");
    }
    detail << "10000 traces, max adjacent diff " << worst_diff;
}

void trough_oracle(std::ostringstream& detail) {
    Rng seeds(0xACCE04);
    const FilterConfig filter;
    double worst_ratio = 0.0;
    for (int trial = 0; trial < 10000; ++trial) {
        const bool noisy = trial % 2 == 1;
        TagTrace t = splice(simulate_single_pass(seeds.next_u64(), noisy ? 0.2 : 0.0, 0.05));
        if (noisy) t = savitzky_golay(t, filter);
        TroughSearchStats stats;
        const TroughPoint tp = find_trough_lowest(t, 5, &stats);
        require(tp.index == brute_force_min(t),
                "single-pass index disagrees with the brute-force oracle");
        require(stats.comparisons <= 3 * t.size(), "comparison budget above 3N");
        worst_ratio = std::max(
            worst_ratio, static_cast<double>(stats.comparisons) / static_cast<double>(t.size()));
    }
    detail << "10000 traces, worst comparisons/N = " << worst_ratio;
}

void savitzky_golay_fidelity(std::ostringstream& detail) {
    Rng rng(0xACCE05);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        double c[4];
        for (double& v : c) v = rng.uniform() * 2.0 - 1.0;
        TagTrace in;
        in.tag_id = "poly";
        for (int i = 0; i < 80; ++i) {
            const double x = static_cast<double>(i);
            in.samples.push_back(
                {i, 0.025 * x, c[0] + x * (c[1] + x * (c[2] + x * c[3]))});
        }
        const TagTrace out = savitzky_golay(in, FilterConfig{21, 3});
        for (std::size_t i = 0; i < in.size(); ++i) {
            worst = std::max(worst, std::abs(out.samples[i].phase - in.samples[i].phase));
        }
    }
    require(worst <= 1e-9, "degree-3 polynomial not reproduced: err " + std::to_string(worst));

    // Linearity.
    TagTrace u, v;
    u.tag_id = v.tag_id = "lin";
    for (int i = 0; i < 60; ++i) {
        u.samples.push_back({i, 0.025 * i, rng.uniform() * 5.0});
        v.samples.push_back({i, 0.025 * i, rng.uniform() * 5.0 - 2.5});
    }
    const double a = 2.25, b = -0.75;
    TagTrace combo = u;
    for (int i = 0; i < 60; ++i) {
        combo.samples[i].phase = a * u.samples[i].phase + b * v.samples[i].phase;
    }
    const FilterConfig cfg{15, 3};
    const TagTrace fu = savitzky_golay(u, cfg);
    const TagTrace fv = savitzky_golay(v, cfg);
    const TagTrace fc = savitzky_golay(combo, cfg);
    double worst_lin = 0.0;
    for (int i = 0; i < 60; ++i) {
        worst_lin = std::max(worst_lin,
                             std::abs(fc.samples[i].phase - (a * fu.samples[i].phase +
                                                             b * fv.samples[i].phase)));
    }
    require(worst_lin <= 1e-9, "linearity violated: err " + std::to_string(worst_lin));
    detail << "poly err " << worst << ", linearity err " << worst_lin;
}

void noise_free_end_to_end(std::ostringstream& detail) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.formation = default_formation();
    cfg.trials = 1;
    cfg.seed = 6;
    cfg.seed_set = true;
    cfg.jobs = 1;
    const TrialResult trial = run_trial(cfg, expand_grid(cfg)[0], trial_seed(cfg.seed, 0, 0));
    for (int a = 0; a < 3; ++a) {
        require(trial.per_axis_accuracy[a] == 1.0,
                to_string(static_cast<Axis>(a)) + "-axis pairwise accuracy not exactly 1");
    }
    require(trial.geometry_accuracy == 1.0, "geometry accuracy not exactly 1");
    const double elapsed = seconds_since(start);
    require(elapsed < 1.0, "runtime " + std::to_string(elapsed) + " s >= 1 s");
    detail << "all accuracies exactly 1.0 in " << elapsed << " s";
}

void calibrated_surrogate(std::ostringstream& detail) {
    const auto start = std::chrono::steady_clock::now();
    const ExperimentConfig cfg = load_experiment_config(g_configs + "/calibration.json");
    require(cfg.trials == 100, "calibration config must pin 100 trials");
    require(cfg.noise.rotation_prob > 0.0, "calibration config must inject rotation events");

    const AggregateReport report = run_monte_carlo(cfg);
    const GridPointReport& p = report.points.at(0);
    const double mean = p.pairwise_mean.mean;
    require(std::abs(mean - 0.95) <= 0.03,
            "mean per-axis pairwise accuracy " + std::to_string(mean) +
                " outside 0.95 +- 0.03");
    for (int a = 0; a < 3; ++a) {
        require(std::abs(p.per_axis[a].mean - 0.95) <= 0.03,
                to_string(static_cast<Axis>(a)) + "-axis accuracy " +
                    std::to_string(p.per_axis[a].mean) + " outside 0.95 +- 0.03");
    }
    require(p.geometry.mean >= 0.90,
            "geometry accuracy " + std::to_string(p.geometry.mean) + " < 0.90");
    const double elapsed = seconds_since(start);
    require(elapsed < 60.0, "runtime " + std::to_string(elapsed) + " s >= 60 s");
    detail << "pairwise " << mean << ", geometry " << p.geometry.mean << ", " << elapsed
           << " s (simulation calibration, not a hardware reproduction)";
}

void height_confound_regression(std::ostringstream& detail) {
    // Equal sweep-axis coordinate; "low" is y-closer but flies higher, so its
    // total lateral range is larger: sqrt(1.2^2 + 2^2) > sqrt(1.6^2 + 1^2).
    const std::vector<DroneSpec> formation{{"low", "ta", {0.0, 1.2, 2.0}, 0.0},
                                           {"high", "tb", {0.0, 1.6, 1.0}, 0.0}};
    require(std::hypot(1.2, 2.0) > std::hypot(1.6, 1.0), "fixture geometry broken");

    const auto record = [&](Axis axis) {
        const SweepPlan plan = plan_axis_sweep(formation, axis, 0.15, 0.5);
        ReaderConfig reader;
        NoiseModel noise;
        noise.seed = 8;
        const auto trajectories =
            make_axis_sweep(plan.drones, axis, 0.15, plan.duration, reader.wavelength());
        return simulate_recording(trajectories, reader, noise);
    };
    const SweepRecording rec_x = record(Axis::X);
    const SweepRecording rec_y = record(Axis::Y);
    const SweepRecording rec_z = record(Axis::Z);

    const AxisOrder depth = order_by_trough_depth(rec_x, PipelineConfig{});
    require(depth.ranking.size() == 2, "depth ordering lost a drone");
    require(depth.ranking[0] == "high",
            "depth ordering did not invert the true y order in the confound geometry");

    // Three sweeps recover the y and z orders (x is a designed tie here).
    const LocateResult located = locate_swarm(rec_x, rec_y, rec_z, PipelineConfig{});
    require(located.orders[1].ranking == std::vector<std::string>{"high", "low"},
            "y sweep did not recover the true y order");
    require(located.orders[2].ranking == std::vector<std::string>{"low", "high"},
            "z sweep did not recover the true z order");

    // Sanity: with equal heights the depth route ranks the y-closer drone first.
    const std::vector<DroneSpec> flat{{"near", "tn", {0.0, 1.5, 1.0}, 0.0},
                                      {"far", "tf", {0.0, 1.7, 1.0}, 0.0}};
    const SweepPlan plan = plan_axis_sweep(flat, Axis::X, 0.15, 0.5);
    ReaderConfig reader;
    NoiseModel noise;
    noise.seed = 9;
    const SweepRecording rec_flat = simulate_recording(
        make_axis_sweep(plan.drones, Axis::X, 0.15, plan.duration, reader.wavelength()),
        reader, noise);
    const AxisOrder flat_depth = order_by_trough_depth(rec_flat, PipelineConfig{});
    require(flat_depth.ranking[0] == "near",
            "depth ordering failed in the equal-height geometry");
    detail << "depth route inverted, three sweeps recovered";
}

void rotation_handling(std::ostringstream& detail) {
    // Injected pi step, noise-free: exactly one flagged range covering it.
    const TagTrace stepped =
        splice(simulate_single_pass(0xACCE09, 0.0, 0.0, {{"t0", 2.0, kPi}}));
    const auto ranges = detect_rotation_events(stepped, 1.0, 9);
    require(ranges.size() == 1, "expected exactly one flagged range, got " +
                                    std::to_string(ranges.size()));
    std::size_t step_index = 0;
    while (step_index < stepped.size() && stepped.samples[step_index].t < 2.0) ++step_index;
    require(ranges[0].begin <= step_index && step_index < ranges[0].end,
            "flagged range does not cover the injected step");

    // Noisy detection: the step must still be flagged.
    Rng seeds(0xACCE0A);
    int detected = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const TagTrace t =
            splice(simulate_single_pass(seeds.next_u64(), 0.3, 0.0, {{"t0", 2.0, kPi}}));
        if (!detect_rotation_events(t, 1.0, 9).empty()) ++detected;
    }
    require(detected == 200, "step missed in " + std::to_string(200 - detected) +
                                 " of 200 noisy traces");

    // Clean traces at sigma = 0.3: at least 99% flag-free.
    int flag_free = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const TagTrace t = splice(simulate_single_pass(seeds.next_u64(), 0.3, 0.0));
        if (detect_rotation_events(t, 1.0, 9).empty()) ++flag_free;
    }
    require(flag_free >= 990, "only " + std::to_string(flag_free) +
                                  "/1000 clean traces flag-free (need >= 990)");
    detail << "step flagged, " << flag_free << "/1000 clean traces flag-free";
}

void cli_determinism(std::ostringstream& detail) {
    TempDir sim_a("sim_a"), sim_b("sim_b"), eval_a("eval_a"), eval_b("eval_b");
    const std::string sim_cfg = g_configs + "/default.json";
    require(run_cli("simulate --config " + sim_cfg + " --out " + sim_a.str()) == 0,
            "simulate run 1 failed");
    require(run_cli("simulate --config " + sim_cfg + " --out " + sim_b.str()) == 0,
            "simulate run 2 failed");
    for (const std::string axis : {"x", "y", "z"}) {
        const std::string name = "sweep_" + axis + ".jsonl";
        require(read_text_file(sim_a.str(name)) == read_text_file(sim_b.str(name)),
                name + " differs between identical simulate runs");
    }

    const std::string eval_cfg = g_configs + "/smoke.json";
    require(run_cli("evaluate --config " + eval_cfg + " --out " + eval_a.str()) == 0,
            "evaluate run 1 failed");
    require(run_cli("evaluate --config " + eval_cfg + " --out " + eval_b.str()) == 0,
            "evaluate run 2 failed");
    require(read_text_file(eval_a.str("aggregate.json")) ==
                read_text_file(eval_b.str("aggregate.json")),
            "aggregate.json differs between identical evaluate runs");
    require(read_text_file(eval_a.str("aggregate.csv")) ==
                read_text_file(eval_b.str("aggregate.csv")),
            "aggregate.csv differs between identical evaluate runs");
    detail << "simulate and evaluate outputs byte-identical";
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <cli-binary> <configs-dir>\n";
        return 2;
    }
    g_cli = argv[1];
    g_configs = argv[2];

    const std::vector<Criterion> criteria{
        {1, "phase model oracle", phase_model_oracle},
        {2, "phase changing rate gradient check", gradient_check},
        {3, "splicing suite", splicing_suite},
        {4, "trough oracle equivalence", trough_oracle},
        {5, "Savitzky-Golay fidelity", savitzky_golay_fidelity},
        {6, "noise-free end-to-end", noise_free_end_to_end},
        {7, "calibrated accuracy surrogate", calibrated_surrogate},
        {8, "height confound regression", height_confound_regression},
        {9, "rotation handling", rotation_handling},
        {10, "CLI determinism", cli_determinism},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::ostringstream detail;
        try {
            c.body(detail);
            std::cout << "criterion " << c.id << " (" << c.name << "): PASS";
            if (!detail.str().empty()) std::cout << " - " << detail.str();
            std::cout << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "criterion " << c.id << " (" << c.name << "): FAIL - " << e.what()
                      << "\n";
        }
    }
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
