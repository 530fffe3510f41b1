// End-to-end checks of the command-line tool. The binary path comes from the
// PHASERANK_CLI environment variable (set by ctest), configs from
// PHASERANK_CONFIG_DIR.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "phaserank/io.hpp"

namespace fs = std::filesystem;
using namespace phaserank;

namespace {

std::string cli_path() {
    const char* env = std::getenv("PHASERANK_CLI");
    REQUIRE_MESSAGE(env != nullptr, "PHASERANK_CLI not set");
    return env;
}

std::string config_dir() {
    const char* env = std::getenv("PHASERANK_CONFIG_DIR");
    REQUIRE_MESSAGE(env != nullptr, "PHASERANK_CONFIG_DIR not set");
    return env;
}

int run(const std::string& args) {
    const std::string command = cli_path() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("phaserank_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
    static int& counter() {
        static int c = 0;
        return c;
    }
    std::string str(const std::string& name = "") const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("simulate writes three parseable recordings and is byte-deterministic") {
    TempDir a, b;
    const std::string cfg = config_dir() + "/smoke.json";
    REQUIRE(run("simulate --config " + cfg + " --out " + a.str()) == 0);
    REQUIRE(run("simulate --config " + cfg + " --out " + b.str()) == 0);
    for (const std::string axis : {"x", "y", "z"}) {
        const std::string name = "sweep_" + axis + ".jsonl";
        const std::string text_a = read_text_file(a.str(name));
        CHECK(text_a == read_text_file(b.str(name)));
        CHECK_NOTHROW((void)recording_from_jsonl(text_a));
    }
}

TEST_CASE("locate reproduces simulated ground truth") {
    TempDir dir;
    const std::string cfg = config_dir() + "/default.json";
    REQUIRE(run("simulate --config " + cfg + " --out " + dir.str()) == 0);
    REQUIRE(run("locate " + dir.str("sweep_x.jsonl") + " " + dir.str("sweep_y.jsonl") + " " +
                dir.str("sweep_z.jsonl") + " --out " + dir.str("report.json")) == 0);
    const std::string report = read_text_file(dir.str("report.json"));
    CHECK(report.find("\"partial\": false") != std::string::npos);
    // Formation is staggered; d4 leads on x, d2 on y, d1 on z.
    CHECK(report.find("\"ranks\"") != std::string::npos);
}

TEST_CASE("locate reports a partial result when one tag is never read") {
    TempDir dir;
    const std::string cfg = config_dir() + "/smoke.json";
    REQUIRE(run("simulate --config " + cfg + " --out " + dir.str()) == 0);

    // Drop every sample of tag t1 from the x recording.
    SweepRecording rec = load_recording(dir.str("sweep_x.jsonl"));
    rec.traces.at("t1").samples.clear();
    save_recording(rec, dir.str("sweep_x.jsonl"));

    const int code = run("locate " + dir.str("sweep_x.jsonl") + " " + dir.str("sweep_y.jsonl") +
                         " " + dir.str("sweep_z.jsonl") + " --out " + dir.str("report.json"));
    CHECK(code == 1);
    const std::string report = read_text_file(dir.str("report.json"));
    CHECK(report.find("\"partial\": true") != std::string::npos);
    CHECK(report.find("t1") != std::string::npos);
}

TEST_CASE("evaluate is deterministic and fast on the smoke config") {
    TempDir a, b;
    const std::string cfg = config_dir() + "/smoke.json";
    const auto start = std::chrono::steady_clock::now();
    REQUIRE(run("evaluate --config " + cfg + " --out " + a.str()) == 0);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(seconds < 5.0);

    REQUIRE(run("evaluate --config " + cfg + " --out " + b.str()) == 0);
    CHECK(read_text_file(a.str("aggregate.csv")) == read_text_file(b.str("aggregate.csv")));
    CHECK(read_text_file(a.str("aggregate.json")) == read_text_file(b.str("aggregate.json")));
}

TEST_CASE("seed override changes the output, jobs does not") {
    TempDir base, seeded, jobs;
    const std::string cfg = config_dir() + "/smoke.json";
    REQUIRE(run("evaluate --config " + cfg + " --out " + base.str()) == 0);
    REQUIRE(run("evaluate --config " + cfg + " --seed 555 --out " + seeded.str()) == 0);
    CHECK(read_text_file(base.str("aggregate.json")) !=
          read_text_file(seeded.str("aggregate.json")));
    REQUIRE(run("evaluate --config " + cfg + " --jobs 1 --out " + jobs.str()) == 0);
    CHECK(read_text_file(base.str("aggregate.json")) ==
          read_text_file(jobs.str("aggregate.json")));
}

TEST_CASE("config errors exit with code 2") {
    TempDir dir;
    // Missing seed.
    write_text_file(dir.str("noseed.json"),
                    R"({"formation": [{"drone": "d0", "offset": [0, 1.5, 1]}], "trials": 1})");
    CHECK(run("simulate --config " + dir.str("noseed.json") + " --out " + dir.str()) == 2);

    // Invalid axis string.
    write_text_file(dir.str("badaxis.json"),
                    R"({"formation": [{"drone": "d0", "offset": [0, 1.5, 1]}],)"
                    R"( "axes": ["sideways"], "seed": 3})");
    CHECK(run("simulate --config " + dir.str("badaxis.json") + " --out " + dir.str()) == 2);

    // trials = 0.
    write_text_file(dir.str("notrials.json"),
                    R"({"formation": [{"drone": "d0", "offset": [0, 1.5, 1]}],)"
                    R"( "trials": 0, "seed": 3})");
    CHECK(run("evaluate --config " + dir.str("notrials.json") + " --out " + dir.str()) == 2);

    // Unknown subcommand / missing args.
    CHECK(run("frobnicate") == 2);
}

TEST_CASE("I/O errors exit with code 3") {
    TempDir dir;
    CHECK(run("simulate --config /nonexistent/cfg.json --out " + dir.str()) == 3);
    CHECK(run("locate /missing/x.jsonl /missing/y.jsonl /missing/z.jsonl --out " +
              dir.str("r.json")) == 3);
}
