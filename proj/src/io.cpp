#include "phaserank/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "phaserank/errors.hpp"

namespace phaserank {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string format_double_shortest(double value) {
    char buffer[40];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

namespace {

std::string vec3_json(const Vec3& v) {
    return "[" + format_double(v.x) + "," + format_double(v.y) + "," + format_double(v.z) + "]";
}

Vec3 vec3_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) {
        throw IoError("expected a 3-element array for a point");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

std::string escape_json_string(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace

std::string recording_to_jsonl(const SweepRecording& recording) {
    recording.validate();
    std::ostringstream out;

    out << "{\"axis\":\"" << to_string(recording.axis) << "\""
        << ",\"reader_position\":" << vec3_json(recording.reader.position)
        << ",\"frequency_hz\":" << format_double(recording.reader.frequency)
        << ",\"rounds_per_second\":" << format_double(recording.reader.rounds_per_second)
        << ",\"allow_out_of_band\":" << (recording.reader.allow_out_of_band ? "true" : "false")
        << ",\"speed_mps\":" << format_double(recording.speed)
        << ",\"duration_s\":" << format_double(recording.duration) << ",\"drones\":[";
    for (std::size_t i = 0; i < recording.drones.size(); ++i) {
        const DroneInfo& d = recording.drones[i];
        if (i) out << ",";
        out << "{\"drone\":\"" << escape_json_string(d.drone_id) << "\",\"tag\":\""
            << escape_json_string(d.tag_id) << "\",\"start\":" << vec3_json(d.start) << "}";
    }
    out << "]}\n";

    // Interleave samples by round, then tag, like a reader's stream.
    struct Cursor {
        const TagTrace* trace;
        std::size_t pos = 0;
    };
    std::vector<Cursor> cursors;
    for (const auto& [tag, trace] : recording.traces) cursors.push_back({&trace, 0});
    while (true) {
        Cursor* lowest = nullptr;
        for (Cursor& c : cursors) {
            if (c.pos >= c.trace->samples.size()) continue;
            if (!lowest ||
                c.trace->samples[c.pos].round < lowest->trace->samples[lowest->pos].round ||
                (c.trace->samples[c.pos].round == lowest->trace->samples[lowest->pos].round &&
                 c.trace->tag_id < lowest->trace->tag_id)) {
                lowest = &c;
            }
        }
        if (!lowest) break;
        const PhaseSample& s = lowest->trace->samples[lowest->pos];
        out << "{\"round\":" << s.round << ",\"t\":" << format_double(s.t) << ",\"tag\":\""
            << escape_json_string(lowest->trace->tag_id)
            << "\",\"phase\":" << format_double(s.phase) << "}\n";
        ++lowest->pos;
    }
    return out.str();
}

SweepRecording recording_from_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    SweepRecording rec;
    bool header_seen = false;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw IoError("recording line " + std::to_string(line_no) + ": " + e.what());
        }
        try {
            if (!header_seen) {
                rec.axis = axis_from_string(j.at("axis").get<std::string>());
                rec.reader.position = vec3_from_json(j.at("reader_position"));
                rec.reader.frequency = j.at("frequency_hz").get<double>();
                rec.reader.rounds_per_second = j.at("rounds_per_second").get<double>();
                rec.reader.allow_out_of_band = j.at("allow_out_of_band").get<bool>();
                rec.speed = j.at("speed_mps").get<double>();
                rec.duration = j.at("duration_s").get<double>();
                for (const json& dj : j.at("drones")) {
                    DroneInfo d;
                    d.drone_id = dj.at("drone").get<std::string>();
                    d.tag_id = dj.at("tag").get<std::string>();
                    d.start = vec3_from_json(dj.at("start"));
                    rec.drones.push_back(std::move(d));
                    rec.traces.emplace(rec.drones.back().tag_id,
                                       TagTrace{rec.drones.back().tag_id, {}});
                }
                header_seen = true;
                continue;
            }
            const std::string tag = j.at("tag").get<std::string>();
            const auto it = rec.traces.find(tag);
            if (it == rec.traces.end()) {
                throw IoError("recording line " + std::to_string(line_no) +
                              ": sample for unknown tag " + tag);
            }
            it->second.samples.push_back({j.at("round").get<std::int64_t>(),
                                          j.at("t").get<double>(),
                                          j.at("phase").get<double>()});
        } catch (const json::exception& e) {
            throw IoError("recording line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!header_seen) throw IoError("recording: missing header line");
    // Files are not required to be round-sorted; rebuild each trace through
    // the canonical assembly (sort + duplicate-round collapse). Tags that were
    // never read stay as empty traces.
    for (auto& [tag, trace] : rec.traces) {
        if (trace.empty()) continue;
        std::vector<TaggedSample> samples;
        samples.reserve(trace.size());
        for (const PhaseSample& s : trace.samples) samples.push_back({tag, s});
        trace = assemble_trace(samples, tag);
    }
    try {
        rec.validate();
    } catch (const InvalidParameterError& e) {
        throw IoError(std::string("recording: ") + e.what());
    }
    return rec;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("failed writing " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void save_recording(const SweepRecording& recording, const std::string& path) {
    write_text_file(path, recording_to_jsonl(recording));
}

SweepRecording load_recording(const std::string& path) {
    return recording_from_jsonl(read_text_file(path));
}

namespace {

json trough_to_json(const TroughPoint& tp) {
    return json{{"index", tp.index}, {"t", tp.t},        {"value", tp.value},
                {"boundary", tp.boundary}, {"tied", tp.tied}};
}

json axis_order_to_json(const AxisOrder& order) {
    json troughs = json::object();
    for (const auto& [drone, tp] : order.trough_points) troughs[drone] = trough_to_json(tp);
    json flags = json::object();
    for (const auto& [drone, f] : order.flags) {
        flags[drone] = json{{"boundary_trough", f.boundary_trough},
                            {"trough_tie", f.trough_tie},
                            {"rotation_flagged", f.rotation_flagged},
                            {"rotation_overlap", f.rotation_overlap}};
    }
    json failures = json::array();
    for (const TagFailure& f : order.failures) {
        failures.push_back(json{{"drone", f.drone_id}, {"tag", f.tag_id}, {"reason", f.reason}});
    }
    return json{{"ranking", order.ranking},
                {"troughs", troughs},
                {"flags", flags},
                {"failures", failures}};
}

}  // namespace

std::string locate_report_to_json(const LocateResult& result) {
    json ranks = json::object();
    for (const auto& [drone, triple] : result.geometry.ranks) {
        ranks[drone] = json{{"x", triple[0]}, {"y", triple[1]}, {"z", triple[2]}};
    }
    json failures = json::array();
    for (const TagFailure& f : result.failures) {
        failures.push_back(json{{"drone", f.drone_id}, {"tag", f.tag_id}, {"reason", f.reason}});
    }
    const json doc = {{"ranks", ranks},
                      {"partial", result.partial()},
                      {"failures", failures},
                      {"diagnostics",
                       {{"x", axis_order_to_json(result.orders[0])},
                        {"y", axis_order_to_json(result.orders[1])},
                        {"z", axis_order_to_json(result.orders[2])}}}};
    return doc.dump(2) + "\n";
}

namespace {

json stats_to_json(const MetricStats& stats) {
    return json{{"mean", stats.mean}, {"stddev", stats.stddev}};
}

}  // namespace

std::string aggregate_report_to_json(const AggregateReport& report) {
    json points = json::array();
    for (const GridPointReport& p : report.points) {
        json trials = json::array();
        for (const TrialResult& t : p.trial_results) {
            trials.push_back(json{{"seed", t.seed},
                                  {"pairwise_x", t.per_axis_accuracy[0]},
                                  {"pairwise_y", t.per_axis_accuracy[1]},
                                  {"pairwise_z", t.per_axis_accuracy[2]},
                                  {"geometry", t.geometry_accuracy},
                                  {"failed_tag_sweeps", t.failed_tag_sweeps}});
        }
        points.push_back(json{{"phase_sigma", p.point.noise.phase_sigma},
                              {"read_drop_prob", p.point.noise.read_drop_prob},
                              {"rotation_prob", p.point.noise.rotation_prob},
                              {"speed_mps", p.point.speed},
                              {"trials", p.trials},
                              {"pairwise_x", stats_to_json(p.per_axis[0])},
                              {"pairwise_y", stats_to_json(p.per_axis[1])},
                              {"pairwise_z", stats_to_json(p.per_axis[2])},
                              {"pairwise_mean", stats_to_json(p.pairwise_mean)},
                              {"geometry", stats_to_json(p.geometry)},
                              {"failure_rate", p.failure_rate},
                              {"trial_results", trials}});
    }
    const json doc = {{"seed", report.seed}, {"points", points}};
    return doc.dump(2) + "\n";
}

std::string aggregate_report_to_csv(const AggregateReport& report) {
    std::ostringstream out;
    out << "phase_sigma,read_drop_prob,rotation_prob,speed_mps,metric,mean,stddev,trials\n";
    for (const GridPointReport& p : report.points) {
        const auto row = [&](const std::string& metric, const MetricStats& stats) {
            out << format_double_shortest(p.point.noise.phase_sigma) << ","
                << format_double_shortest(p.point.noise.read_drop_prob) << ","
                << format_double_shortest(p.point.noise.rotation_prob) << ","
                << format_double_shortest(p.point.speed) << "," << metric << ","
                << format_double_shortest(stats.mean) << ","
                << format_double_shortest(stats.stddev) << "," << p.trials << "\n";
        };
        row("pairwise_x", p.per_axis[0]);
        row("pairwise_y", p.per_axis[1]);
        row("pairwise_z", p.per_axis[2]);
        row("pairwise_mean", p.pairwise_mean);
        row("geometry", p.geometry);
        row("failure_rate", MetricStats{p.failure_rate, 0.0});
    }
    return out.str();
}

namespace {

double speed_from_json(const json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "low") return 0.15;
        if (s == "medium") return 1.0;
        if (s == "high") return 2.0;
        throw ConfigError("config: unknown speed preset '" + s +
                          "', expected low, medium or high");
    }
    if (j.is_number()) {
        const double v = j.get<double>();
        if (!(v > 0.0)) throw ConfigError("config: speed must be > 0");
        return v;
    }
    throw ConfigError("config: speed must be a number or a preset name");
}

}  // namespace

ExperimentConfig experiment_config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }

    ExperimentConfig cfg;
    try {
        if (!j.contains("formation") || !j["formation"].is_array()) {
            throw ConfigError("config: 'formation' array is required");
        }
        for (const json& dj : j["formation"]) {
            DroneSpec d;
            d.drone_id = dj.at("drone").get<std::string>();
            d.tag_id = dj.contains("tag") ? dj["tag"].get<std::string>() : "tag-" + d.drone_id;
            d.position = vec3_from_json(dj.at("offset"));
            if (dj.contains("phase_offset")) d.phase_offset = dj["phase_offset"].get<double>();
            cfg.formation.push_back(std::move(d));
        }

        if (j.contains("reader")) {
            const json& r = j["reader"];
            if (r.contains("position")) cfg.reader.position = vec3_from_json(r["position"]);
            if (r.contains("frequency_hz")) cfg.reader.frequency = r["frequency_hz"].get<double>();
            if (r.contains("rounds_per_second")) {
                cfg.reader.rounds_per_second = r["rounds_per_second"].get<double>();
            }
            if (r.contains("allow_out_of_band")) {
                cfg.reader.allow_out_of_band = r["allow_out_of_band"].get<bool>();
            }
        }

        if (j.contains("speed")) cfg.speed = speed_from_json(j["speed"]);
        if (j.contains("margin_m")) cfg.margin = j["margin_m"].get<double>();
        if (j.contains("axes")) {
            cfg.axes.clear();
            for (const json& a : j["axes"]) {
                cfg.axes.push_back(axis_from_string(a.get<std::string>()));
            }
        }

        if (j.contains("noise")) {
            const json& n = j["noise"];
            if (n.contains("phase_sigma")) cfg.noise.phase_sigma = n["phase_sigma"].get<double>();
            if (n.contains("read_drop_prob")) {
                cfg.noise.read_drop_prob = n["read_drop_prob"].get<double>();
            }
            if (n.contains("rotation_prob")) {
                cfg.noise.rotation_prob = n["rotation_prob"].get<double>();
            }
            if (n.contains("rotation_step")) {
                cfg.noise.rotation_step = n["rotation_step"].get<double>();
            }
        }

        if (j.contains("pipeline")) {
            const json& p = j["pipeline"];
            if (p.contains("filter_window")) cfg.pipeline.filter.window = p["filter_window"].get<int>();
            if (p.contains("filter_polyorder")) {
                cfg.pipeline.filter.polyorder = p["filter_polyorder"].get<int>();
            }
            if (p.contains("guard")) cfg.pipeline.guard = p["guard"].get<int>();
            if (p.contains("rotation_threshold")) {
                cfg.pipeline.rotation_threshold = p["rotation_threshold"].get<double>();
            }
            if (p.contains("rotation_sustain")) {
                cfg.pipeline.rotation_sustain = p["rotation_sustain"].get<int>();
            }
            if (p.contains("rotation_screening")) {
                cfg.pipeline.rotation_screening = p["rotation_screening"].get<bool>();
            }
            if (p.contains("exclude_rotation_overlap")) {
                cfg.pipeline.exclude_rotation_overlap = p["exclude_rotation_overlap"].get<bool>();
            }
        }

        if (j.contains("grid")) {
            const json& g = j["grid"];
            if (g.contains("phase_sigma")) {
                cfg.sigma_grid = g["phase_sigma"].get<std::vector<double>>();
            }
            if (g.contains("read_drop_prob")) {
                cfg.drop_grid = g["read_drop_prob"].get<std::vector<double>>();
            }
            if (g.contains("speed")) {
                cfg.speed_grid.clear();
                for (const json& s : g["speed"]) cfg.speed_grid.push_back(speed_from_json(s));
            }
        }

        if (j.contains("trials")) cfg.trials = j["trials"].get<int>();
        if (j.contains("seed")) {
            cfg.seed = j["seed"].get<std::uint64_t>();
            cfg.seed_set = true;
        }
        if (j.contains("draw_phase_offsets")) {
            cfg.draw_phase_offsets = j["draw_phase_offsets"].get<bool>();
        }
        if (j.contains("jobs")) cfg.jobs = j["jobs"].get<int>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const InvalidParameterError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const IoError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    try {
        cfg.validate();
    } catch (const InvalidParameterError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    return experiment_config_from_json(read_text_file(path));
}

}  // namespace phaserank
