#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace phaserank {

struct PhaseSample {
    std::int64_t round = 0;  // inventory round index
    double t = 0.0;          // seconds
    double phase = 0.0;      // radians; [0, 2*pi) raw, unbounded once spliced
    friend bool operator==(const PhaseSample&, const PhaseSample&) = default;
};

// Time series of phase readings for one tag.
struct TagTrace {
    std::string tag_id;
    std::vector<PhaseSample> samples;

    std::size_t size() const { return samples.size(); }
    bool empty() const { return samples.empty(); }

    // Raw-trace invariants: rounds and times strictly increasing, phases in
    // [0, 2*pi). Spliced traces only keep the ordering part.
    void validate_raw() const;
    void validate_ordering() const;

    friend bool operator==(const TagTrace&, const TagTrace&) = default;
};

struct TaggedSample {
    std::string tag_id;
    PhaseSample sample;
};

// Collects the samples belonging to `tag_id`, sorts them by round and drops
// duplicate rounds. The sort key is (round, t, phase), so which duplicate
// survives does not depend on input order.
TagTrace assemble_trace(const std::vector<TaggedSample>& samples, const std::string& tag_id);

}  // namespace phaserank
