#include "phaserank/trace.hpp"

#include <algorithm>

#include "phaserank/errors.hpp"
#include "phaserank/phase_model.hpp"

namespace phaserank {

void TagTrace::validate_ordering() const {
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (samples[i].round <= samples[i - 1].round) {
            throw InvalidParameterError("trace " + tag_id + ": rounds not strictly increasing");
        }
        if (samples[i].t <= samples[i - 1].t) {
            throw InvalidParameterError("trace " + tag_id + ": times not strictly increasing");
        }
    }
}

void TagTrace::validate_raw() const {
    validate_ordering();
    for (const PhaseSample& s : samples) {
        if (!(s.phase >= 0.0 && s.phase < kTwoPi)) {
            throw InvalidParameterError("trace " + tag_id + ": raw phase outside [0, 2pi)");
        }
    }
}

TagTrace assemble_trace(const std::vector<TaggedSample>& samples, const std::string& tag_id) {
    TagTrace trace;
    trace.tag_id = tag_id;
    for (const TaggedSample& s : samples) {
        if (s.tag_id == tag_id) trace.samples.push_back(s.sample);
    }
    if (trace.samples.empty()) {
        throw EmptyTraceError("assemble_trace: no samples for tag " + tag_id);
    }
    std::sort(trace.samples.begin(), trace.samples.end(),
              [](const PhaseSample& a, const PhaseSample& b) {
                  if (a.round != b.round) return a.round < b.round;
                  if (a.t != b.t) return a.t < b.t;
                  return a.phase < b.phase;
              });
    // Duplicate rounds collapse to the first sample after the sort.
    auto last = std::unique(trace.samples.begin(), trace.samples.end(),
                            [](const PhaseSample& a, const PhaseSample& b) {
                                return a.round == b.round;
                            });
    trace.samples.erase(last, trace.samples.end());
    return trace;
}

}  // namespace phaserank
