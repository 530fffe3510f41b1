#include "phaserank/trough.hpp"

#include <cmath>
#include <string>

#include "phaserank/errors.hpp"
#include "phaserank/phase_model.hpp"

namespace phaserank {

TagTrace splice(const TagTrace& trace) {
    if (trace.empty()) {
        throw EmptyTraceError("splice: empty trace " + trace.tag_id);
    }
    constexpr double pi = kTwoPi / 2.0;

    TagTrace out = trace;
    double prev = out.samples[0].phase;
    double offset = 0.0;  // accumulated multiple-of-2pi correction
    for (std::size_t i = 1; i < out.samples.size(); ++i) {
        double value = trace.samples[i].phase + offset;
        const double diff = value - prev;
        if (diff > pi) {
            const double turns = std::ceil(diff / kTwoPi) * kTwoPi;
            offset -= turns;
            value -= turns;
        } else if (diff < -pi) {
            const double turns = std::ceil(-diff / kTwoPi) * kTwoPi;
            offset += turns;
            value += turns;
        }
        out.samples[i].phase = value;
        prev = value;
    }
    return out;
}

TroughPoint find_trough_lowest(const TagTrace& spliced, int guard, TroughSearchStats* stats) {
    if (guard < 1) {
        throw InvalidParameterError("find_trough_lowest: guard must be >= 1");
    }
    const std::size_t n = spliced.size();
    const std::size_t g = static_cast<std::size_t>(guard);
    if (n < 2 * g + 1) {
        throw InsufficientDataError("find_trough_lowest: trace " + spliced.tag_id + " has " +
                                    std::to_string(n) + " samples, need at least " +
                                    std::to_string(2 * g + 1));
    }

    std::size_t comparisons = 0;

    // Forward pass; strict < keeps the earliest occurrence of the minimum.
    std::size_t best = 0;
    double best_value = spliced.samples[0].phase;
    for (std::size_t i = 1; i < n; ++i) {
        ++comparisons;
        if (spliced.samples[i].phase < best_value) {
            best = i;
            best_value = spliced.samples[i].phase;
        }
    }

    TroughPoint tp;
    tp.tag_id = spliced.tag_id;
    tp.index = best;
    tp.t = spliced.samples[best].t;
    tp.value = best_value;
    tp.boundary = best < g || best + g >= n;

    // Confidence check: is the minimum strict within its +-guard window?
    const std::size_t lo = best >= g ? best - g : 0;
    const std::size_t hi = best + g + 1 < n ? best + g + 1 : n;
    for (std::size_t j = lo; j < hi; ++j) {
        if (j == best) continue;
        ++comparisons;
        if (spliced.samples[j].phase == best_value) tp.tied = true;
    }

    if (stats) stats->comparisons = comparisons;
    return tp;
}

std::size_t brute_force_min(const TagTrace& spliced) {
    if (spliced.empty()) {
        throw EmptyTraceError("brute_force_min: empty trace");
    }
    std::size_t arg = 0;
    for (std::size_t i = 1; i < spliced.size(); ++i) {
        if (spliced.samples[i].phase < spliced.samples[arg].phase) arg = i;
    }
    return arg;
}

}  // namespace phaserank
