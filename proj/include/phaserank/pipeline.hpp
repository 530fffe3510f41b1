#pragma once

// Trace conditioning: Savitzky-Golay smoothing and rotation-step flagging.

#include <cstddef>
#include <vector>

#include "phaserank/trace.hpp"

namespace phaserank {

struct FilterConfig {
    int window = 21;    // odd, >= 3
    int polyorder = 3;  // >= 0, < window
    void validate() const;
};

// Least-squares local polynomial smoother over sample indices. Interior
// samples take the centered fit; each end fits the terminal window once and
// evaluates the polynomial at the off-center positions, so output length and
// timestamps match the input exactly. Apply to spliced (wrap-free) profiles:
// smoothing across a 2*pi wrap corrupts the shape.
TagTrace savitzky_golay(const TagTrace& trace, const FilterConfig& cfg);

struct IndexRange {
    std::size_t begin = 0;  // inclusive
    std::size_t end = 0;    // exclusive
    double max_shift = 0.0; // largest level shift seen inside the range

    bool contains(std::size_t i) const { return i >= begin && i < end; }
};

// Flags step-like level shifts: index i triggers when the medians of the
// `sustain` samples before and after i differ by more than `step_threshold`.
// Consecutive triggering indices merge into maximal ranges. Ranges are
// reported, never deleted; traces shorter than 2*sustain yield no flags.
std::vector<IndexRange> detect_rotation_events(const TagTrace& trace, double step_threshold,
                                               int sustain);

}  // namespace phaserank
