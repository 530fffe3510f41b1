#pragma once

// Phase splicing and trough lowest-point extraction.

#include <cstddef>
#include <string>

#include "phaserank/trace.hpp"

namespace phaserank {

// Lowest point of the trough zone in one tag's spliced profile.
struct TroughPoint {
    std::string tag_id;
    std::size_t index = 0;  // position in the source trace
    double t = 0.0;
    double value = 0.0;     // spliced phase at index, unbounded
    bool boundary = false;  // minimum sits within `guard` of a trace edge
    bool tied = false;      // minimum value repeats inside the guard window
};

// Reconnects the 2*pi wrap discontinuities of a raw profile in one
// left-to-right pass: a jump > pi subtracts ceil(|diff|/2pi) turns, a jump
// < -pi adds them, and each sample is corrected relative to its
// already-corrected predecessor. The first sample is preserved, adjacent
// output differences never exceed pi in magnitude, and every output sample
// stays congruent to its input mod 2*pi.
TagTrace splice(const TagTrace& trace);

struct TroughSearchStats {
    std::size_t comparisons = 0;  // value comparisons spent; bounded by 3N
};

// One forward pass over a spliced profile; returns the earliest index holding
// the global minimum. `guard` sets the neighborhood inspected for the
// boundary/tie confidence flags (guard = 1 is the bare one-neighbor rule;
// filtered noisy traces want a wider window). Requires length >= 2*guard + 1.
TroughPoint find_trough_lowest(const TagTrace& spliced, int guard,
                               TroughSearchStats* stats = nullptr);

// Full-scan argmin, ties to the smallest index. Deliberately independent of
// find_trough_lowest so the two routes can be checked against each other.
std::size_t brute_force_min(const TagTrace& spliced);

}  // namespace phaserank
