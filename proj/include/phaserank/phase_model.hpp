#pragma once

// Backscatter phase model: round-trip carrier phase as a function of the
// reader-tag distance, and the closed-form phase changing rate for a tag
// moving on a straight line past the reader.

#include <numbers>

namespace phaserank {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kSpeedOfLight = 299'792'458.0;

// Wraps an angle into [0, 2*pi).
double wrap_two_pi(double angle);

// Phase observed for a tag at `distance` meters. The carrier travels the
// reader-tag path twice, so one half-wavelength of distance is one full turn.
// The reduction runs fmod(2*distance, wavelength) first, which IEEE arithmetic
// computes exactly: a distance that is exactly k*wavelength/2 returns exactly
// the wrapped offset (0 for offset 0).
double ideal_phase(double distance, double wavelength, double offset);

// d(theta)/dt for a tag starting at (x0, y0) and moving along +x with speed v:
//
//   (4*pi / lambda) * (v^2 t + v x0) / sqrt((x0 + v t)^2 + y0^2)
//
// The rate vanishes at closest approach (t = -x0/v) and its magnitude away
// from it grows as the lateral offset y0 shrinks. For 3D passes, pass the
// lateral distance sqrt(y^2 + z^2) as y0.
double analytic_phase_rate(double x0, double y0, double v, double t, double wavelength);

}  // namespace phaserank
