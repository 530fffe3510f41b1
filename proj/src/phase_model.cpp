#include "phaserank/phase_model.hpp"

#include <cmath>
#include <string>

#include "phaserank/errors.hpp"

namespace phaserank {

double wrap_two_pi(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r -= kTwoPi;  // fmod(-eps, 2pi) + 2pi can round up to 2pi
    return r;
}

double ideal_phase(double distance, double wavelength, double offset) {
    if (!std::isfinite(wavelength) || wavelength <= 0.0) {
        throw InvalidParameterError("ideal_phase: wavelength must be finite and > 0, got " +
                                    std::to_string(wavelength));
    }
    if (!std::isfinite(distance) || distance < 0.0) {
        throw InvalidParameterError("ideal_phase: distance must be finite and >= 0, got " +
                                    std::to_string(distance));
    }
    if (!std::isfinite(offset)) {
        throw InvalidParameterError("ideal_phase: offset must be finite");
    }
    // fmod is exact, so the fractional turn carries no error from large
    // distances; an exact multiple of wavelength/2 reduces to exactly 0.
    const double remainder = std::fmod(2.0 * distance, wavelength);
    return wrap_two_pi(kTwoPi * (remainder / wavelength) + offset);
}

double analytic_phase_rate(double x0, double y0, double v, double t, double wavelength) {
    if (!std::isfinite(wavelength) || wavelength <= 0.0) {
        throw InvalidParameterError("analytic_phase_rate: wavelength must be finite and > 0");
    }
    const double along = x0 + v * t;
    const double range = std::sqrt(along * along + y0 * y0);
    if (range == 0.0) {
        throw SingularityError("analytic_phase_rate: tag coincident with reader");
    }
    return (2.0 * kTwoPi / wavelength) * (v * v * t + v * x0) / range;
}

}  // namespace phaserank
