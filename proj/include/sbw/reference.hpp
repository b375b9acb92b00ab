#pragma once

#include <cmath>

#include "sbw/errors.hpp"

namespace sbw {

struct RefSample {
    double pos; // desired angle [rad]
    double vel; // desired rate [rad/s]
    double acc; // desired acceleration [rad/s^2]
};

/// Sinusoidal steering command theta_d = A sin(w t + phase), evaluated
/// together with its first two derivatives so all three stay consistent.
struct Reference {
    double amplitude = 0.5; // A [rad]
    double omega = 0.5;     // w [rad/s]
    double phase = 0.0;     // [rad]

    RefSample eval(double t) const {
        const double arg = omega * t + phase;
        const double s = std::sin(arg);
        const double c = std::cos(arg);
        return {amplitude * s, amplitude * omega * c, -amplitude * omega * omega * s};
    }

    void validate() const {
        if (!std::isfinite(amplitude) || !std::isfinite(omega) || !std::isfinite(phase))
            throw ValidationError("reference fields must be finite");
    }
};

} // namespace sbw
