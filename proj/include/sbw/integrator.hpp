#pragma once

#include <string>

#include "sbw/errors.hpp"
#include "sbw/plant.hpp"

namespace sbw {

/// One classical 4th-order Runge-Kutta step of (theta, theta_dot) with
/// the applied torque held constant over the interval (zero-order hold).
inline SimState rk4_step(const SimState& s, double tau_held, double dt, const PlantParams& p) {
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");

    const auto deriv = [&](double t, double th, double thd) {
        return accel(SimState{t, th, thd}, tau_held, p);
    };

    const double h = dt / 2.0;
    const double k1p = s.theta_dot;
    const double k1v = deriv(s.t, s.theta, s.theta_dot);
    const double k2p = s.theta_dot + h * k1v;
    const double k2v = deriv(s.t + h, s.theta + h * k1p, s.theta_dot + h * k1v);
    const double k3p = s.theta_dot + h * k2v;
    const double k3v = deriv(s.t + h, s.theta + h * k2p, s.theta_dot + h * k2v);
    const double k4p = s.theta_dot + dt * k3v;
    const double k4v = deriv(s.t + dt, s.theta + dt * k3p, s.theta_dot + dt * k3v);

    SimState out{s.t + dt,
                 s.theta + dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
                 s.theta_dot + dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)};
    if (!out.finite())
        throw InstabilityError("non-finite state after integration step at t=" +
                               std::to_string(s.t));
    return out;
}

} // namespace sbw
