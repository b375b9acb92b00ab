#pragma once

#include <cmath>

#include "sbw/errors.hpp"

namespace sbw {

/// Physical constants of the steering column plant:
///
///   J th'' + B th' + F(th') + i_rc * F_rack(t) + tau_tire(t) = tau
///
/// Friction combines a Coulomb term with a Stribeck peak at standstill,
///   F(th') = c_f tanh(th') + s_f exp(-(th'/v_s)^2),
/// and the exogenous rack / tire loads are slow sinusoids.
struct PlantParams {
    double inertia = 0.14;          // J [kg m^2]
    double damping = 0.8;           // B [N m s/rad]
    double rack_ratio = 8e-3;       // i_rc, tie rod to column
    double coulomb = 0.5;           // c_f [N m]
    double stribeck = 1.0;          // s_f [N m]
    double stribeck_vel = 0.1;      // v_s [rad/s]
    double rack_amplitude = 1000.0; // F_r [N]
    double rack_freq = 0.03;        // w_r [rad/s]
    double tire_amplitude = 5.0;    // tau_A [N m]
    double tire_freq = 0.05;        // w_a [rad/s]

    void validate() const {
        if (!(inertia > 0.0)) throw ValidationError("plant.inertia must be positive");
        if (!(rack_ratio > 0.0)) throw ValidationError("plant.rack_ratio must be positive");
        if (!(damping >= 0.0)) throw ValidationError("plant.damping must be non-negative");
        if (!(stribeck_vel > 0.0)) throw ValidationError("plant.stribeck_vel must be positive");
    }
};

/// Instantaneous simulation sample.
struct SimState {
    double t = 0.0;         // [s]
    double theta = 0.0;     // column angle [rad]
    double theta_dot = 0.0; // column rate [rad/s]

    bool finite() const {
        return std::isfinite(t) && std::isfinite(theta) && std::isfinite(theta_dot);
    }
};

/// Designer's model of the plant used by the delay-tolerant controller.
/// The inertia ratio error g_bar = inertia_hat / J - 1 must satisfy
/// |g_bar| < 1, i.e. 0 < inertia_hat < 2 J.
struct NominalModel {
    double inertia = 0.21; // J_hat [kg m^2]
    double damping = 0.8;  // B_hat [N m s/rad]
};

/// Coulomb + Stribeck friction torque. Bounded by coulomb + stribeck.
inline double friction(double theta_dot, const PlantParams& p) {
    const double v = theta_dot / p.stribeck_vel;
    return p.coulomb * std::tanh(theta_dot) + p.stribeck * std::exp(-v * v);
}

struct DisturbanceSample {
    double rack_force;  // F_rack [N]
    double tire_torque; // tau_tire [N m]
};

/// Exogenous rack force and tire torque at time t.
inline DisturbanceSample disturbances(double t, const PlantParams& p) {
    return {p.rack_amplitude * std::sin(p.rack_freq * t),
            p.tire_amplitude * std::sin(p.tire_freq * t)};
}

/// Angular acceleration of the column under an applied torque.
inline double accel(const SimState& s, double tau_applied, const PlantParams& p) {
    const DisturbanceSample d = disturbances(s.t, p);
    return (tau_applied - p.damping * s.theta_dot - friction(s.theta_dot, p) -
            p.rack_ratio * d.rack_force - d.tire_torque) /
           p.inertia;
}

/// Nominal/uncertain split of the acceleration dynamics
///   th'' = f(th') + g * tau,   f = f_hat + df,   g_hat = 1/J_hat.
struct Decomposition {
    double f_hat; // nominal drift [rad/s^2]
    double g_hat; // nominal input gain [(rad/s^2)/(N m)]
    double g_bar; // inertia ratio error, |g_bar| < 1
};

inline Decomposition decompose(const PlantParams& p, const NominalModel& n, const SimState& s) {
    if (!(n.inertia > 0.0)) throw ValidationError("nominal.inertia must be positive");
    const double g_bar = n.inertia / p.inertia - 1.0;
    if (!(std::abs(g_bar) < 1.0))
        throw ValidationError("nominal.inertia violates |J_nominal/J - 1| < 1 "
                              "(model ratio error " +
                              std::to_string(g_bar) + ")");
    return {-(n.damping * s.theta_dot) / n.inertia, 1.0 / n.inertia, g_bar};
}

} // namespace sbw
