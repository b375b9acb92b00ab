#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace sbw {

struct TraceSample {
    double t;           // [s]
    double theta;       // [rad]
    double theta_dot;   // [rad/s]
    double theta_d;     // desired angle [rad]
    double e;           // tracking error [rad]
    double e_dot;       // tracking error rate [rad/s]
    double tau_cmd;     // torque commanded this step [N m]
    double tau_applied; // torque reaching the plant after the delay [N m]
    std::array<double, 5> gains; // first gain_names.size() entries valid
};

/// Uniform-grid record of one closed-loop run. Sample k holds the state
/// at t = k*dt together with the torque computed from it and the gain
/// values before that step's adaptation update.
struct Trace {
    std::vector<TraceSample> samples;
    std::vector<std::string> gain_names;
    std::string controller; // "proposed" | "asmc" | "artdc"
    double dt = 0.0;
    double duration = 0.0;
    bool gain_ceiling_hit = false;

    std::size_t gain_count() const { return gain_names.size(); }
};

} // namespace sbw
