#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "sbw/analysis.hpp"
#include "sbw/errors.hpp"
#include "sbw/trace.hpp"

namespace sbw {

/// Scalar performance summary of a run. Errors are reported in degrees;
/// the trace itself stays in radians.
struct Metrics {
    double rms_error_deg = 0.0;
    double rms_torque = 0.0; // RMS of the commanded torque [N m]
    std::vector<double> gain_min;
    std::vector<double> gain_max;
    bool gain_ceiling_hit = false;
};

inline Metrics compute_metrics(const Trace& trace) {
    if (trace.samples.empty()) throw ValidationError("metrics of an empty trace");
    const std::size_t n_gains = trace.gain_count();
    Metrics m;
    m.gain_min.assign(n_gains, std::numeric_limits<double>::infinity());
    m.gain_max.assign(n_gains, -std::numeric_limits<double>::infinity());
    double err_acc = 0.0, tau_acc = 0.0;
    for (const TraceSample& s : trace.samples) {
        err_acc += s.e * s.e;
        tau_acc += s.tau_cmd * s.tau_cmd;
        for (std::size_t i = 0; i < n_gains; ++i) {
            m.gain_min[i] = std::min(m.gain_min[i], s.gains[i]);
            m.gain_max[i] = std::max(m.gain_max[i], s.gains[i]);
        }
    }
    const auto n = static_cast<double>(trace.samples.size());
    m.rms_error_deg = std::sqrt(err_acc / n) * kRadToDeg;
    m.rms_torque = std::sqrt(tau_acc / n);
    m.gain_ceiling_hit = trace.gain_ceiling_hit;
    return m;
}

/// Lyapunov function of the no-delay adaptive loop evaluated along a
/// trace: V = J r^2 / 2 + e^2 / 2 + sum (K_i - K_i*)^2 / 2.
struct MonitorResult {
    std::vector<double> v;
    double v0 = 0.0;
    double v_level = 0.0; // invariant level from the bound estimates
    double v_max = 0.0;
    bool within_bound = false; // V(t) <= max(V(0), v_level) throughout
};

inline MonitorResult lyapunov_monitor(const Trace& trace, const BoundEstimates& est) {
    if (trace.controller != "proposed")
        throw ValidationError("lyapunov_monitor requires a trace of the proposed controller");
    if (trace.samples.empty()) throw ValidationError("monitor of an empty trace");

    const UltimateBound ub = ultimate_bound(est);
    MonitorResult out;
    out.v.reserve(trace.samples.size());
    out.v_level = ub.v_level;
    for (const TraceSample& s : trace.samples) {
        const double r = s.e_dot + est.lambda * s.e;
        const double d0 = s.gains[0] - est.k0_star;
        const double d1 = s.gains[1] - est.k1_star;
        out.v.push_back(0.5 * est.inertia * r * r + 0.5 * s.e * s.e + 0.5 * d0 * d0 +
                        0.5 * d1 * d1);
    }
    out.v0 = out.v.front();
    out.v_max = *std::max_element(out.v.begin(), out.v.end());
    out.within_bound = out.v_max <= std::max(out.v0, out.v_level);
    return out;
}

} // namespace sbw
