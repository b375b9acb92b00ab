#pragma once

#include <cstdio>
#include <ostream>
#include <string>

#include "sbw/errors.hpp"
#include "sbw/trace.hpp"

namespace sbw {

/// Trace CSV: fixed column order, one row per retained sample, values
/// printed with 9 significant digits. `every` keeps every Nth row for
/// plotting; metrics are always computed on the full-rate trace.
inline void write_trace_csv(std::ostream& out, const Trace& trace, std::size_t every = 1) {
    if (every == 0) throw ValidationError("csv downsampling factor must be positive");
    out << "t,theta,theta_dot,theta_d,e,e_dot,tau_cmd,tau_applied";
    for (std::size_t i = 0; i < trace.gain_count(); ++i) out << ",gain_" << i;
    out << '\n';

    char buf[32];
    const auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.9g", v);
        out << buf << sep;
    };
    const std::size_t n_gains = trace.gain_count();
    for (std::size_t k = 0; k < trace.samples.size(); k += every) {
        const TraceSample& s = trace.samples[k];
        put(s.t, ',');
        put(s.theta, ',');
        put(s.theta_dot, ',');
        put(s.theta_d, ',');
        put(s.e, ',');
        put(s.e_dot, ',');
        put(s.tau_cmd, ',');
        put(s.tau_applied, n_gains ? ',' : '\n');
        for (std::size_t i = 0; i < n_gains; ++i)
            put(s.gains[i], i + 1 == n_gains ? '\n' : ',');
    }
}

} // namespace sbw
