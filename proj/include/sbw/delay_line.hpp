#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbw/errors.hpp"

namespace sbw {

/// Time-varying actuation lag h(t) = amplitude * |sin(freq * t)|.
/// `margin`, when set, is the largest delay the stability analysis
/// admits; configurations exceeding it are rejected.
struct DelayProfile {
    double amplitude = 0.0; // d_A [s]
    double freq = 0.01;     // d_w [rad/s]
    std::optional<double> margin; // admissible upper bound on h(t) [s]

    double at(double t) const { return amplitude * std::abs(std::sin(freq * t)); }

    void validate() const {
        if (!(amplitude >= 0.0)) throw ValidationError("delay.amplitude must be non-negative");
        if (!std::isfinite(freq)) throw ValidationError("delay.freq must be finite");
        if (margin && amplitude > *margin)
            throw ValidationError("delay.amplitude exceeds the admissible delay bound " +
                                  std::to_string(*margin));
    }
};

/// Fixed-rate history of commanded torque supporting interpolated lookup
/// at t - h(t). Sample i is recorded at time i*dt; queries before the
/// first sample return the pre-start torque. Only a window of
/// `horizon` seconds is retained.
class DelayLine {
public:
    DelayLine(double dt, double horizon, double tau0 = 0.0)
        : dt_(dt), tau0_(tau0) {
        if (!(dt > 0.0)) throw ValidationError("delay line dt must be positive");
        if (!(horizon >= 0.0)) throw ValidationError("delay line horizon must be non-negative");
        const auto window = static_cast<std::size_t>(std::ceil(horizon / dt)) + 4;
        buf_.assign(window, 0.0);
    }

    /// Record the torque commanded at t = size() * dt.
    void push(double tau) {
        buf_[count_ % buf_.size()] = tau;
        ++count_;
    }

    std::size_t size() const { return count_; }
    double newest_time() const { return static_cast<double>(count_ - 1) * dt_; }

    /// Torque at t_query by linear interpolation between the bracketing
    /// samples. Exact (bitwise) at stored sample times. Queries beyond
    /// the newest sample breach causality and throw.
    double sample(double t_query) const {
        if (count_ == 0) throw std::logic_error("delay line is empty");
        const double newest = newest_time();
        if (t_query > newest)
            throw std::out_of_range("delay line query at t=" + std::to_string(t_query) +
                                    " is ahead of newest sample t=" + std::to_string(newest));
        if (t_query == newest) return at(count_ - 1);
        if (t_query < 0.0) return tau0_;

        auto k = static_cast<std::size_t>(t_query / dt_);
        if (k > count_ - 2) k = count_ - 2;
        if (k + buf_.size() < count_)
            throw std::logic_error("delay line query older than retained horizon");
        double alpha = (t_query - static_cast<double>(k) * dt_) / dt_;
        if (alpha < 0.0) alpha = 0.0;
        if (alpha > 1.0) alpha = 1.0;
        return at(k) * (1.0 - alpha) + at(k + 1) * alpha;
    }

private:
    double at(std::size_t i) const { return buf_[i % buf_.size()]; }

    double dt_;
    double tau0_;
    std::vector<double> buf_;
    std::size_t count_ = 0;
};

} // namespace sbw
