#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "sbw/errors.hpp"

namespace sbw {

/// Adaptive gains are capped at this value so a diverging adaptation
/// becomes a detectable flag instead of a floating-point overflow.
inline constexpr double kGainCeiling = 1e9;

/// Filtered tracking error r = e_dot + lambda * e. Driving r to zero
/// drives both e and e_dot to zero.
inline double filtered_error(double e, double e_dot, double lambda) {
    return e_dot + lambda * e;
}

/// Boundary-layer saturation: sign(r) outside the layer, linear ramp
/// r/eps inside. Odd, continuous at |r| = eps, output in [-1, 1].
inline double sat(double r, double eps) {
    const double a = std::abs(r);
    if (a >= eps) return r / a;
    return r / eps;
}

// ---------------------------------------------------------------------------
// Adaptive controller with state-dependent switching gain (no delay).
// tau = -gamma r - e - (K0 + K1 ||xi||) sat(r), xi = [e, e_dot].
// ---------------------------------------------------------------------------

struct ProposedParams {
    double lambda = 100.0; // error filter slope [1/s]
    double gamma = 20.0;   // filtered-error feedback gain
    double alpha0 = 0.1;   // leak rate of K0 [1/s]
    double alpha1 = 0.1;   // leak rate of K1 [1/s]
    double epsilon = 0.1;  // boundary layer [rad/s]
    double k0_init = 1e-3;
    double k1_init = 1e-3;

    void validate() const {
        if (!(lambda > 0.0)) throw ValidationError("controller.lambda must be positive");
        if (!(gamma > 0.0)) throw ValidationError("controller.gamma must be positive");
        if (!(alpha0 > 0.0) || !(alpha1 > 0.0))
            throw ValidationError("controller.alpha0/alpha1 must be positive");
        if (!(epsilon > 0.0)) throw ValidationError("controller.epsilon must be positive");
        if (!(k0_init > 0.0) || !(k1_init > 0.0))
            throw ValidationError("controller.k0_init/k1_init must be positive");
    }
};

struct ProposedGains {
    double k0 = 1e-3;
    double k1 = 1e-3;
};

inline double proposed_control(double e, double e_dot, double xi_norm, const ProposedGains& g,
                               const ProposedParams& p) {
    const double r = filtered_error(e, e_dot, p.lambda);
    const double rho = g.k0 + g.k1 * xi_norm;
    return -p.gamma * r - e - rho * sat(r, p.epsilon);
}

struct ProposedRates {
    double k0_rate;
    double k1_rate;
};

/// dK0/dt = |r| - alpha0 K0, dK1/dt = |r| ||xi|| - alpha1 K1.
inline ProposedRates proposed_gain_rates(double r, double xi_norm, const ProposedGains& g,
                                         const ProposedParams& p) {
    const double ar = std::abs(r);
    return {ar - p.alpha0 * g.k0, ar * xi_norm - p.alpha1 * g.k1};
}

/// Forward-Euler update with clamping at zero (the continuous law keeps
/// the gains non-negative; clamping removes discretization undershoot).
/// Returns true if the ceiling was hit.
inline bool proposed_advance_gains(ProposedGains& g, const ProposedRates& r, double dt) {
    g.k0 = std::clamp(g.k0 + dt * r.k0_rate, 0.0, kGainCeiling);
    g.k1 = std::clamp(g.k1 + dt * r.k1_rate, 0.0, kGainCeiling);
    return g.k0 >= kGainCeiling || g.k1 >= kGainCeiling;
}

// ---------------------------------------------------------------------------
// Adaptive sliding-mode baseline (constant uncertainty bound).
// tau = -K sat(r); K grows while |r| is outside the layer, shrinks inside,
// and recovers at rate mu whenever it falls under the floor mu.
// ---------------------------------------------------------------------------

struct AsmcParams {
    double lambda = 100.0;   // sliding surface slope, same r as above [1/s]
    double adapt_rate = 1.0; // K_bar
    double gain_floor = 0.01; // mu
    double epsilon = 0.1;    // boundary layer [rad/s]
    double k_init = 1e-3;

    void validate() const {
        if (!(lambda > 0.0)) throw ValidationError("controller.lambda must be positive");
        if (!(adapt_rate > 0.0)) throw ValidationError("controller.adapt_rate must be positive");
        if (!(gain_floor > 0.0)) throw ValidationError("controller.gain_floor must be positive");
        if (!(epsilon > 0.0)) throw ValidationError("controller.epsilon must be positive");
        if (!(k_init > 0.0)) throw ValidationError("controller.k_init must be positive");
    }
};

inline double asmc_control(double r, double k, double eps) { return -k * sat(r, eps); }

/// dK/dt = K_bar |r| sgn(|r| - eps) when K >= mu, else mu.
/// sgn(0) is taken as 0, so the rate vanishes exactly on the layer edge.
inline double asmc_gain_rate(double r, double k, const AsmcParams& p) {
    if (k < p.gain_floor) return p.gain_floor;
    const double d = std::abs(r) - p.epsilon;
    const double sgn = (d > 0.0) ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
    return p.adapt_rate * std::abs(r) * sgn;
}

inline bool asmc_advance_gain(double& k, double rate, double dt) {
    k = std::clamp(k + dt * rate, 0.0, kGainCeiling);
    return k >= kGainCeiling;
}

// ---------------------------------------------------------------------------
// Adaptive-robust controller under time-varying input delay.
// tau = g_hat^-1 (u_nom + du - f_hat), u_nom = acc_d - Omega e_dot,
// du = -zeta sat-like term on s = P3 e_dot + P2 e,
// zeta = (gamma0 + gamma2 + gamma1 ||xi|| + beta + rho) / (1 - |g_bar|).
// ---------------------------------------------------------------------------

struct ArtdcParams {
    double K = 1.0;     // position gain of the design matrix
    double Omega = 0.5; // velocity gain of the design matrix
    double P2 = 0.5;    // switching-variable weights (Lyapunov solve)
    double P3 = 1.0;
    std::array<double, 3> alpha = {0.82, 0.82, 1.0}; // adaptation rates
    double cubic_leak = 0.1;     // scales the gamma2 decrease rate
    double floor_recovery = 10.0; // recovery rate at the beta/rho floors
    std::array<double, 3> gamma_floor = {1e-3, 1e-3, 1e-3};
    std::array<double, 3> gamma_init = {3.0, 3.0, 3.0};
    double beta_floor = 0.05;
    double rho_floor = 0.05;
    double beta_init = 2.8;
    double rho_init = 2.8;
    double epsilon = 0.1; // boundary layer on s
    double g_bar = 0.5;   // designer's bound on the inertia ratio error
    /// Reduced law: only gamma0 adapts; gamma1, gamma2, beta, rho are
    /// pinned at zero (uncertainty treated as constant-bounded).
    bool constant_bound_mode = false;

    void validate() const {
        if (!(K > 0.0)) throw ValidationError("controller.K must be positive");
        if (!(Omega > 0.0)) throw ValidationError("controller.Omega must be positive");
        if (!(P2 > 0.0) || !(P3 > 0.0)) throw ValidationError("controller.P2/P3 must be positive");
        for (double a : alpha)
            if (!(a > 0.0)) throw ValidationError("controller.alpha must be positive");
        if (!(cubic_leak > 0.0)) throw ValidationError("controller.cubic_leak must be positive");
        if (!(floor_recovery > 0.0))
            throw ValidationError("controller.floor_recovery must be positive");
        if (!(epsilon > 0.0)) throw ValidationError("controller.epsilon must be positive");
        if (!(std::abs(g_bar) < 1.0)) throw ValidationError("controller.g_bar must satisfy |g_bar| < 1");
        if (!constant_bound_mode) {
            for (int i = 0; i < 3; ++i) {
                if (!(gamma_floor[i] > 0.0))
                    throw ValidationError("controller.gamma_floor must be positive");
                if (!(gamma_init[i] > gamma_floor[i]))
                    throw ValidationError("controller.gamma_init must exceed gamma_floor");
            }
            if (!(beta_floor > 0.0) || !(rho_floor > 0.0))
                throw ValidationError("controller.beta_floor/rho_floor must be positive");
            if (!(beta_init > beta_floor))
                throw ValidationError("controller.beta_init must exceed beta_floor");
            if (!(rho_init > rho_floor))
                throw ValidationError("controller.rho_init must exceed rho_floor");
        } else if (!(gamma_init[0] > gamma_floor[0]) || !(gamma_floor[0] > 0.0)) {
            throw ValidationError("controller.gamma_init[0] must exceed a positive gamma_floor[0]");
        }
    }
};

struct ArtdcGains {
    std::array<double, 3> gamma_hat = {3.0, 3.0, 3.0};
    double beta = 2.8;
    double rho = 2.8;
    double s_prev = 0.0;   // previous switching-variable value
    bool s_prev_valid = false;

    static ArtdcGains initial(const ArtdcParams& p) {
        ArtdcGains g;
        g.gamma_hat = p.gamma_init;
        g.beta = p.beta_init;
        g.rho = p.rho_init;
        if (p.constant_bound_mode) {
            g.gamma_hat[1] = 0.0;
            g.gamma_hat[2] = 0.0;
            g.beta = 0.0;
            g.rho = 0.0;
        }
        return g;
    }
};

inline double artdc_switching_variable(double e, double e_dot, const ArtdcParams& p) {
    return p.P3 * e_dot + p.P2 * e;
}

/// Total switching magnitude in front of the boundary-layer term.
inline double artdc_zeta(double xi_norm, const ArtdcGains& g, const ArtdcParams& p) {
    const double c = g.gamma_hat[0] + g.gamma_hat[2] + g.gamma_hat[1] * xi_norm;
    return (c + g.beta + g.rho) / (1.0 - std::abs(p.g_bar));
}

inline double artdc_control(double e, double e_dot, double acc_d, const ArtdcGains& g,
                            const ArtdcParams& p, double f_hat, double g_hat) {
    const double s = artdc_switching_variable(e, e_dot, p);
    const double xi_norm = std::sqrt(e * e + e_dot * e_dot);
    const double zeta = artdc_zeta(xi_norm, g, p);
    const double du = -zeta * sat(s, p.epsilon);
    const double u_nom = acc_d - p.Omega * e_dot;
    return (u_nom + du - f_hat) / g_hat;
}

struct ArtdcRates {
    std::array<double, 3> gamma_rate;
    double beta_rate;
    double rho_rate;
};

/// Switching-gain adaptation. Each gamma_i takes the increasing branch
/// exactly when its own floor is reached or the error grows
/// (s s_dot > 0, backward-differenced), and the decreasing branch
/// otherwise. Tying the branch to the increase predicate keeps a gain
/// from being trapped below its working level after beta and rho reach
/// their floors, which happens in finite time by construction.
inline ArtdcRates artdc_gain_rates(double s, double s_prev, double xi_norm, const ArtdcGains& g,
                                   const ArtdcParams& p) {
    const double as = std::abs(s);
    const bool error_growing = s * (s - s_prev) > 0.0;

    ArtdcRates out{};
    const std::array<double, 3> inc = {p.alpha[0] * as, p.alpha[1] * xi_norm * as,
                                       p.alpha[2] * xi_norm * as};
    const std::array<double, 3> dec = {-p.alpha[0] * as, -p.alpha[1] * xi_norm * as,
                                       -p.cubic_leak * p.alpha[2] * xi_norm * xi_norm * xi_norm};
    for (int i = 0; i < 3; ++i) {
        const bool at_floor = g.gamma_hat[i] <= p.gamma_floor[i];
        out.gamma_rate[i] = (at_floor || error_growing) ? inc[i] : dec[i];
    }

    out.beta_rate = g.beta <= p.beta_floor ? p.floor_recovery : -1.0 / g.beta;
    out.rho_rate = g.rho <= p.rho_floor ? p.floor_recovery * as : -as / g.rho;

    if (p.constant_bound_mode) {
        out.gamma_rate[1] = 0.0;
        out.gamma_rate[2] = 0.0;
        out.beta_rate = 0.0;
        out.rho_rate = 0.0;
    }
    return out;
}

/// Forward-Euler update with clamping at the configured floors.
/// Returns true if the ceiling was hit.
inline bool artdc_advance_gains(ArtdcGains& g, const ArtdcRates& r, double dt,
                                const ArtdcParams& p) {
    bool ceiling = false;
    for (int i = 0; i < 3; ++i) {
        const double floor = (p.constant_bound_mode && i > 0) ? 0.0 : p.gamma_floor[i];
        g.gamma_hat[i] = std::clamp(g.gamma_hat[i] + dt * r.gamma_rate[i], floor, kGainCeiling);
        ceiling = ceiling || g.gamma_hat[i] >= kGainCeiling;
    }
    const double beta_floor = p.constant_bound_mode ? 0.0 : p.beta_floor;
    const double rho_floor = p.constant_bound_mode ? 0.0 : p.rho_floor;
    g.beta = std::clamp(g.beta + dt * r.beta_rate, beta_floor, kGainCeiling);
    g.rho = std::clamp(g.rho + dt * r.rho_rate, rho_floor, kGainCeiling);
    return ceiling || g.beta >= kGainCeiling || g.rho >= kGainCeiling;
}

} // namespace sbw
