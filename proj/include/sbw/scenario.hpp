#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "sbw/controllers.hpp"
#include "sbw/delay_line.hpp"
#include "sbw/errors.hpp"
#include "sbw/integrator.hpp"
#include "sbw/plant.hpp"
#include "sbw/reference.hpp"
#include "sbw/trace.hpp"

namespace sbw {

enum class ControllerType { proposed, asmc, artdc };

inline std::string to_string(ControllerType t) {
    switch (t) {
    case ControllerType::proposed: return "proposed";
    case ControllerType::asmc: return "asmc";
    case ControllerType::artdc: return "artdc";
    }
    return "?";
}

struct InitialConditions {
    double theta = 0.1;     // [rad]
    double theta_dot = 0.0; // [rad/s]
};

/// Everything one closed-loop run needs. Exactly one controller is
/// active; the unused parameter blocks keep their defaults.
struct ScenarioConfig {
    PlantParams plant;
    NominalModel nominal;
    Reference reference;
    DelayProfile delay;
    double dt = 1e-4;       // [s]
    double duration = 100.0; // [s]
    InitialConditions init;
    ControllerType controller = ControllerType::proposed;
    ProposedParams proposed;
    AsmcParams asmc;
    ArtdcParams artdc;
    std::uint64_t seed = 0; // sweep jitter only; a single run is deterministic

    void validate() const {
        if (!(dt > 0.0)) throw ValidationError("dt must be positive");
        if (!(duration >= 10.0 * dt))
            throw ValidationError("duration must be at least 10*dt");
        if (!std::isfinite(init.theta) || !std::isfinite(init.theta_dot))
            throw ValidationError("initial conditions must be finite");
        plant.validate();
        reference.validate();
        delay.validate();
        switch (controller) {
        case ControllerType::proposed: proposed.validate(); break;
        case ControllerType::asmc: asmc.validate(); break;
        case ControllerType::artdc:
            artdc.validate();
            // rejects a nominal model with |J_hat/J - 1| >= 1
            decompose(plant, nominal, SimState{});
            break;
        }
    }
};

namespace detail {

struct StepContext {
    double t;
    double e;
    double e_dot;
    double xi_norm;
    RefSample ref;
    const SimState& state;
};

struct ProposedRunner {
    ProposedParams p;
    ProposedGains g;

    explicit ProposedRunner(const ScenarioConfig& cfg) : p(cfg.proposed) {
        g.k0 = p.k0_init;
        g.k1 = p.k1_init;
    }
    static const char* name() { return "proposed"; }
    static std::vector<std::string> gain_names() { return {"K0_hat", "K1_hat"}; }

    double torque(const StepContext& c) const {
        return proposed_control(c.e, c.e_dot, c.xi_norm, g, p);
    }
    bool advance(const StepContext& c, double dt) {
        const double r = filtered_error(c.e, c.e_dot, p.lambda);
        return proposed_advance_gains(g, proposed_gain_rates(r, c.xi_norm, g, p), dt);
    }
    void snapshot(std::array<double, 5>& out) const {
        out = {g.k0, g.k1, 0.0, 0.0, 0.0};
    }
    bool finite() const { return std::isfinite(g.k0) && std::isfinite(g.k1); }
};

struct AsmcRunner {
    AsmcParams p;
    double k;

    explicit AsmcRunner(const ScenarioConfig& cfg) : p(cfg.asmc), k(cfg.asmc.k_init) {}
    static const char* name() { return "asmc"; }
    static std::vector<std::string> gain_names() { return {"K"}; }

    double torque(const StepContext& c) const {
        return asmc_control(filtered_error(c.e, c.e_dot, p.lambda), k, p.epsilon);
    }
    bool advance(const StepContext& c, double dt) {
        const double r = filtered_error(c.e, c.e_dot, p.lambda);
        return asmc_advance_gain(k, asmc_gain_rate(r, k, p), dt);
    }
    void snapshot(std::array<double, 5>& out) const { out = {k, 0.0, 0.0, 0.0, 0.0}; }
    bool finite() const { return std::isfinite(k); }
};

struct ArtdcRunner {
    ArtdcParams p;
    ArtdcGains g;
    PlantParams plant;
    NominalModel nominal;

    explicit ArtdcRunner(const ScenarioConfig& cfg)
        : p(cfg.artdc), g(ArtdcGains::initial(cfg.artdc)), plant(cfg.plant),
          nominal(cfg.nominal) {}
    static const char* name() { return "artdc"; }
    static std::vector<std::string> gain_names() {
        return {"gamma0_hat", "gamma1_hat", "gamma2_hat", "beta", "rho"};
    }

    double torque(const StepContext& c) const {
        const Decomposition d = decompose(plant, nominal, c.state);
        return artdc_control(c.e, c.e_dot, c.ref.acc, g, p, d.f_hat, d.g_hat);
    }
    bool advance(const StepContext& c, double dt) {
        const double s = artdc_switching_variable(c.e, c.e_dot, p);
        if (!g.s_prev_valid) { // first step: treated as non-growing error
            g.s_prev = s;
            g.s_prev_valid = true;
        }
        const ArtdcRates rates = artdc_gain_rates(s, g.s_prev, c.xi_norm, g, p);
        const bool ceiling = artdc_advance_gains(g, rates, dt, p);
        g.s_prev = s;
        return ceiling;
    }
    void snapshot(std::array<double, 5>& out) const {
        out = {g.gamma_hat[0], g.gamma_hat[1], g.gamma_hat[2], g.beta, g.rho};
    }
    bool finite() const {
        return std::isfinite(g.gamma_hat[0]) && std::isfinite(g.gamma_hat[1]) &&
               std::isfinite(g.gamma_hat[2]) && std::isfinite(g.beta) && std::isfinite(g.rho);
    }
};

template <class Runner>
Trace run_loop(const ScenarioConfig& cfg, Runner runner) {
    const auto n_steps = static_cast<std::size_t>(std::floor(cfg.duration / cfg.dt));

    Trace trace;
    trace.samples.reserve(n_steps + 1);
    trace.gain_names = Runner::gain_names();
    trace.controller = Runner::name();
    trace.dt = cfg.dt;
    trace.duration = cfg.duration;

    SimState state{0.0, cfg.init.theta, cfg.init.theta_dot};
    DelayLine line(cfg.dt, cfg.delay.amplitude, 0.0);

    for (std::size_t k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.dt; // grid by index, not accumulation
        state.t = t;
        const RefSample ref = cfg.reference.eval(t);
        const double e = state.theta - ref.pos;
        const double e_dot = state.theta_dot - ref.vel;
        const StepContext ctx{t, e, e_dot, std::sqrt(e * e + e_dot * e_dot), ref, state};

        const double tau_cmd = runner.torque(ctx);
        if (!std::isfinite(tau_cmd))
            throw InstabilityError("non-finite control torque at t=" + std::to_string(t));
        line.push(tau_cmd);
        const double tau_applied = line.sample(t - cfg.delay.at(t));

        TraceSample sample{t, state.theta, state.theta_dot, ref.pos, e, e_dot,
                           tau_cmd, tau_applied, {}};
        runner.snapshot(sample.gains);
        trace.samples.push_back(sample);

        if (k == n_steps) break;
        state = rk4_step(state, tau_applied, cfg.dt, cfg.plant);
        if (runner.advance(ctx, cfg.dt)) trace.gain_ceiling_hit = true;
        if (!runner.finite())
            throw InstabilityError("non-finite adaptive gain at t=" + std::to_string(t));
    }
    return trace;
}

} // namespace detail

/// Run one closed-loop scenario on the uniform grid t = k*dt,
/// k = 0..floor(duration/dt). Deterministic for a fixed config.
inline Trace run_scenario(const ScenarioConfig& cfg) {
    cfg.validate();
    switch (cfg.controller) {
    case ControllerType::proposed:
        return detail::run_loop(cfg, detail::ProposedRunner(cfg));
    case ControllerType::asmc:
        return detail::run_loop(cfg, detail::AsmcRunner(cfg));
    case ControllerType::artdc:
        return detail::run_loop(cfg, detail::ArtdcRunner(cfg));
    }
    throw ValidationError("unknown controller type");
}

} // namespace sbw
