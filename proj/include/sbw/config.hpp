#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbw/analysis.hpp"
#include "sbw/errors.hpp"
#include "sbw/scenario.hpp"

namespace sbw {

using json = nlohmann::json;

namespace detail {

inline double num_field(const json& j, const std::string& path, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number()) throw ValidationError(path + "." + key + " must be a number");
    return v.get<double>();
}

inline bool bool_field(const json& j, const std::string& path, const char* key, bool fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_boolean()) throw ValidationError(path + "." + key + " must be a boolean");
    return v.get<bool>();
}

template <std::size_t N>
std::array<double, N> array_field(const json& j, const std::string& path, const char* key,
                                  std::array<double, N> fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != N)
        throw ValidationError(path + "." + key + " must be an array of " + std::to_string(N) +
                              " numbers");
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) out[i] = v.at(i).get<double>();
    return out;
}

inline Mat2 mat2_field(const json& j, const std::string& path, const char* key, Mat2 fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_array() || v.size() != 2 || !v.at(0).is_array() || v.at(0).size() != 2 ||
        !v.at(1).is_array() || v.at(1).size() != 2)
        throw ValidationError(path + "." + key + " must be a 2x2 array");
    return {v.at(0).at(0).get<double>(), v.at(0).at(1).get<double>(),
            v.at(1).at(0).get<double>(), v.at(1).at(1).get<double>()};
}

inline PlantParams parse_plant(const json& j) {
    PlantParams p;
    if (!j.contains("plant")) return p;
    const json& v = j.at("plant");
    p.inertia = num_field(v, "plant", "inertia", p.inertia);
    p.damping = num_field(v, "plant", "damping", p.damping);
    p.rack_ratio = num_field(v, "plant", "rack_ratio", p.rack_ratio);
    p.coulomb = num_field(v, "plant", "coulomb", p.coulomb);
    p.stribeck = num_field(v, "plant", "stribeck", p.stribeck);
    p.stribeck_vel = num_field(v, "plant", "stribeck_vel", p.stribeck_vel);
    p.rack_amplitude = num_field(v, "plant", "rack_amplitude", p.rack_amplitude);
    p.rack_freq = num_field(v, "plant", "rack_freq", p.rack_freq);
    p.tire_amplitude = num_field(v, "plant", "tire_amplitude", p.tire_amplitude);
    p.tire_freq = num_field(v, "plant", "tire_freq", p.tire_freq);
    return p;
}

inline NominalModel parse_nominal(const json& j) {
    NominalModel n;
    if (!j.contains("nominal")) return n;
    const json& v = j.at("nominal");
    n.inertia = num_field(v, "nominal", "inertia", n.inertia);
    n.damping = num_field(v, "nominal", "damping", n.damping);
    return n;
}

inline Reference parse_reference(const json& j) {
    Reference r;
    if (!j.contains("reference")) return r;
    const json& v = j.at("reference");
    r.amplitude = num_field(v, "reference", "amplitude", r.amplitude);
    r.omega = num_field(v, "reference", "omega", r.omega);
    r.phase = num_field(v, "reference", "phase", r.phase);
    return r;
}

inline DelayProfile parse_delay(const json& j) {
    DelayProfile d;
    if (!j.contains("delay")) return d;
    const json& v = j.at("delay");
    d.amplitude = num_field(v, "delay", "amplitude", d.amplitude);
    d.freq = num_field(v, "delay", "freq", d.freq);
    if (v.contains("margin")) d.margin = num_field(v, "delay", "margin", 0.0);
    return d;
}

inline void parse_controller(const json& v, ScenarioConfig& cfg) {
    if (!v.contains("type") || !v.at("type").is_string())
        throw ValidationError("controller.type must be one of proposed|asmc|artdc");
    const std::string type = v.at("type").get<std::string>();
    if (type == "proposed") {
        cfg.controller = ControllerType::proposed;
        ProposedParams& p = cfg.proposed;
        p.lambda = num_field(v, "controller", "lambda", p.lambda);
        p.gamma = num_field(v, "controller", "gamma", p.gamma);
        p.alpha0 = num_field(v, "controller", "alpha0", p.alpha0);
        p.alpha1 = num_field(v, "controller", "alpha1", p.alpha1);
        p.epsilon = num_field(v, "controller", "epsilon", p.epsilon);
        p.k0_init = num_field(v, "controller", "k0_init", p.k0_init);
        p.k1_init = num_field(v, "controller", "k1_init", p.k1_init);
    } else if (type == "asmc") {
        cfg.controller = ControllerType::asmc;
        AsmcParams& p = cfg.asmc;
        p.lambda = num_field(v, "controller", "lambda", p.lambda);
        p.adapt_rate = num_field(v, "controller", "adapt_rate", p.adapt_rate);
        p.gain_floor = num_field(v, "controller", "gain_floor", p.gain_floor);
        p.epsilon = num_field(v, "controller", "epsilon", p.epsilon);
        p.k_init = num_field(v, "controller", "k_init", p.k_init);
    } else if (type == "artdc") {
        cfg.controller = ControllerType::artdc;
        ArtdcParams& p = cfg.artdc;
        p.K = num_field(v, "controller", "K", p.K);
        p.Omega = num_field(v, "controller", "Omega", p.Omega);
        p.alpha = array_field<3>(v, "controller", "alpha", p.alpha);
        p.cubic_leak = num_field(v, "controller", "cubic_leak", p.cubic_leak);
        p.floor_recovery = num_field(v, "controller", "floor_recovery", p.floor_recovery);
        p.gamma_floor = array_field<3>(v, "controller", "gamma_floor", p.gamma_floor);
        p.gamma_init = array_field<3>(v, "controller", "gamma_init", p.gamma_init);
        p.beta_floor = num_field(v, "controller", "beta_floor", p.beta_floor);
        p.rho_floor = num_field(v, "controller", "rho_floor", p.rho_floor);
        p.beta_init = num_field(v, "controller", "beta_init", p.beta_init);
        p.rho_init = num_field(v, "controller", "rho_init", p.rho_init);
        p.epsilon = num_field(v, "controller", "epsilon", p.epsilon);
        p.g_bar = num_field(v, "controller", "g_bar", p.g_bar);
        p.constant_bound_mode =
            bool_field(v, "controller", "constant_bound_mode", p.constant_bound_mode);
        // the switching-variable weights come from the Lyapunov solve
        const Mat2 q = mat2_field(v, "controller", "Q", Mat2::identity());
        const LyapunovPair pair = make_lyapunov_pair(p.K, p.Omega, q);
        p.P2 = pair.P.a12;
        p.P3 = pair.P.a22;
    } else {
        throw ValidationError("controller.type '" + type + "' is not one of proposed|asmc|artdc");
    }
}

inline void parse_shared(const json& j, ScenarioConfig& cfg) {
    cfg.plant = parse_plant(j);
    cfg.nominal = parse_nominal(j);
    cfg.reference = parse_reference(j);
    cfg.delay = parse_delay(j);
    cfg.dt = num_field(j, "config", "dt", cfg.dt);
    cfg.duration = num_field(j, "config", "duration", cfg.duration);
    if (j.contains("initial")) {
        const json& v = j.at("initial");
        cfg.init.theta = num_field(v, "initial", "theta", cfg.init.theta);
        cfg.init.theta_dot = num_field(v, "initial", "theta_dot", cfg.init.theta_dot);
    }
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
}

} // namespace detail

inline ScenarioConfig load_scenario(const json& j) {
    ScenarioConfig cfg;
    detail::parse_shared(j, cfg);
    if (!j.contains("controller"))
        throw ValidationError("config requires a 'controller' section");
    detail::parse_controller(j.at("controller"), cfg);
    cfg.validate();
    return cfg;
}

struct CompareVariant {
    std::string name;
    ScenarioConfig cfg;
};

/// Two or more controller variants sharing plant, reference, delay and
/// grid; one of them is the baseline for the improvement percentages.
struct CompareConfig {
    std::vector<CompareVariant> variants;
    std::size_t baseline = 0;
};

inline CompareConfig load_compare(const json& j) {
    if (!j.contains("variants") || !j.at("variants").is_array() || j.at("variants").size() < 2)
        throw ValidationError("compare config requires a 'variants' array with at least 2 entries");

    CompareConfig out;
    for (const json& v : j.at("variants")) {
        if (!v.contains("name") || !v.at("name").is_string())
            throw ValidationError("each variant requires a 'name'");
        CompareVariant var;
        var.name = v.at("name").get<std::string>();
        detail::parse_shared(j, var.cfg); // shared sections from the top level
        if (!v.contains("controller"))
            throw ValidationError("variant '" + var.name + "' requires a 'controller' section");
        detail::parse_controller(v.at("controller"), var.cfg);
        var.cfg.validate();
        for (const CompareVariant& prev : out.variants)
            if (prev.name == var.name)
                throw ValidationError("duplicate variant name '" + var.name + "'");
        out.variants.push_back(std::move(var));
    }

    if (j.contains("baseline")) {
        const std::string base = j.at("baseline").get<std::string>();
        bool found = false;
        for (std::size_t i = 0; i < out.variants.size(); ++i)
            if (out.variants[i].name == base) {
                out.baseline = i;
                found = true;
            }
        if (!found) throw ValidationError("baseline '" + base + "' does not name a variant");
    }
    return out;
}

/// Inputs of the delay-margin report.
struct DelayBoundConfig {
    double K = 1.0;
    double Omega = 0.5;
    Mat2 Q = Mat2::identity();
    double razumikhin_r = 1.01;
    double eta = 0.7;
    std::optional<double> arolc_k1; // defaults to K
    std::optional<double> arolc_k2; // defaults to 2*Omega
};

inline DelayBoundConfig load_delay_bound(const json& j) {
    DelayBoundConfig cfg;
    cfg.K = detail::num_field(j, "config", "K", cfg.K);
    cfg.Omega = detail::num_field(j, "config", "Omega", cfg.Omega);
    cfg.Q = detail::mat2_field(j, "config", "Q", cfg.Q);
    cfg.razumikhin_r = detail::num_field(j, "config", "razumikhin_r", cfg.razumikhin_r);
    cfg.eta = detail::num_field(j, "config", "eta", cfg.eta);
    if (j.contains("arolc_k1")) cfg.arolc_k1 = j.at("arolc_k1").get<double>();
    if (j.contains("arolc_k2")) cfg.arolc_k2 = j.at("arolc_k2").get<double>();
    return cfg;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ValidationError("config '" + path + "': " + e.what());
    }
}

} // namespace sbw
