#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sbw/plant.hpp"

using namespace sbw;

TEST_CASE("friction: Coulomb + Stribeck shape") {
    PlantParams p; // c_f = 0.5, s_f = 1, v_s = 0.1

    CHECK(friction(0.0, p) == doctest::Approx(1.0).epsilon(1e-15)); // tanh(0)=0, exp(0)=1
    CHECK(friction(1e6, p) == doctest::Approx(0.5).epsilon(1e-12)); // tanh saturates, peak gone
    CHECK(friction(-1e6, p) == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(friction(0.1, p) ==
          doctest::Approx(0.5 * std::tanh(0.1) + std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("friction: bounded by coulomb + stribeck") {
    PlantParams p;
    p.coulomb = 0.7;
    p.stribeck = 1.3;
    const double bound = p.coulomb + p.stribeck;
    for (int i = -5000; i <= 5000; ++i) {
        const double v = i * 0.01; // [-50, 50]
        CHECK(std::abs(friction(v, p)) <= bound + 1e-12);
    }
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> wide(-1e4, 1e4);
    for (int i = 0; i < 2000; ++i)
        CHECK(std::abs(friction(wide(rng), p)) <= bound + 1e-12);
}

TEST_CASE("disturbances: sinusoidal rack and tire loads") {
    PlantParams p;
    const auto d0 = disturbances(0.0, p);
    CHECK(d0.rack_force == 0.0);
    CHECK(d0.tire_torque == 0.0);

    const auto dq = disturbances(M_PI / 0.06, p); // quarter period of the rack load
    CHECK(dq.rack_force == doctest::Approx(1000.0).epsilon(1e-12));

    const auto d10 = disturbances(10.0, p);
    CHECK(d10.rack_force == doctest::Approx(1000.0 * std::sin(0.3)).epsilon(1e-15));
    CHECK(d10.tire_torque == doctest::Approx(5.0 * std::sin(0.5)).epsilon(1e-15));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> ts(0.0, 1e3);
    for (int i = 0; i < 500; ++i) {
        const auto d = disturbances(ts(rng), p);
        CHECK(std::abs(d.rack_force) <= p.rack_amplitude);
        CHECK(std::abs(d.tire_torque) <= p.tire_amplitude);
    }
}

TEST_CASE("accel: torque balance") {
    PlantParams p;

    SUBCASE("standstill with no torque leaves only the friction peak") {
        SimState s{0.0, 0.1, 0.0};
        CHECK(accel(s, 0.0, p) == doctest::Approx(-1.0 / 0.14).epsilon(1e-15));
    }

    SUBCASE("exact cancellation gives zero acceleration") {
        SimState s{7.3, 0.4, 1.7};
        const auto d = disturbances(s.t, p);
        const double tau = p.damping * s.theta_dot + friction(s.theta_dot, p) +
                           p.rack_ratio * d.rack_force + d.tire_torque;
        CHECK(accel(s, tau, p) == doctest::Approx(0.0).epsilon(1e-12));
    }

    SUBCASE("affine in the applied torque with slope 1/J") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> u(-10.0, 10.0);
        for (int i = 0; i < 200; ++i) {
            SimState s{std::abs(u(rng)), u(rng), u(rng)};
            const double t1 = u(rng), t2 = t1 + 3.7;
            const double slope = (accel(s, t2, p) - accel(s, t1, p)) / (t2 - t1);
            CHECK(slope == doctest::Approx(1.0 / p.inertia).epsilon(1e-9));
        }
    }

    SUBCASE("doubling the inertia halves the acceleration at fixed residual") {
        SimState s{2.0, 0.3, 0.9};
        PlantParams p2 = p;
        p2.inertia = 2.0 * p.inertia;
        CHECK(accel(s, 4.0, p2) == doctest::Approx(0.5 * accel(s, 4.0, p)).epsilon(1e-12));
    }
}

TEST_CASE("decompose: nominal/uncertain split") {
    PlantParams p;

    SUBCASE("perfect nominal model") {
        NominalModel n{p.inertia, p.damping};
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (int i = 0; i < 200; ++i) {
            SimState s{std::abs(u(rng)), u(rng), u(rng)};
            const auto d = decompose(p, n, s);
            CHECK(d.g_bar == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(d.g_hat == doctest::Approx(1.0 / p.inertia).epsilon(1e-15));
            // residual uncertainty is exactly the friction + disturbance load
            const double f = accel(s, 0.0, p);
            const auto dist = disturbances(s.t, p);
            const double expected = -(friction(s.theta_dot, p) +
                                      p.rack_ratio * dist.rack_force + dist.tire_torque) /
                                    p.inertia;
            CHECK(f - d.f_hat == doctest::Approx(expected).epsilon(1e-9));
        }
    }

    SUBCASE("inertia ratio error") {
        NominalModel n{1.5 * p.inertia, p.damping};
        const auto d = decompose(p, n, SimState{});
        CHECK(d.g_bar == doctest::Approx(0.5).epsilon(1e-12));
    }

    SUBCASE("model ratio error at or past one is rejected") {
        CHECK_THROWS_AS(decompose(p, NominalModel{2.5 * p.inertia, p.damping}, SimState{}),
                        ValidationError);
        CHECK_THROWS_AS(decompose(p, NominalModel{2.0 * p.inertia, p.damping}, SimState{}),
                        ValidationError);
        CHECK_THROWS_AS(decompose(p, NominalModel{-0.1, p.damping}, SimState{}), ValidationError);
    }
}

TEST_CASE("plant parameter validation") {
    PlantParams p;
    p.inertia = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = PlantParams{};
    p.stribeck_vel = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = PlantParams{};
    p.damping = -0.1;
    CHECK_THROWS_AS(p.validate(), ValidationError);
}
