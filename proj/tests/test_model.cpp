/*
 * Copyright (C) 2026 denguectl contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dengue/model.hpp"
#include "dengue/objectives.hpp"

using namespace dengue;

namespace {

TimeGrid default_grid() { return TimeGrid::uniform(0.0, 84.0, 0.25); }

ControlTrajectory random_control(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    ControlTrajectory c;
    c.values.resize(static_cast<std::size_t>(n));
    for (auto& v : c.values) v = uni(rng);
    return c;
}

double max_human_sum_deviation(const StateTrajectory& traj) {
    double dev = 0.0;
    for (const auto& y : traj.states) dev = std::max(dev, std::abs(y.human_total() - 1.0));
    return dev;
}

double terminal_state_distance(const StateVector& a, const StateVector& b) {
    double acc = 0.0;
    for (double d : {a.s_h - b.s_h, a.e_h - b.e_h, a.i_h - b.i_h, a.r_h - b.r_h, a.a_m - b.a_m,
                     a.s_m - b.s_m, a.e_m - b.e_m, a.i_m - b.i_m}) {
        acc += d * d;
    }
    return std::sqrt(acc);
}

}  // namespace

TEST_CASE("grid construction and validation") {
    const TimeGrid g = default_grid();
    CHECK(g.n_nodes == 337);
    CHECK(g.horizon() == doctest::Approx(84.0).epsilon(1e-14));
    CHECK(g.t(1) == doctest::Approx(0.25));
    CHECK_THROWS_AS(TimeGrid::uniform(0.0, 84.0, -0.25), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid::uniform(0.0, 84.0, 0.26), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid::uniform(84.0, 0.0, 0.25), std::invalid_argument);
}

TEST_CASE("parameter validation names the offending field") {
    ModelParameters p;
    CHECK_NOTHROW(p.validate());
    p.eta_m = 0.0;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("eta_m"), std::invalid_argument);
    p = ModelParameters{};
    p.beta_mh = 1.5;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("beta_mh"), std::invalid_argument);
}

TEST_CASE("derivatives at the outbreak initial conditions") {
    const ModelParameters p;
    const StateVector y0 = default_initial_state();

    const StateVector d = rhs(y0, 0.0, p);
    // no infected vectors yet, so only demography moves s_h
    const double expected_dsh = p.mu_h * (1.0 - y0.s_h);
    CHECK(d.s_h == doctest::Approx(expected_dsh).epsilon(1e-12));
    CHECK(expected_dsh == doctest::Approx(5.209e-8).epsilon(1e-3));
    // e_m(0) = i_m(0) = 0 keeps the infected-vector compartment still
    CHECK(d.i_m == 0.0);
}

TEST_CASE("human derivatives cancel whenever the human fractions sum to one") {
    const ModelParameters p;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        StateVector y;
        y.s_h = uni(rng);
        y.e_h = uni(rng) * (1.0 - y.s_h);
        y.i_h = uni(rng) * (1.0 - y.s_h - y.e_h);
        y.r_h = 1.0 - y.s_h - y.e_h - y.i_h;
        y.a_m = uni(rng);
        y.s_m = uni(rng);
        y.e_m = uni(rng);
        y.i_m = uni(rng);
        const StateVector d = rhs(y, uni(rng), p);
        CHECK(std::abs(d.s_h + d.e_h + d.i_h + d.r_h) < 1e-15);
    }
}

TEST_CASE("uncontrolled run conserves the human population") {
    const ModelParameters p;
    const TimeGrid g = default_grid();
    const auto traj = integrate_rk4(ControlTrajectory::constant(0.0, g.n_nodes), p, g);
    CHECK(max_human_sum_deviation(traj) <= 1e-9);
    CHECK(traj.states[0].s_h == default_initial_state().s_h);
}

TEST_CASE("full-control run reproduces the minimum-infection integral") {
    const ModelParameters p;
    const TimeGrid g = default_grid();
    const auto traj = integrate_rk4(ControlTrajectory::constant(1.0, g.n_nodes), p, g);
    const double f1 = f1_infected_cost(traj);
    CHECK(std::abs(f1 - 0.0042) < 4e-4);
    // frozen value cross-checked against an independent implementation
    CHECK(f1 == doctest::Approx(0.00420068).epsilon(1e-4));
}

TEST_CASE("states stay nonnegative for random admissible controls") {
    const ModelParameters p;
    const TimeGrid g = default_grid();
    std::mt19937 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto traj = integrate_rk4(random_control(rng, g.n_nodes), p, g);
        double lo = 0.0;
        for (const auto& y : traj.states) lo = std::min(lo, y.min_component());
        CHECK(lo >= -1e-9);
    }
}

TEST_CASE("integration is deterministic") {
    const ModelParameters p;
    const TimeGrid g = default_grid();
    std::mt19937 rng(3);
    const auto c = random_control(rng, g.n_nodes);
    const auto a = integrate_rk4(c, p, g);
    const auto b = integrate_rk4(c, p, g);
    for (int j = 0; j < g.n_nodes; ++j) {
        CHECK(a.states[static_cast<std::size_t>(j)].i_h ==
              b.states[static_cast<std::size_t>(j)].i_h);
        CHECK(a.states[static_cast<std::size_t>(j)].s_m ==
              b.states[static_cast<std::size_t>(j)].s_m);
    }
}

TEST_CASE("control/grid size mismatch is a configuration error") {
    const ModelParameters p;
    const TimeGrid g = default_grid();
    CHECK_THROWS_AS(integrate_rk4(ControlTrajectory::constant(0.0, 10), p, g),
                    std::invalid_argument);
}

TEST_CASE("observed RK4 self-convergence order on the uncontrolled run") {
    const ModelParameters p;
    const StateVector init = default_initial_state();
    auto terminal = [&](double h) {
        const TimeGrid g = TimeGrid::uniform(0.0, 84.0, h);
        return integrate_rk4(ControlTrajectory::constant(0.0, g.n_nodes), p, g, init)
            .states.back();
    };
    const StateVector ref = terminal(0.015625);
    const double e_coarse = terminal_state_distance(terminal(0.25), ref);
    const double e_mid = terminal_state_distance(terminal(0.125), ref);
    const double e_fine = terminal_state_distance(terminal(0.0625), ref);
    const double order_1 = std::log2(e_coarse / e_mid);
    const double order_2 = std::log2(e_mid / e_fine);
    CHECK(order_1 >= 3.9);
    CHECK(order_2 >= 3.9);
}

TEST_CASE("more insecticide never increases the cumulative infection cost") {
    const ModelParameters p;
    const TimeGrid g = default_grid();
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        ControlTrajectory low = random_control(rng, g.n_nodes);
        ControlTrajectory high = low;
        for (auto& v : high.values) v += uni(rng) * (1.0 - v);  // node-wise >= low
        const double f1_low = f1_infected_cost(integrate_rk4(low, p, g));
        const double f1_high = f1_infected_cost(integrate_rk4(high, p, g));
        CHECK(f1_high <= f1_low + 1e-12);
    }
}

TEST_CASE("control trajectory validation") {
    ControlTrajectory c = ControlTrajectory::constant(0.5, 5);
    CHECK_NOTHROW(c.validate());
    c.values[3] = 1.5;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("node 3"), std::invalid_argument);
}
