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

#include <random>

#include "dengue/objectives.hpp"

using namespace dengue;

namespace {

const TimeGrid grid = TimeGrid::uniform(0.0, 84.0, 0.25);

// a trajectory whose i_h column is prescribed; other compartments unused here
StateTrajectory synthetic_ih(const std::vector<double>& ih) {
    StateTrajectory traj;
    traj.grid = grid;
    traj.states.resize(ih.size());
    for (std::size_t j = 0; j < ih.size(); ++j) traj.states[j].i_h = ih[j];
    return traj;
}

}  // namespace

TEST_CASE("trapezoid weights") {
    const auto w = trapezoid_weights(grid);
    REQUIRE(w.size() == 337);
    CHECK(w.front() == 0.125);
    CHECK(w.back() == 0.125);
    CHECK(w[5] == 0.25);
    double total = 0.0;
    for (double v : w) total += v;
    CHECK(total == doctest::Approx(84.0).epsilon(1e-14));
}

TEST_CASE("f1 on prescribed integrands") {
    CHECK(f1_infected_cost(synthetic_ih(std::vector<double>(337, 0.0))) == 0.0);
    // linear ramp i_h(t) = t / T integrates to T/2; trapezoid is exact
    std::vector<double> ramp(337);
    for (int j = 0; j < 337; ++j) ramp[static_cast<std::size_t>(j)] = grid.t(j) / 84.0;
    CHECK(f1_infected_cost(synthetic_ih(ramp)) == doctest::Approx(42.0).epsilon(1e-13));
}

TEST_CASE("f2 on prescribed controls") {
    CHECK(f2_insecticide_cost(ControlTrajectory::constant(0.0, 337), grid) == 0.0);
    CHECK(f2_insecticide_cost(ControlTrajectory::constant(1.0, 337), grid) ==
          doctest::Approx(84.0).epsilon(1e-14));
    ControlTrajectory ramp;
    ramp.values.resize(337);
    for (int j = 0; j < 337; ++j) ramp.values[static_cast<std::size_t>(j)] = grid.t(j) / 84.0;
    CHECK(f2_insecticide_cost(ramp, grid) == doctest::Approx(42.0).epsilon(1e-13));
    CHECK_THROWS_AS(f2_insecticide_cost(ControlTrajectory::constant(1.0, 10), grid),
                    std::invalid_argument);
}

TEST_CASE("quadratic weighted functional") {
    const auto zero_c = ControlTrajectory::constant(0.0, 337);
    const auto ones_c = ControlTrajectory::constant(1.0, 337);
    CHECK(weighted_cost_J(synthetic_ih(std::vector<double>(337, 0.0)), zero_c, {1.0, 1.0}) == 0.0);
    CHECK(weighted_cost_J(synthetic_ih(std::vector<double>(337, 0.0)), ones_c, {1.0, 1.0}) ==
          doctest::Approx(84.0).epsilon(1e-14));
    // gamma_D i_h^2 alone: 2 * 0.5^2 * 84 = 42 (zero control contributes nothing)
    CHECK(weighted_cost_J(synthetic_ih(std::vector<double>(337, 0.5)), zero_c, {2.0, 1.0}) ==
          doctest::Approx(42.0).epsilon(1e-14));
    CHECK_THROWS_AS(weighted_cost_J(synthetic_ih(std::vector<double>(337, 0.0)), zero_c,
                                    {0.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("f2 is monotone in the control") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        ControlTrajectory low, high;
        low.values.resize(337);
        high.values.resize(337);
        for (int j = 0; j < 337; ++j) {
            const double v = uni(rng);
            low.values[static_cast<std::size_t>(j)] = v;
            high.values[static_cast<std::size_t>(j)] = v + uni(rng) * (1.0 - v);
        }
        CHECK(f2_insecticide_cost(high, grid) >= f2_insecticide_cost(low, grid));
    }
}

TEST_CASE("quadrature is exact for integrands linear between nodes") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    // piecewise-linear integrand with random node values: trapezoid equals
    // the exact integral of the interpolant
    std::vector<double> vals(337);
    for (auto& v : vals) v = uni(rng);
    double exact = 0.0;
    for (int j = 0; j + 1 < 337; ++j) {
        exact += 0.25 * 0.5 *
                 (vals[static_cast<std::size_t>(j)] + vals[static_cast<std::size_t>(j) + 1]);
    }
    CHECK(f1_infected_cost(synthetic_ih(vals)) == doctest::Approx(exact).epsilon(1e-12));
}
