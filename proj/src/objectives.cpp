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
#include "dengue/objectives.hpp"

#include <stdexcept>

namespace dengue {

namespace {

void check_lengths(std::size_t values, int n_nodes, const char* what) {
    if (values != static_cast<std::size_t>(n_nodes)) {
        throw std::invalid_argument(std::string(what) + ": length does not match the grid");
    }
}

}  // namespace

void WeightedCostSpec::validate() const {
    if (!(gamma_D > 0.0) || !(gamma_S > 0.0)) {
        throw std::invalid_argument("weighted cost: gamma_D and gamma_S must be strictly positive");
    }
}

std::vector<double> trapezoid_weights(const TimeGrid& grid) {
    std::vector<double> w(static_cast<std::size_t>(grid.n_nodes), grid.step);
    w.front() = 0.5 * grid.step;
    w.back() = 0.5 * grid.step;
    return w;
}

double f1_infected_cost(const StateTrajectory& traj) {
    const auto w = trapezoid_weights(traj.grid);
    check_lengths(traj.states.size(), traj.grid.n_nodes, "f1");
    double acc = 0.0;
    for (std::size_t j = 0; j < traj.states.size(); ++j) acc += w[j] * traj.states[j].i_h;
    return acc;
}

double f2_insecticide_cost(const ControlTrajectory& control, const TimeGrid& grid) {
    check_lengths(control.values.size(), grid.n_nodes, "f2");
    const auto w = trapezoid_weights(grid);
    double acc = 0.0;
    for (std::size_t j = 0; j < control.values.size(); ++j) acc += w[j] * control.values[j];
    return acc;
}

double weighted_cost_J(const StateTrajectory& traj, const ControlTrajectory& control,
                       const WeightedCostSpec& spec) {
    spec.validate();
    check_lengths(control.values.size(), traj.grid.n_nodes, "J");
    check_lengths(traj.states.size(), traj.grid.n_nodes, "J");
    const auto w = trapezoid_weights(traj.grid);
    double acc = 0.0;
    for (std::size_t j = 0; j < control.values.size(); ++j) {
        const double ih = traj.states[j].i_h;
        const double c = control.values[j];
        acc += w[j] * (spec.gamma_D * ih * ih + spec.gamma_S * c * c);
    }
    return acc;
}

ObjectivePoint evaluate_objectives(const StateTrajectory& traj, const ControlTrajectory& control) {
    return {f1_infected_cost(traj), f2_insecticide_cost(control, traj.grid)};
}

}  // namespace dengue
