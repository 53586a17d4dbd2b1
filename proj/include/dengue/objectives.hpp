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
#ifndef DENGUE_OBJECTIVES_HPP
#define DENGUE_OBJECTIVES_HPP

#include <vector>

#include "dengue/model.hpp"

namespace dengue {

/// A point in objective space: f1 = cumulative infected-population cost,
/// f2 = cumulative insecticide cost.
struct ObjectivePoint {
    double f1 = 0.0;
    double f2 = 0.0;
};

/// Weights of the quadratic cost functional. No defaults: the calibration
/// is a modelling choice the caller must make.
struct WeightedCostSpec {
    double gamma_D;  ///< weight of squared infected fraction
    double gamma_S;  ///< weight of squared insecticide level

    /// Throws std::invalid_argument unless both weights are strictly positive.
    void validate() const;
};

/// Trapezoidal quadrature weights on the grid: (h/2, h, ..., h, h/2).
std::vector<double> trapezoid_weights(const TimeGrid& grid);

/// Integral of the infected-human fraction over the horizon, trapezoidal rule.
double f1_infected_cost(const StateTrajectory& traj);

/// Integral of the insecticide level over the horizon, trapezoidal rule.
/// Throws std::invalid_argument on a control/grid length mismatch.
double f2_insecticide_cost(const ControlTrajectory& control, const TimeGrid& grid);

/// Quadratic functional gamma_D * i_h^2 + gamma_S * c^2 integrated over the
/// horizon, for single-objective comparison runs.
double weighted_cost_J(const StateTrajectory& traj, const ControlTrajectory& control,
                       const WeightedCostSpec& spec);

/// Both scalarized costs of one simulated control.
ObjectivePoint evaluate_objectives(const StateTrajectory& traj, const ControlTrajectory& control);

}  // namespace dengue

#endif  // DENGUE_OBJECTIVES_HPP
