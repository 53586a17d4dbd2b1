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
#ifndef DENGUE_MODEL_HPP
#define DENGUE_MODEL_HPP

#include <vector>

namespace dengue {

/**
 * @brief Rates and probabilities of the dengue transmission model.
 *
 * Defaults are the Cape Verde 2009 outbreak calibration. All rates are
 * per day; transmission entries are probabilities per bite.
 */
struct ModelParameters {
    double N_h = 480000.0;               ///< total human population
    double B = 1.0;                      ///< average daily bites per mosquito
    double beta_mh = 0.375;              ///< transmission probability, infected mosquito to human
    double beta_hm = 0.375;              ///< transmission probability, infected human to mosquito
    double mu_h = 1.0 / (71.0 * 365.0);  ///< human mortality rate (1 / lifespan)
    double eta_h = 1.0 / 3.0;            ///< human recovery rate (1 / viremic period)
    double mu_m = 1.0 / 11.0;            ///< adult mosquito mortality rate
    double phi = 6.0;                    ///< eggs per capita per day
    double mu_A = 1.0 / 4.0;             ///< larval mortality rate
    double eta_A = 0.08;                 ///< larva-to-adult maturation rate
    double eta_m = 1.0 / 11.0;           ///< extrinsic incubation rate
    double nu_h = 1.0 / 4.0;             ///< intrinsic incubation rate
    double m = 6.0;                      ///< female mosquitoes per human
    double k = 3.0;                      ///< larvae per human

    /// Throws std::invalid_argument if any rate is non-positive or a
    /// transmission probability leaves [0, 1]. Returns the offending key
    /// in the exception message.
    void validate() const;
};

/**
 * @brief Normalized compartment values at one time instant.
 *
 * Human compartments are fractions of N_h; the aquatic compartment is a
 * fraction of k*N_h and the adult-vector compartments fractions of m*N_h.
 */
struct StateVector {
    double s_h = 0.0;  ///< susceptible humans
    double e_h = 0.0;  ///< exposed humans
    double i_h = 0.0;  ///< infected humans
    double r_h = 0.0;  ///< resistant humans
    double a_m = 0.0;  ///< aquatic-phase vectors
    double s_m = 0.0;  ///< susceptible adult vectors
    double e_m = 0.0;  ///< exposed adult vectors
    double i_m = 0.0;  ///< infected adult vectors

    double human_total() const { return s_h + e_h + i_h + r_h; }
    double min_component() const;
    bool all_finite() const;

    StateVector& operator+=(const StateVector& o);
    friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
    friend StateVector operator*(double s, const StateVector& v);
};

/// Outbreak initial conditions: 0.135% of the human population exposed or
/// infected, vector compartments at carrying capacity and disease-free.
StateVector default_initial_state();

/**
 * @brief Uniform time grid over [t0, T] with n_nodes nodes.
 *
 * The horizon is derived, T = t0 + (n_nodes - 1) * step, so the grid
 * identity holds exactly by construction.
 */
struct TimeGrid {
    double t0 = 0.0;
    double step = 0.25;
    int n_nodes = 337;

    double t(int j) const { return t0 + step * j; }
    double horizon() const { return t0 + step * (n_nodes - 1); }

    /// Builds the grid from an interval [t0, T] and step h; throws
    /// std::invalid_argument if h <= 0 or (T - t0) is not a whole
    /// number of steps (relative tolerance 1e-9).
    static TimeGrid uniform(double t0, double T, double h);
};

/**
 * @brief Insecticide level per grid node, each value in [0, 1].
 */
struct ControlTrajectory {
    std::vector<double> values;

    static ControlTrajectory constant(double level, int n_nodes);
    int size() const { return static_cast<int>(values.size()); }

    /// Throws std::invalid_argument on a value outside [0, 1] or non-finite.
    void validate() const;
};

/**
 * @brief States on the full grid, one StateVector per node.
 */
struct StateTrajectory {
    std::vector<StateVector> states;
    TimeGrid grid;

    /// One compartment as a column, e.g. the infected-human series.
    std::vector<double> component(double StateVector::*member) const;
};

/**
 * @brief Time derivatives of the eight compartments.
 *
 * The insecticide level c removes adult vectors only: it multiplies the
 * s_m, e_m and i_m loss terms. Total function on finite inputs.
 */
StateVector rhs(const StateVector& y, double c, const ModelParameters& p);

/// Transpose-Jacobian product v |-> (d rhs / d y)^T v, kept term-by-term in
/// sync with rhs() for the backward (adjoint) sweep.
StateVector rhs_vjp_state(const StateVector& y, double c, const ModelParameters& p,
                          const StateVector& v);

/// Transpose-Jacobian product v |-> (d rhs / d c)^T v = -(s_m, e_m, i_m) . v.
double rhs_vjp_control(const StateVector& y, const StateVector& v);

/**
 * @brief Classic fixed-step RK4 over the grid, driven by a node-sampled control.
 *
 * The control at stage midpoints is the average of the two bounding node
 * values (piecewise-linear reading of the discrete control). Deterministic:
 * identical inputs give bit-identical trajectories.
 *
 * Throws std::invalid_argument when control.size() != grid.n_nodes.
 */
StateTrajectory integrate_rk4(const ControlTrajectory& control, const ModelParameters& p,
                              const TimeGrid& grid, const StateVector& init);

/// Same, starting from default_initial_state().
StateTrajectory integrate_rk4(const ControlTrajectory& control, const ModelParameters& p,
                              const TimeGrid& grid);

}  // namespace dengue

#endif  // DENGUE_MODEL_HPP
