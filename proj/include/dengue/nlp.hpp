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
#ifndef DENGUE_NLP_HPP
#define DENGUE_NLP_HPP

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "dengue/model.hpp"
#include "dengue/objectives.hpp"

namespace dengue::nlp {

/// A differentiable scalar function: returns the value at x and, when grad
/// is non-null, writes the gradient into it.
using DiffFunction = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd* grad)>;

/**
 * @brief A box-constrained single-objective problem with smooth inequality
 * constraints, the output of any scalarization.
 *
 * Constraints use the g(x) <= 0 convention. When objective_branches is
 * non-empty the objective is the pointwise maximum of those smooth branches
 * (a nonsmooth minimax problem) and `objective` is ignored.
 */
struct ScalarProblem {
    DiffFunction objective;
    std::vector<DiffFunction> inequality_constraints;
    std::vector<DiffFunction> objective_branches;
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;

    int n_vars() const { return static_cast<int>(lower.size()); }
    bool is_minimax() const { return objective_branches.size() > 1; }

    /// Throws std::invalid_argument on inconsistent bounds.
    void validate() const;
};

enum class GradientMode { adjoint, finite_difference };

struct SolveOptions {
    int max_function_evaluations = 20000;
    GradientMode gradient_mode = GradientMode::adjoint;
    double constraint_tolerance = 1e-6;
    double stationarity_tolerance = 1e-6;
    bool record_merit_history = false;
};

enum class SolveStatus { converged, eval_budget_exhausted, numerical_failure };

const char* to_string(SolveStatus s);

struct SolveResult {
    Eigen::VectorXd x_star;
    double objective_value = 0.0;
    double constraint_violation = 0.0;  ///< max positive constraint part
    SolveStatus status = SolveStatus::numerical_failure;
    int evaluations_used = 0;
    /// Accepted-iterate merit values, filled when record_merit_history is
    /// set. Outer rounds re-parameterize the merit; a NaN entry separates
    /// them, and values are non-increasing within each segment.
    std::vector<double> merit_history;
};

/**
 * @brief Minimizes a ScalarProblem from x0.
 *
 * Augmented-Lagrangian outer loop over the inequality constraints with a
 * projected limited-memory quasi-Newton inner solver for the box. Minimax
 * objectives take a two-branch steepest-descent path at kinks. An x0 outside
 * the box is projected onto it first. The returned point is never worse than
 * x0 in (constraint violation, objective) lexicographic order.
 */
SolveResult minimize(const ScalarProblem& problem, const Eigen::VectorXd& x0,
                     const SolveOptions& opts);

/// Which discretized functional to differentiate.
enum class WhichObjective { f1, f2, weighted_j, composite };

/// Parameters of an objective_gradient request. `composite` differentiates
/// f1_weight * f1 + f2_weight * f2 in a single backward sweep.
struct GradientRequest {
    WhichObjective which = WhichObjective::f1;
    double f1_weight = 1.0;
    double f2_weight = 0.0;
    WeightedCostSpec cost{1.0, 1.0};  ///< used by weighted_j only
};

/**
 * @brief Gradient of a trapezoidal cost functional with respect to every
 * control node, by a discrete adjoint of the RK4 scheme.
 *
 * One backward sweep of the RK4-discretized dynamics; differentiates the
 * discretization itself, so it is consistent with integrate_rk4 to round-off.
 * Throws std::runtime_error on non-finite intermediates.
 */
std::vector<double> objective_gradient(const ControlTrajectory& control,
                                       const ModelParameters& p, const TimeGrid& grid,
                                       const StateVector& init, const GradientRequest& req);

/// Same backward sweep over an already-integrated trajectory of `control`.
std::vector<double> objective_gradient(const StateTrajectory& traj,
                                       const ControlTrajectory& control,
                                       const ModelParameters& p, const GradientRequest& req);

/// Central finite differences, the test oracle and the fallback gradient mode.
Eigen::VectorXd finite_difference_gradient(const std::function<double(const Eigen::VectorXd&)>& f,
                                           const Eigen::VectorXd& x, double step = 1e-5);

}  // namespace dengue::nlp

#endif  // DENGUE_NLP_HPP
