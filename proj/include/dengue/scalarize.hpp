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
#ifndef DENGUE_SCALARIZE_HPP
#define DENGUE_SCALARIZE_HPP

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dengue/nlp.hpp"
#include "dengue/objectives.hpp"

namespace dengue {

/**
 * @brief Corner solutions of the biobjective problem and the normalization
 * frame they induce.
 *
 * anchor_f2 is the analytic zero control (f2 = 0 is the floor of a
 * nonnegative integral); anchor_f1 is the solver minimum of f1 alone.
 */
struct AnchorData {
    ControlTrajectory anchor_f1_control;
    ObjectivePoint anchor_f1;
    ControlTrajectory anchor_f2_control;
    ObjectivePoint anchor_f2;

    ObjectivePoint ideal() const { return {anchor_f1.f1, anchor_f2.f2}; }
    ObjectivePoint nadir() const { return {anchor_f2.f1, anchor_f1.f2}; }

    /// Throws std::runtime_error when nadir <= ideal in a component (the
    /// normalization of the objectives would degenerate).
    void validate() const;
};

enum class ScalarizationMethod { eps_constraint, chebyshev, goal_attainment, normal_constraint };

std::string to_string(ScalarizationMethod m);
ScalarizationMethod parse_method(std::string_view name);  // throws std::invalid_argument

/// The parameter tuple of one scalarized subproblem.
struct ScalarizationSpec {
    ScalarizationMethod method = ScalarizationMethod::eps_constraint;
    double eps = 0.0;                   ///< f2 upper bound (eps-constraint)
    double w1 = 0.0;                    ///< objective weights (other methods)
    double w2 = 0.0;
    ObjectivePoint reference{0.0, 0.0};  ///< z* for chebyshev / goal attainment

    /// The scalar sweep parameter recorded in archive exports: eps for the
    /// eps-constraint method, w1 otherwise.
    double beta_param() const;
};

struct ArchiveEntry {
    ControlTrajectory control;
    ObjectivePoint point;
    ScalarizationSpec spec;
    nlp::SolveStatus status = nlp::SolveStatus::numerical_failure;
};

/// Output of one Algorithm-1 sweep: every subproblem minimizer with its
/// parameters and solve status, plus the anchors used to scalarize.
struct ParetoArchive {
    std::vector<ArchiveEntry> entries;
    std::string method_name;
    std::string config_digest;  ///< FNV-1a hash of the run configuration
    AnchorData anchors;

    std::size_t failure_count() const;  // numerical failures only
};

/**
 * @brief Caching bridge between control vectors and the model: simulates at
 * most once per distinct control and serves f1/f2 values and adjoint (or
 * finite-difference) gradients from that trajectory.
 *
 * One instance serves one solve at a time; independent solves use
 * independent evaluators.
 */
class ObjectiveEvaluator {
   public:
    ObjectiveEvaluator(ModelParameters params, TimeGrid grid, StateVector init,
                       nlp::GradientMode mode = nlp::GradientMode::adjoint);

    int n_controls() const { return grid_.n_nodes; }
    const ModelParameters& parameters() const { return params_; }
    const TimeGrid& grid() const { return grid_; }
    const StateVector& initial_state() const { return init_; }

    double f1(const Eigen::VectorXd& u);
    double f2(const Eigen::VectorXd& u) const;
    ObjectivePoint objectives(const Eigen::VectorXd& u);

    Eigen::VectorXd f1_gradient(const Eigen::VectorXd& u);
    const Eigen::VectorXd& f2_gradient() const { return f2_grad_; }

    const StateTrajectory& trajectory(const Eigen::VectorXd& u);

    long simulations() const { return simulations_; }

   private:
    void refresh(const Eigen::VectorXd& u);

    ModelParameters params_;
    TimeGrid grid_;
    StateVector init_;
    nlp::GradientMode mode_;
    Eigen::VectorXd f2_grad_;

    Eigen::VectorXd cached_u_;
    StateTrajectory cached_traj_;
    double cached_f1_ = 0.0;
    bool cache_valid_ = false;
    long simulations_ = 0;
};

using EvaluatorPtr = std::shared_ptr<ObjectiveEvaluator>;

/// Computes both anchors: c == 0 analytically, the f1 minimizer by a box
/// solve warm-started at the monotone-limit candidate c == 1.
AnchorData compute_anchors(const ModelParameters& p, const TimeGrid& grid,
                           const nlp::SolveOptions& opts, const StateVector& init);
AnchorData compute_anchors(const ModelParameters& p, const TimeGrid& grid,
                           const nlp::SolveOptions& opts);

/// minimize f1 subject to f2 <= eps over the unit box.
nlp::ScalarProblem eps_constraint_problem(double eps, EvaluatorPtr ev);

/// minimize max_i w_i (f_i - z*_i): a two-branch minimax over the box.
nlp::ScalarProblem chebyshev_problem(double w1, double w2, ObjectivePoint z_star,
                                     EvaluatorPtr ev);

/// Epigraph reformulation of the same minimax: minimize alpha subject to
/// w_i (f_i - z*_i) <= alpha, alpha in [0, alpha_upper], extra decision
/// coordinate appended after the control nodes.
nlp::ScalarProblem goal_attainment_problem(double w1, double w2, ObjectivePoint z_star,
                                           double alpha_upper, EvaluatorPtr ev);

/// Feasible auxiliary start for the goal-attainment problem at control u.
double goal_attainment_alpha0(double w1, double w2, ObjectivePoint z_star, ObjectivePoint at);

/// minimize normalized f2bar subject to the normal-line cut
/// (f1bar - z1) - (f2bar - z2) <= 0 through z = Phi w.
nlp::ScalarProblem normal_constraint_problem(double w1, double w2, const AnchorData& anchors,
                                             EvaluatorPtr ev);

/**
 * @brief Warm-started Pareto set approximation.
 *
 * Generates the n-point parameter grid of the chosen method (eps evenly on
 * [0, f2_nadir]; weights w1 = k/(n-1) with a 1e-6 floor, renormalized), then
 * solves the subproblems in the order that walks the minimizer continuously
 * from the c == 0 anchor toward the c == 1 end, each solve starting from the
 * previous minimizer. Numerical failures are recorded and skipped for warm
 * starting.
 */
ParetoArchive approximate_pareto(ScalarizationMethod method, int n_subproblems,
                                 const ModelParameters& p, const TimeGrid& grid,
                                 const nlp::SolveOptions& opts);

/// Same, over a precomputed evaluator and anchors (anchors must match p/grid).
ParetoArchive approximate_pareto(ScalarizationMethod method, int n_subproblems, EvaluatorPtr ev,
                                 const AnchorData& anchors, const nlp::SolveOptions& opts);

}  // namespace dengue

#endif  // DENGUE_SCALARIZE_HPP
