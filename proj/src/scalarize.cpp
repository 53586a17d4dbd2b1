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
#include "dengue/scalarize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dengue {

namespace {

constexpr double kWeightFloor = 1e-6;
constexpr double kUtopianShift = 1e-4;  // z* = ideal - shift * (nadir - ideal)

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

ControlTrajectory to_control(const Eigen::VectorXd& u) {
    return ControlTrajectory{std::vector<double>(u.data(), u.data() + u.size())};
}

}  // namespace

void AnchorData::validate() const {
    const ObjectivePoint lo = ideal();
    const ObjectivePoint hi = nadir();
    if (!(hi.f1 > lo.f1) || !(hi.f2 > lo.f2)) {
        throw std::runtime_error("anchors: nadir does not exceed ideal; normalization degenerates");
    }
}

std::string to_string(ScalarizationMethod m) {
    switch (m) {
        case ScalarizationMethod::eps_constraint: return "eps-constraint";
        case ScalarizationMethod::chebyshev: return "chebyshev";
        case ScalarizationMethod::goal_attainment: return "goal-attainment";
        case ScalarizationMethod::normal_constraint: return "normal-constraint";
    }
    return "unknown";
}

ScalarizationMethod parse_method(std::string_view name) {
    if (name == "eps-constraint") return ScalarizationMethod::eps_constraint;
    if (name == "chebyshev") return ScalarizationMethod::chebyshev;
    if (name == "goal-attainment") return ScalarizationMethod::goal_attainment;
    if (name == "normal-constraint") return ScalarizationMethod::normal_constraint;
    throw std::invalid_argument("unknown scalarization method '" + std::string(name) +
                                "' (expected eps-constraint, chebyshev, goal-attainment or "
                                "normal-constraint)");
}

double ScalarizationSpec::beta_param() const {
    return method == ScalarizationMethod::eps_constraint ? eps : w1;
}

std::size_t ParetoArchive::failure_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const ArchiveEntry& e) {
            return e.status == nlp::SolveStatus::numerical_failure;
        }));
}

ObjectiveEvaluator::ObjectiveEvaluator(ModelParameters params, TimeGrid grid, StateVector init,
                                       nlp::GradientMode mode)
    : params_(params), grid_(grid), init_(init), mode_(mode) {
    params_.validate();
    f2_grad_ = to_eigen(trapezoid_weights(grid_));
}

void ObjectiveEvaluator::refresh(const Eigen::VectorXd& u) {
    if (cache_valid_ && cached_u_.size() == u.size() && cached_u_ == u) return;
    cached_u_ = u;
    cached_traj_ = integrate_rk4(to_control(u), params_, grid_, init_);
    cached_f1_ = f1_infected_cost(cached_traj_);
    cache_valid_ = true;
    ++simulations_;
}

double ObjectiveEvaluator::f1(const Eigen::VectorXd& u) {
    refresh(u);
    return cached_f1_;
}

double ObjectiveEvaluator::f2(const Eigen::VectorXd& u) const { return f2_grad_.dot(u); }

ObjectivePoint ObjectiveEvaluator::objectives(const Eigen::VectorXd& u) {
    return {f1(u), f2(u)};
}

const StateTrajectory& ObjectiveEvaluator::trajectory(const Eigen::VectorXd& u) {
    refresh(u);
    return cached_traj_;
}

Eigen::VectorXd ObjectiveEvaluator::f1_gradient(const Eigen::VectorXd& u) {
    if (mode_ == nlp::GradientMode::finite_difference) {
        return nlp::finite_difference_gradient([this](const Eigen::VectorXd& v) {
            ControlTrajectory c = to_control(v);
            return f1_infected_cost(integrate_rk4(c, params_, grid_, init_));
        }, u);
    }
    refresh(u);
    const auto g = nlp::objective_gradient(cached_traj_, to_control(u), params_,
                                           nlp::GradientRequest{nlp::WhichObjective::f1});
    return to_eigen(g);
}

AnchorData compute_anchors(const ModelParameters& p, const TimeGrid& grid,
                           const nlp::SolveOptions& opts, const StateVector& init) {
    auto ev = std::make_shared<ObjectiveEvaluator>(p, grid, init, opts.gradient_mode);
    const int n = grid.n_nodes;

    AnchorData anchors;
    // f2 floor: the zero control is the unique minimizer of a nonnegative
    // integral of c, and f1 plays no role in that corner.
    anchors.anchor_f2_control = ControlTrajectory::constant(0.0, n);
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(n);
    anchors.anchor_f2 = ev->objectives(zero);

    // f1 corner: box minimum of f1 alone. f1 is node-wise monotone
    // decreasing in the control, so the upper corner is the candidate;
    // the solve verifies stationarity and corrects if the landscape says
    // otherwise.
    nlp::ScalarProblem prob;
    prob.lower = Eigen::VectorXd::Zero(n);
    prob.upper = Eigen::VectorXd::Ones(n);
    prob.objective = [ev](const Eigen::VectorXd& u, Eigen::VectorXd* grad) {
        if (grad) *grad = ev->f1_gradient(u);
        return ev->f1(u);
    };
    const nlp::SolveResult res = nlp::minimize(prob, Eigen::VectorXd::Ones(n), opts);
    if (res.status == nlp::SolveStatus::numerical_failure) {
        throw std::runtime_error("compute_anchors: f1 anchor solve failed numerically");
    }
    anchors.anchor_f1_control = to_control(res.x_star);
    anchors.anchor_f1 = ev->objectives(res.x_star);
    anchors.validate();
    return anchors;
}

AnchorData compute_anchors(const ModelParameters& p, const TimeGrid& grid,
                           const nlp::SolveOptions& opts) {
    return compute_anchors(p, grid, opts, default_initial_state());
}

nlp::ScalarProblem eps_constraint_problem(double eps, EvaluatorPtr ev) {
    if (eps < 0.0) throw std::invalid_argument("eps-constraint: eps must be nonnegative");
    const int n = ev->n_controls();
    nlp::ScalarProblem prob;
    prob.lower = Eigen::VectorXd::Zero(n);
    prob.upper = Eigen::VectorXd::Ones(n);
    prob.objective = [ev](const Eigen::VectorXd& u, Eigen::VectorXd* grad) {
        if (grad) *grad = ev->f1_gradient(u);
        return ev->f1(u);
    };
    prob.inequality_constraints.push_back(
        [ev, eps](const Eigen::VectorXd& u, Eigen::VectorXd* grad) {
            if (grad) *grad = ev->f2_gradient();
            return ev->f2(u) - eps;
        });
    return prob;
}

nlp::ScalarProblem chebyshev_problem(double w1, double w2, ObjectivePoint z_star,
                                     EvaluatorPtr ev) {
    const int n = ev->n_controls();
    nlp::ScalarProblem prob;
    prob.lower = Eigen::VectorXd::Zero(n);
    prob.upper = Eigen::VectorXd::Ones(n);
    prob.objective_branches.push_back(
        [ev, w1, z_star](const Eigen::VectorXd& u, Eigen::VectorXd* grad) {
            if (grad) *grad = w1 * ev->f1_gradient(u);
            return w1 * (ev->f1(u) - z_star.f1);
        });
    prob.objective_branches.push_back(
        [ev, w2, z_star](const Eigen::VectorXd& u, Eigen::VectorXd* grad) {
            if (grad) *grad = w2 * ev->f2_gradient();
            return w2 * (ev->f2(u) - z_star.f2);
        });
    return prob;
}

double goal_attainment_alpha0(double w1, double w2, ObjectivePoint z_star, ObjectivePoint at) {
    return std::max(0.0, std::max(w1 * (at.f1 - z_star.f1), w2 * (at.f2 - z_star.f2)));
}

nlp::ScalarProblem goal_attainment_problem(double w1, double w2, ObjectivePoint z_star,
                                           double alpha_upper, EvaluatorPtr ev) {
    const int n = ev->n_controls();
    nlp::ScalarProblem prob;
    prob.lower = Eigen::VectorXd::Zero(n + 1);
    prob.upper = Eigen::VectorXd::Ones(n + 1);
    prob.upper[n] = alpha_upper;
    prob.objective = [n](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
        if (grad) {
            grad->setZero(x.size());
            (*grad)[n] = 1.0;
        }
        return x[n];
    };
    prob.inequality_constraints.push_back(
        [ev, w1, z_star, n](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
            const Eigen::VectorXd u = x.head(n);
            if (grad) {
                grad->setZero(x.size());
                grad->head(n) = w1 * ev->f1_gradient(u);
                (*grad)[n] = -1.0;
            }
            return w1 * (ev->f1(u) - z_star.f1) - x[n];
        });
    prob.inequality_constraints.push_back(
        [ev, w2, z_star, n](const Eigen::VectorXd& x, Eigen::VectorXd* grad) {
            const Eigen::VectorXd u = x.head(n);
            if (grad) {
                grad->setZero(x.size());
                grad->head(n) = w2 * ev->f2_gradient();
                (*grad)[n] = -1.0;
            }
            return w2 * (ev->f2(u) - z_star.f2) - x[n];
        });
    return prob;
}

nlp::ScalarProblem normal_constraint_problem(double w1, double w2, const AnchorData& anchors,
                                             EvaluatorPtr ev) {
    anchors.validate();
    const ObjectivePoint ideal = anchors.ideal();
    const ObjectivePoint nadir = anchors.nadir();
    const double d1 = nadir.f1 - ideal.f1;
    const double d2 = nadir.f2 - ideal.f2;
    // normalized corners are mu1 = (0,1), mu2 = (1,0); the cut through
    // z = Phi w = (w2, w1) along vbar = mu2 - mu1 = (1,-1) reads
    // (f1bar - w2) - (f2bar - w1) <= 0
    const double cut = w2 - w1;

    const int n = ev->n_controls();
    nlp::ScalarProblem prob;
    prob.lower = Eigen::VectorXd::Zero(n);
    prob.upper = Eigen::VectorXd::Ones(n);
    prob.objective = [ev, ideal, d2](const Eigen::VectorXd& u, Eigen::VectorXd* grad) {
        if (grad) *grad = ev->f2_gradient() / d2;
        return (ev->f2(u) - ideal.f2) / d2;
    };
    prob.inequality_constraints.push_back(
        [ev, ideal, d1, d2, cut](const Eigen::VectorXd& u, Eigen::VectorXd* grad) {
            if (grad) *grad = ev->f1_gradient(u) / d1 - ev->f2_gradient() / d2;
            const double f1bar = (ev->f1(u) - ideal.f1) / d1;
            const double f2bar = (ev->f2(u) - ideal.f2) / d2;
            return f1bar - f2bar - cut;
        });
    return prob;
}

namespace {

struct WeightPair {
    double w1, w2;
};

WeightPair weight_at(int k, int count) {
    double w1 = (count > 1) ? static_cast<double>(k) / (count - 1) : 1.0;
    double w2 = 1.0 - w1;
    w1 = std::max(w1, kWeightFloor);
    w2 = std::max(w2, kWeightFloor);
    const double sum = w1 + w2;
    return {w1 / sum, w2 / sum};
}

}  // namespace

ParetoArchive approximate_pareto(ScalarizationMethod method, int n_subproblems, EvaluatorPtr ev,
                                 const AnchorData& anchors, const nlp::SolveOptions& opts) {
    if (n_subproblems < 1) {
        throw std::invalid_argument("approximate_pareto: n_subproblems must be >= 1");
    }
    anchors.validate();
    const int n = ev->n_controls();
    const ObjectivePoint ideal = anchors.ideal();
    const ObjectivePoint nadir = anchors.nadir();
    const ObjectivePoint utopian{ideal.f1 - kUtopianShift * (nadir.f1 - ideal.f1),
                                 ideal.f2 - kUtopianShift * (nadir.f2 - ideal.f2)};
    const double alpha_upper =
        10.0 * std::max(nadir.f1 - utopian.f1, nadir.f2 - utopian.f2);

    ParetoArchive archive;
    archive.method_name = to_string(method);
    archive.anchors = anchors;

    // Algorithm start: the null control, then each subproblem warm-starts
    // from the previous minimizer.
    Eigen::VectorXd warm = Eigen::VectorXd::Zero(n);

    for (int k = 0; k < n_subproblems; ++k) {
        ScalarizationSpec spec;
        spec.method = method;
        nlp::ScalarProblem prob;
        Eigen::VectorXd x0 = warm;

        switch (method) {
            case ScalarizationMethod::eps_constraint: {
                spec.eps = (n_subproblems > 1)
                               ? nadir.f2 * static_cast<double>(k) / (n_subproblems - 1)
                               : nadir.f2;
                prob = eps_constraint_problem(spec.eps, ev);
                break;
            }
            case ScalarizationMethod::chebyshev: {
                const WeightPair w = weight_at(k, n_subproblems);
                spec.w1 = w.w1;
                spec.w2 = w.w2;
                spec.reference = utopian;
                prob = chebyshev_problem(w.w1, w.w2, utopian, ev);
                break;
            }
            case ScalarizationMethod::goal_attainment: {
                const WeightPair w = weight_at(k, n_subproblems);
                spec.w1 = w.w1;
                spec.w2 = w.w2;
                spec.reference = utopian;
                prob = goal_attainment_problem(w.w1, w.w2, utopian, alpha_upper, ev);
                x0.conservativeResize(n + 1);
                x0[n] = goal_attainment_alpha0(w.w1, w.w2, utopian, ev->objectives(warm));
                break;
            }
            case ScalarizationMethod::normal_constraint: {
                const WeightPair w = weight_at(k, n_subproblems);
                spec.w1 = w.w1;
                spec.w2 = w.w2;
                prob = normal_constraint_problem(w.w1, w.w2, anchors, ev);
                break;
            }
        }

        ArchiveEntry entry;
        entry.spec = spec;
        try {
            const nlp::SolveResult res = nlp::minimize(prob, x0, opts);
            const Eigen::VectorXd u = res.x_star.head(n);
            entry.control = ControlTrajectory{std::vector<double>(u.data(), u.data() + n)};
            entry.point = ev->objectives(u);
            entry.status = res.status;
            if (res.status != nlp::SolveStatus::numerical_failure) warm = u;
        } catch (const std::runtime_error&) {
            entry.control = ControlTrajectory{std::vector<double>(
                warm.data(), warm.data() + n)};
            entry.point = ev->objectives(warm);
            entry.status = nlp::SolveStatus::numerical_failure;
        }
        archive.entries.push_back(std::move(entry));
    }
    return archive;
}

ParetoArchive approximate_pareto(ScalarizationMethod method, int n_subproblems,
                                 const ModelParameters& p, const TimeGrid& grid,
                                 const nlp::SolveOptions& opts) {
    auto ev = std::make_shared<ObjectiveEvaluator>(p, grid, default_initial_state(),
                                                   opts.gradient_mode);
    const AnchorData anchors = compute_anchors(p, grid, opts);
    return approximate_pareto(method, n_subproblems, ev, anchors, opts);
}

}  // namespace dengue
